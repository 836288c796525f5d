#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dtcs/matrices.hpp"
#include "dtcs/signals.hpp"

namespace dtcs {

enum class Algorithm { Dtomp, Omp, CoarseGrid, Ds, Sd };

Algorithm algorithm_from_string(const std::string& name);
std::string to_string(Algorithm a);

struct ExperimentConfig {
  std::vector<MatrixSpec> matrix_specs;
  int n = 0;
  int m = 0;
  int s = 0;
  std::vector<int> d_values;
  std::vector<double> snr_db_values;  // +infinity = noiseless
  int trials = 100;
  std::uint64_t master_seed = 0;
  Algorithm algorithm = Algorithm::Dtomp;
  std::optional<int> spread;          // force g-spread signal supports
  std::string metric = "both";        // rho_d | rho_2 | both (all columns
                                      // are always emitted; see README)
};

// Flat key = value text with one [matrix] section per sensing matrix;
// throws std::invalid_argument with a line reference on any problem.
ExperimentConfig parse_config(const std::string& content);
ExperimentConfig parse_config_file(const std::string& path);

struct GridPoint {
  MatrixSpec matrix;  // per-grid-point build seed already derived
  int d = 0;
  double snr_db = 0.0;
  std::string key;         // canonical identity string (pre-derivation)
  std::uint64_t hash = 0;  // fnv1a(key); salts matrix and trial seeds
};

// The grid points of a config in deterministic order.
std::vector<GridPoint> grid_points(const ExperimentConfig& config);

struct TrialRecord {
  int trial_index = 0;
  std::string matrix_kind;
  int d = 0;
  double snr_db = 0.0;
  double rho_d_value = 0.0;
  double rho_2_value = 0.0;
  int recovered_count = 0;
  std::uint64_t seed_used = 0;
  bool flagged = false;  // recovery error; metrics count as zero
};

TrialRecord run_trial(const ExperimentConfig& config, const GridPoint& point,
                      int trial_index);
TrialRecord run_trial(const ExperimentConfig& config, const GridPoint& point,
                      const SensingMatrix& matrix, int trial_index);

struct RecoveryOutcome {
  SparseSignal signal;
  SupportSet recovered_support;
  Eigen::VectorXcd estimate;
  double rho_d_value = 0.0;
  double rho_2_value = 0.0;
  int recovered_count = 0;
  bool early_stop = false;
};

// One generate/measure/recover/evaluate pass with the given algorithm; the
// tolerance d steers both the recovery (where applicable) and the metrics.
RecoveryOutcome recover_once(const SensingMatrix& matrix, Algorithm algorithm,
                             int s, int d, double snr_db,
                             std::uint64_t signal_seed, std::uint64_t noise_seed,
                             std::optional<int> spread = std::nullopt);

struct SweepRow {
  std::string matrix;
  std::string algorithm;
  int n = 0;
  int m = 0;
  int s = 0;
  int d = 0;
  double snr_db = 0.0;
  int trials = 0;
  double median_rho_d = 0.0;
  double median_rho_2 = 0.0;
  double median_recovered = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // sorted lexicographically in header-key order
};

SweepResult run_sweep(const ExperimentConfig& config);

struct RatioCell {
  int d = 0;
  double snr_db = 0.0;
  double ratio = 0.0;
  bool flagged = false;  // division by zero
};

// Elementwise ratio of median recovery fractions between two sweeps over the
// same (algorithm, n, m, s, d, snr) grid.
std::vector<RatioCell> ratio_table(const SweepResult& numerator,
                                   const SweepResult& denominator);

// Shortest round-trip decimal rendering (deterministic CSV numbers).
std::string format_double(double v);

std::string csv_string(const SweepResult& result);
void emit_csv(const SweepResult& result, const std::string& path);

}  // namespace dtcs
