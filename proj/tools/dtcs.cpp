#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dtcs/coherence.hpp"
#include "dtcs/harness.hpp"
#include "dtcs/matrices.hpp"
#include "dtcs/metrics.hpp"
#include "dtcs/recovery.hpp"
#include "dtcs/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double parse_snr(const std::string& text) {
  double out = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw std::invalid_argument("--snr-db: expected a number or 'inf', got '" +
                                text + "'");
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

struct MatrixArgs {
  std::string kind;
  int m = 0;
  int n = 0;
  std::uint64_t seed = 0;
  int inflation_d = 0;

  dtcs::MatrixSpec spec() const {
    dtcs::MatrixSpec s;
    s.kind = dtcs::matrix_kind_from_string(kind);
    s.n_rows = m;
    s.n_cols = n;
    s.seed = seed;
    s.inflation_d = inflation_d;
    return s;
  }
};

void add_matrix_options(CLI::App* cmd, MatrixArgs& args) {
  cmd->add_option("--kind", args.kind, "matrix kind")->required();
  cmd->add_option("--m", args.m, "number of rows (measurements)")->required();
  cmd->add_option("--n", args.n, "number of columns (signal length)")->required();
  cmd->add_option("--seed", args.seed, "construction seed");
  cmd->add_option("--inflation-d", args.inflation_d,
                  "block half-width for the inflated kind");
}

void run_analyze(const MatrixArgs& margs, int d_max, const std::string& out_path) {
  const dtcs::SensingMatrix matrix = dtcs::build(margs.spec());
  const dtcs::CoherenceReport report = dtcs::analyze_coherence(matrix.entries);

  const int half = matrix.n() / 2;
  const int top = (d_max < 0) ? half : std::min(d_max, half);
  std::string csv = "d,correlation,mu_d,mu,welch\n";
  for (int d = 0; d <= top; ++d) {
    csv += std::to_string(d);
    csv += ',';
    csv += dtcs::format_double(report.correlation_profile[d]);
    csv += ',';
    csv += dtcs::format_double(report.mu_d_profile[d]);
    csv += ',';
    csv += dtcs::format_double(report.mu);
    csv += ',';
    csv += dtcs::format_double(report.welch);
    csv += '\n';
  }
  write_text(out_path, csv);
  std::cout << "wrote " << out_path << " (" << top + 1 << " rows)\n";
}

void print_admissible(const std::vector<int>& ds) {
  std::cout << "admissible d: {";
  std::size_t i = 0;
  bool first = true;
  while (i < ds.size()) {
    std::size_t j = i;
    while (j + 1 < ds.size() && ds[j + 1] == ds[j] + 1) ++j;
    if (!first) std::cout << ", ";
    first = false;
    if (j == i)
      std::cout << ds[i];
    else
      std::cout << ds[i] << ".." << ds[j];
    i = j + 1;
  }
  std::cout << "}\n";
}

void run_check_guarantee(const MatrixArgs& margs, int s, int d_min, int d_max,
                         const std::string& out_path) {
  const dtcs::SensingMatrix matrix = dtcs::build(margs.spec());
  const dtcs::CorrelationTable table(matrix.entries);
  const int top = (d_max < 0) ? matrix.n() / 8 : d_max;
  const double welch = (matrix.m() < matrix.n())
                           ? dtcs::welch_bound(matrix.m(), matrix.n())
                           : std::numeric_limits<double>::quiet_NaN();

  std::string csv = "d,mu_d,welch,mu_c_d_2s,pair_sum,envelope_bound,half_bound\n";
  int rows = 0;
  for (int d = d_min; d <= top; ++d) {
    dtcs::GuaranteeReport rep;
    try {
      rep = dtcs::check_guarantee(table, d, s);
    } catch (const std::invalid_argument&) {
      continue;  // conditions not evaluable at this d
    }
    csv += std::to_string(d);
    csv += ',';
    csv += dtcs::format_double(rep.mu_d);
    csv += ',';
    csv += dtcs::format_double(welch);
    csv += ',';
    csv += dtcs::format_double(rep.mu_c_d_2s);
    csv += ',';
    csv += rep.pair_sum_holds ? '1' : '0';
    csv += ',';
    csv += rep.envelope_bound_holds ? '1' : '0';
    csv += ',';
    csv += rep.half_bound_holds ? '1' : '0';
    csv += '\n';
    ++rows;
  }
  write_text(out_path, csv);
  print_admissible(dtcs::admissible_d_range(table, s, d_min, top));
  std::cout << "wrote " << out_path << " (" << rows << " rows)\n";
}

void print_support(const char* label, const dtcs::SupportSet& set) {
  std::cout << label << ":";
  for (int i : set.indices) std::cout << ' ' << i;
  std::cout << '\n';
}

void run_recover(const MatrixArgs& margs, int s, int d, const std::string& snr,
                 const std::string& algorithm, std::optional<int> spread) {
  const dtcs::SensingMatrix matrix = dtcs::build(margs.spec());
  const dtcs::RecoveryOutcome outcome = dtcs::recover_once(
      matrix, dtcs::algorithm_from_string(algorithm), s, d, parse_snr(snr),
      dtcs::rng::derive_seed(margs.seed, 1), dtcs::rng::derive_seed(margs.seed, 2),
      spread);
  print_support("true_support", outcome.signal.support);
  print_support("recovered_support", outcome.recovered_support);
  std::cout << "rho_d: " << dtcs::format_double(outcome.rho_d_value) << '\n';
  std::cout << "rho_2: " << dtcs::format_double(outcome.rho_2_value) << '\n';
  if (outcome.early_stop) std::cout << "note: candidate pool emptied early\n";
}

void run_experiment(const std::string& config_path, const std::string& out_path,
                    std::optional<int> trials, std::optional<int> threads) {
  dtcs::ExperimentConfig config = dtcs::parse_config_file(config_path);
  if (trials) {
    if (*trials < 1) throw std::invalid_argument("--trials must be >= 1");
    config.trials = *trials;
  }
  if (threads) {
    if (*threads < 1) throw std::invalid_argument("--threads must be >= 1");
#ifdef _OPENMP
    omp_set_num_threads(*threads);
#endif
  }
  const dtcs::SweepResult result = dtcs::run_sweep(config);
  dtcs::emit_csv(result, out_path);
  std::cout << "wrote " << out_path << " (" << result.rows.size()
            << " grid rows)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"d-tolerant compressed sensing toolkit"};
  app.require_subcommand(1);

  MatrixArgs analyze_m;
  int analyze_dmax = -1;
  std::string analyze_out;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "correlation profile, d-coherence envelope, and Welch bound");
  add_matrix_options(analyze, analyze_m);
  analyze->add_option("--d-max", analyze_dmax, "largest d row (default N/2)");
  analyze->add_option("--out", analyze_out, "output CSV path")->required();

  MatrixArgs check_m;
  int check_s = 0, check_dmin = 0, check_dmax = -1;
  std::string check_out;
  CLI::App* check = app.add_subcommand(
      "check-guarantee", "recovery-guarantee conditions over a d range");
  add_matrix_options(check, check_m);
  check->add_option("--s", check_s, "sparsity")->required();
  check->add_option("--d-min", check_dmin, "smallest d (default 0)");
  check->add_option("--d-max", check_dmax, "largest d (default N/8)");
  check->add_option("--out", check_out, "output CSV path")->required();

  MatrixArgs recover_m;
  int recover_s = 0, recover_d = 0;
  std::string recover_snr, recover_alg;
  std::optional<int> recover_spread;
  CLI::App* recover = app.add_subcommand(
      "recover", "one seeded generate/measure/recover pass");
  add_matrix_options(recover, recover_m);
  recover->add_option("--s", recover_s, "sparsity")->required();
  recover->add_option("--d", recover_d, "tolerance")->required();
  recover->add_option("--snr-db", recover_snr, "SNR in dB, or inf")->required();
  recover->add_option("--algorithm", recover_alg,
                      "dtomp | omp | coarse_grid | ds | sd")
      ->required();
  recover->add_option("--spread", recover_spread,
                      "force a g-spread signal support");

  std::string exp_config, exp_out;
  std::optional<int> exp_trials, exp_threads;
  CLI::App* experiment =
      app.add_subcommand("experiment", "Monte-Carlo sweep from a config file");
  experiment->add_option("--config", exp_config, "config file path")->required();
  experiment->add_option("--out", exp_out, "output CSV path")->required();
  experiment->add_option("--trials", exp_trials, "override trials per grid point");
  experiment->add_option("--threads", exp_threads, "worker thread count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (analyze->parsed()) run_analyze(analyze_m, analyze_dmax, analyze_out);
    if (check->parsed())
      run_check_guarantee(check_m, check_s, check_dmin, check_dmax, check_out);
    if (recover->parsed())
      run_recover(recover_m, recover_s, recover_d, recover_snr, recover_alg,
                  recover_spread);
    if (experiment->parsed())
      run_experiment(exp_config, exp_out, exp_trials, exp_threads);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
