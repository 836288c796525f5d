#include "dtcs/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "dtcs/metrics.hpp"
#include "dtcs/recovery.hpp"
#include "dtcs/rng.hpp"

namespace dtcs {

// ----------------------------------------------------------------- naming

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "dtomp") return Algorithm::Dtomp;
  if (name == "omp") return Algorithm::Omp;
  if (name == "coarse_grid") return Algorithm::CoarseGrid;
  if (name == "ds") return Algorithm::Ds;
  if (name == "sd") return Algorithm::Sd;
  throw std::invalid_argument("unknown algorithm: " + name);
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Dtomp: return "dtomp";
    case Algorithm::Omp: return "omp";
    case Algorithm::CoarseGrid: return "coarse_grid";
    case Algorithm::Ds: return "ds";
    case Algorithm::Sd: return "sd";
  }
  throw std::invalid_argument("unknown algorithm enum");
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------- config parsing

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void config_error(int line, const std::string& what) {
  throw std::invalid_argument("config line " + std::to_string(line) + ": " + what);
}

long long parse_int(const std::string& v, int line) {
  long long out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
    config_error(line, "expected an integer, got '" + v + "'");
  return out;
}

std::uint64_t parse_u64(const std::string& v, int line) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
    config_error(line, "expected an unsigned integer, got '" + v + "'");
  return out;
}

double parse_double(const std::string& v, int line) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
    config_error(line, "expected a number, got '" + v + "'");
  return out;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  if (trim(v).empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = v.find(',', pos);
    out.push_back(trim(v.substr(pos, comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

struct RawSection {
  std::optional<std::string> kind;
  std::optional<int> m, n, inflation_d;
  std::optional<std::uint64_t> seed;
  int line = 0;
};

}  // namespace

ExperimentConfig parse_config(const std::string& content) {
  ExperimentConfig cfg;
  bool have_n = false, have_m = false, have_s = false;
  bool have_d = false, have_snr = false, have_alg = false;
  std::vector<RawSection> sections;
  RawSection* current = nullptr;

  std::istringstream in(content);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string text = trim(raw);
    if (text.empty()) continue;

    if (text.front() == '[') {
      if (text != "[matrix]") config_error(line, "unknown section " + text);
      sections.push_back(RawSection{});
      sections.back().line = line;
      current = &sections.back();
      continue;
    }

    const auto eq = text.find('=');
    if (eq == std::string::npos) config_error(line, "expected key = value");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));

    if (current) {
      if (key == "kind") current->kind = value;
      else if (key == "m") current->m = static_cast<int>(parse_int(value, line));
      else if (key == "n") current->n = static_cast<int>(parse_int(value, line));
      else if (key == "seed") current->seed = parse_u64(value, line);
      else if (key == "inflation_d")
        current->inflation_d = static_cast<int>(parse_int(value, line));
      else config_error(line, "unknown matrix key '" + key + "'");
      continue;
    }

    if (key == "n") { cfg.n = static_cast<int>(parse_int(value, line)); have_n = true; }
    else if (key == "m") { cfg.m = static_cast<int>(parse_int(value, line)); have_m = true; }
    else if (key == "s") { cfg.s = static_cast<int>(parse_int(value, line)); have_s = true; }
    else if (key == "d_values") {
      cfg.d_values.clear();
      for (const auto& item : split_list(value))
        cfg.d_values.push_back(static_cast<int>(parse_int(item, line)));
      have_d = true;
    } else if (key == "snr_db_values") {
      cfg.snr_db_values.clear();
      for (const auto& item : split_list(value))
        cfg.snr_db_values.push_back(parse_double(item, line));
      have_snr = true;
    } else if (key == "trials") {
      cfg.trials = static_cast<int>(parse_int(value, line));
    } else if (key == "master_seed") {
      cfg.master_seed = parse_u64(value, line);
    } else if (key == "algorithm") {
      try {
        cfg.algorithm = algorithm_from_string(value);
      } catch (const std::invalid_argument& e) {
        config_error(line, e.what());
      }
      have_alg = true;
    } else if (key == "spread") {
      cfg.spread = static_cast<int>(parse_int(value, line));
    } else if (key == "metric") {
      if (value != "rho_d" && value != "rho_2" && value != "both")
        config_error(line, "metric must be rho_d, rho_2, or both");
      cfg.metric = value;
    } else {
      config_error(line, "unknown key '" + key + "'");
    }
  }

  if (!have_n || !have_m || !have_s || !have_d || !have_snr || !have_alg)
    throw std::invalid_argument(
        "config: n, m, s, d_values, snr_db_values, and algorithm are required");

  for (const RawSection& sec : sections) {
    if (!sec.kind)
      config_error(sec.line, "[matrix] section needs a kind");
    MatrixSpec spec;
    try {
      spec.kind = matrix_kind_from_string(*sec.kind);
    } catch (const std::invalid_argument& e) {
      config_error(sec.line, e.what());
    }
    spec.n_rows = sec.m.value_or(cfg.m);
    spec.n_cols = sec.n.value_or(cfg.n);
    spec.seed = sec.seed.value_or(0);
    spec.inflation_d = sec.inflation_d.value_or(0);
    cfg.matrix_specs.push_back(spec);
  }

  // Invariants.
  if (cfg.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (cfg.s < 1) throw std::invalid_argument("config: s must be >= 1");
  if (!(cfg.s <= cfg.m && cfg.m <= cfg.n))
    throw std::invalid_argument("config: need s <= m <= n");
  for (int d : cfg.d_values) {
    if (d < 0) throw std::invalid_argument("config: d values must be >= 0");
    if (cfg.algorithm == Algorithm::CoarseGrid && d < 1)
      throw std::invalid_argument(
          "config: coarse_grid needs d >= 1 (grid width is d)");
  }
  for (double snr : cfg.snr_db_values)
    if (std::isnan(snr) || snr == -std::numeric_limits<double>::infinity())
      throw std::invalid_argument("config: snr_db must be finite or inf");
  if (cfg.spread && *cfg.spread < 0)
    throw std::invalid_argument("config: spread must be >= 0");
  for (const MatrixSpec& spec : cfg.matrix_specs) {
    if (!(cfg.s <= spec.n_rows && spec.n_rows <= spec.n_cols))
      throw std::invalid_argument("config: matrix violates s <= m <= n");
    if (spec.inflation_d < 0)
      throw std::invalid_argument("config: inflation_d must be >= 0");
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

// ------------------------------------------------------------ grid points

std::vector<GridPoint> grid_points(const ExperimentConfig& config) {
  std::vector<GridPoint> points;
  for (const MatrixSpec& spec : config.matrix_specs)
    for (int d : config.d_values)
      for (double snr : config.snr_db_values) {
        GridPoint gp;
        gp.matrix = spec;
        gp.d = d;
        gp.snr_db = snr;
        gp.key = spec.key() + "|alg=" + to_string(config.algorithm) +
                 "|s=" + std::to_string(config.s) + "|d=" + std::to_string(d) +
                 "|snr_db=" + format_double(snr);
        gp.hash = rng::fnv1a(gp.key);
        gp.matrix.seed = rng::derive_seed(spec.seed, gp.hash);
        points.push_back(std::move(gp));
      }
  return points;
}

// ----------------------------------------------------------------- trials

RecoveryOutcome recover_once(const SensingMatrix& matrix, Algorithm algorithm,
                             int s, int d, double snr_db,
                             std::uint64_t signal_seed, std::uint64_t noise_seed,
                             std::optional<int> spread) {
  const int n = matrix.n();
  RecoveryOutcome out;
  out.signal = generate_signal(n, s, signal_seed, spread);
  const NoiseSpec noise{snr_db, noise_seed};

  switch (algorithm) {
    case Algorithm::Dtomp:
    case Algorithm::Omp: {
      const Eigen::VectorXcd y = measure(matrix, out.signal, noise);
      const RecoveryResult res =
          dtomp(matrix, y, s, algorithm == Algorithm::Dtomp ? d : 0);
      out.recovered_support = res.support;
      out.estimate = res.estimate;
      out.early_stop = res.early_stop;
      break;
    }
    case Algorithm::CoarseGrid: {
      if (d < 1)
        throw std::invalid_argument("coarse_grid recovery needs d >= 1");
      const int bins = (n + d - 1) / d;
      const CoarseRowMode mode = (matrix.spec.kind == MatrixKind::FRand)
                                     ? CoarseRowMode::RandomRows
                                     : CoarseRowMode::ConsecBegin;
      const SensingMatrix coarse =
          coarse_sensing_matrix(matrix.m(), n, d, mode, matrix.spec.seed);
      const Eigen::VectorXcd y =
          add_noise(coarse.entries * downsample(out.signal.values, bins), noise);
      const RecoveryResult res = dtomp(coarse, y, std::min(s, bins), 0);
      const RecoveryResult fine = coarse_to_fine(res, n, d);
      out.recovered_support = fine.support;
      out.estimate = fine.estimate;
      out.early_stop = fine.early_stop;
      break;
    }
    case Algorithm::Ds: {
      out.estimate = ds_recover(out.signal.values, matrix.m(), noise);
      out.recovered_support = top_s_support(out.estimate, s);
      break;
    }
    case Algorithm::Sd: {
      out.estimate = sd_recover(out.signal.values, matrix.m(), noise);
      out.recovered_support = top_s_support(out.estimate, s);
      break;
    }
  }

  out.rho_d_value = rho_d(out.signal.support, out.recovered_support, d);
  out.rho_2_value = rho_2(out.signal.values, out.estimate, d);
  out.recovered_count = tolerant_hits(out.signal.support, out.recovered_support, d);
  return out;
}

TrialRecord run_trial(const ExperimentConfig& config, const GridPoint& point,
                      const SensingMatrix& matrix, int trial_index) {
  TrialRecord rec;
  rec.trial_index = trial_index;
  rec.matrix_kind = to_string(point.matrix.kind);
  rec.d = point.d;
  rec.snr_db = point.snr_db;
  const std::uint64_t trial_seed = rng::derive_seed(
      config.master_seed, point.hash, static_cast<std::uint64_t>(trial_index));
  rec.seed_used = trial_seed;

  try {
    const RecoveryOutcome outcome = recover_once(
        matrix, config.algorithm, config.s, point.d, point.snr_db,
        rng::derive_seed(trial_seed, 1), rng::derive_seed(trial_seed, 2),
        config.spread);
    rec.rho_d_value = outcome.rho_d_value;
    rec.rho_2_value = outcome.rho_2_value;
    rec.recovered_count = outcome.recovered_count;
  } catch (const std::exception&) {
    rec.flagged = true;  // metrics stay zero
  }
  return rec;
}

TrialRecord run_trial(const ExperimentConfig& config, const GridPoint& point,
                      int trial_index) {
  const SensingMatrix matrix = build(point.matrix);
  return run_trial(config, point, matrix, trial_index);
}

// ------------------------------------------------------------------ sweep

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  if (v.size() % 2 == 1) return v[k];
  return 0.5 * (v[k - 1] + v[k]);
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& config) {
  SweepResult result;
  for (const GridPoint& point : grid_points(config)) {
    const SensingMatrix matrix = build(point.matrix);

    std::vector<TrialRecord> records(config.trials);
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < config.trials; ++t)
      records[t] = run_trial(config, point, matrix, t);

    std::vector<double> rho_d_vals, rho_2_vals, recovered;
    rho_d_vals.reserve(records.size());
    rho_2_vals.reserve(records.size());
    recovered.reserve(records.size());
    for (const TrialRecord& r : records) {
      rho_d_vals.push_back(r.rho_d_value);
      rho_2_vals.push_back(r.rho_2_value);
      recovered.push_back(static_cast<double>(r.recovered_count));
    }

    SweepRow row;
    row.matrix = to_string(point.matrix.kind);
    row.algorithm = to_string(config.algorithm);
    row.n = point.matrix.n_cols;
    row.m = point.matrix.n_rows;
    row.s = config.s;
    row.d = point.d;
    row.snr_db = point.snr_db;
    row.trials = config.trials;
    row.median_rho_d = median(rho_d_vals);
    row.median_rho_2 = median(rho_2_vals);
    row.median_recovered = median(recovered);
    result.rows.push_back(std::move(row));
  }

  std::sort(result.rows.begin(), result.rows.end(),
            [](const SweepRow& a, const SweepRow& b) {
              return std::tie(a.matrix, a.algorithm, a.n, a.m, a.s, a.d,
                              a.snr_db, a.trials) <
                     std::tie(b.matrix, b.algorithm, b.n, b.m, b.s, b.d,
                              b.snr_db, b.trials);
            });
  return result;
}

std::vector<RatioCell> ratio_table(const SweepResult& numerator,
                                   const SweepResult& denominator) {
  using Key = std::tuple<std::string, int, int, int, int, double>;
  std::map<Key, const SweepRow*> denom;
  for (const SweepRow& r : denominator.rows)
    denom[Key{r.algorithm, r.n, r.m, r.s, r.d, r.snr_db}] = &r;
  if (denom.size() != denominator.rows.size() ||
      numerator.rows.size() != denominator.rows.size())
    throw std::invalid_argument("ratio_table: grids do not match");

  std::vector<RatioCell> cells;
  for (const SweepRow& r : numerator.rows) {
    const auto it = denom.find(Key{r.algorithm, r.n, r.m, r.s, r.d, r.snr_db});
    if (it == denom.end())
      throw std::invalid_argument("ratio_table: grids do not match");
    RatioCell cell;
    cell.d = r.d;
    cell.snr_db = r.snr_db;
    if (it->second->median_rho_d == 0.0) {
      cell.flagged = true;
      cell.ratio = std::numeric_limits<double>::quiet_NaN();
    } else {
      cell.ratio = r.median_rho_d / it->second->median_rho_d;
    }
    cells.push_back(cell);
  }
  return cells;
}

// -------------------------------------------------------------------- CSV

std::string csv_string(const SweepResult& result) {
  std::string out =
      "matrix,algorithm,n,m,s,d,snr_db,trials,median_rho_d,median_rho_2,"
      "median_recovered\n";
  for (const SweepRow& r : result.rows) {
    out += r.matrix;
    out += ',';
    out += r.algorithm;
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    out += std::to_string(r.m);
    out += ',';
    out += std::to_string(r.s);
    out += ',';
    out += std::to_string(r.d);
    out += ',';
    out += format_double(r.snr_db);
    out += ',';
    out += std::to_string(r.trials);
    out += ',';
    out += format_double(r.median_rho_d);
    out += ',';
    out += format_double(r.median_rho_2);
    out += ',';
    out += format_double(r.median_recovered);
    out += '\n';
  }
  return out;
}

void emit_csv(const SweepResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  const std::string text = csv_string(result);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace dtcs
