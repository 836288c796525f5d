#include "dtcs/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "coherence_detail.hpp"

namespace dtcs {

namespace detail {

std::vector<double> inverse_column_norms(const Eigen::MatrixXcd& matrix) {
  const int n = static_cast<int>(matrix.cols());
  std::vector<double> inv(n);
  for (int j = 0; j < n; ++j) {
    const double nrm = matrix.col(j).norm();
    if (nrm == 0.0) throw std::runtime_error("correlation: zero column");
    inv[j] = 1.0 / nrm;
  }
  return inv;
}

}  // namespace detail

// ------------------------------------------------------- CorrelationTable

CorrelationTable::CorrelationTable(const Eigen::MatrixXcd& matrix) {
  const int n = static_cast<int>(matrix.cols());
  if (n < 1) throw std::invalid_argument("correlation table: empty matrix");
  const std::vector<double> inv = detail::inverse_column_norms(matrix);

  gram_.resize(n, n);
#pragma omp parallel for schedule(dynamic, 16)
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i) {
      const double v = detail::gram_entry(matrix, i, j, inv[i], inv[j]);
      gram_(i, j) = v;
      gram_(j, i) = v;
    }

  const int half = n / 2;
  if (n >= 2) {
    std::vector<double> sep_max(half + 1, 0.0);
#pragma omp parallel for schedule(static)
    for (int s = 1; s <= half; ++s) sep_max[s] = detail::separation_max(gram_, s);
    envelope_.assign(half + 1, 0.0);
    envelope_[half] = sep_max[half];
    for (int d = half - 1; d >= 1; --d)
      envelope_[d] = std::max(sep_max[d], envelope_[d + 1]);
    envelope_[0] = envelope_[1];
  }

  row_order_.resize(n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) detail::build_row_order(gram_, i, row_order_[i]);
}

double CorrelationTable::coherence() const {
  if (n() < 2) throw std::invalid_argument("coherence: need at least 2 columns");
  return envelope_[0];
}

double CorrelationTable::d_coherence(int d) const {
  if (d < 0) throw std::invalid_argument("d_coherence: d must be nonnegative");
  if (n() < 2 || d > n() / 2)
    throw std::invalid_argument(
        "d_coherence: no column pair at the requested separation");
  return envelope_[d];
}

double CorrelationTable::cumulative_d_coherence(int d, int k) const {
  if (d < 0) throw std::invalid_argument(
      "cumulative_d_coherence: d must be nonnegative");
  if (k < 0 || k > n())
    throw std::invalid_argument("cumulative_d_coherence: need 0 <= k <= N");
  if (k == 0) return 0.0;

  double best = -1.0;
#pragma omp parallel for schedule(static) reduction(max : best)
  for (int i = 0; i < n(); ++i) {
    double sum = 0.0;
    if (detail::row_top_k_sum(gram_, row_order_[i], i, d, k, sum))
      best = std::max(best, sum);
  }
  if (best < 0.0)
    throw std::invalid_argument(
        "cumulative_d_coherence: k too large for this (N, d)");
  return best;
}

// ------------------------------------------------------------- operations

double column_correlation(const Eigen::MatrixXcd& matrix, int i, int j) {
  const int n = static_cast<int>(matrix.cols());
  if (i < 1 || i > n || j < 1 || j > n)
    throw std::invalid_argument("column_correlation: column index out of range");
  const double ni = matrix.col(i - 1).norm();
  const double nj = matrix.col(j - 1).norm();
  if (ni == 0.0 || nj == 0.0)
    throw std::runtime_error("column_correlation: zero column");
  return std::abs(matrix.col(i - 1).dot(matrix.col(j - 1))) / (ni * nj);
}

double coherence(const Eigen::MatrixXcd& matrix) {
  return CorrelationTable(matrix).coherence();
}

double d_coherence(const Eigen::MatrixXcd& matrix, int d) {
  return CorrelationTable(matrix).d_coherence(d);
}

double welch_bound(int m, int n) {
  if (m < 1 || m >= n)
    throw std::invalid_argument("welch_bound: need 1 <= m < n");
  return std::sqrt(static_cast<double>(n - m) /
                   (static_cast<double>(m) * static_cast<double>(n - 1)));
}

std::vector<double> coherence_function(const Eigen::MatrixXcd& matrix, int j) {
  const int n = static_cast<int>(matrix.cols());
  if (j < 1 || j > n)
    throw std::invalid_argument("coherence_function: column index out of range");
  std::vector<double> out(n);
  for (int i = 1; i <= n; ++i) out[i - 1] = column_correlation(matrix, j, i);
  return out;
}

CoherenceClass classify_coherence_functions(const Eigen::MatrixXcd& matrix,
                                            double tolerance) {
  if (!(tolerance > 0.0))
    throw std::invalid_argument("classify_coherence_functions: tolerance <= 0");
  const int n = static_cast<int>(matrix.cols());
  if (n < 2) return CoherenceClass::Dynamic;
  const CorrelationTable table(matrix);

  std::vector<char> uniform(n, 1);
#pragma omp parallel for schedule(static)
  for (int f = 0; f < n; ++f) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 1; i + f <= n; ++i) {
      const double v = table.at(i, i + f);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    uniform[f] = (hi - lo <= tolerance) ? 1 : 0;
  }
  for (int f = 0; f < n; ++f)
    if (!uniform[f]) return CoherenceClass::Static;
  return CoherenceClass::Dynamic;
}

double cumulative_d_coherence(const Eigen::MatrixXcd& matrix, int d, int k) {
  return CorrelationTable(matrix).cumulative_d_coherence(d, k);
}

GuaranteeReport check_guarantee(const CorrelationTable& table, int d, int s) {
  if (s < 1) throw std::invalid_argument("check_guarantee: need s >= 1");
  GuaranteeReport r;
  r.mu_d = table.d_coherence(d);
  r.mu_c_d_2s = table.cumulative_d_coherence(d, 2 * s);
  r.mu_c_d_2s_minus_1 = table.cumulative_d_coherence(d, 2 * s - 1);
  r.pair_sum_holds = r.mu_c_d_2s_minus_1 + r.mu_c_d_2s < 1.0;
  r.envelope_bound_holds =
      r.mu_d == 0.0 ||
      static_cast<double>(s) < 0.25 * (1.0 / r.mu_d + 1.0);
  r.half_bound_holds = r.mu_c_d_2s < 0.5;
  return r;
}

GuaranteeReport check_guarantee(const Eigen::MatrixXcd& matrix, int d, int s) {
  return check_guarantee(CorrelationTable(matrix), d, s);
}

std::vector<int> admissible_d_range(const CorrelationTable& table, int s,
                                    int d_lo, int d_hi) {
  if (s < 1) throw std::invalid_argument("admissible_d_range: need s >= 1");
  d_lo = std::max(d_lo, 0);
  if (d_hi < d_lo) return {};

  // d values where the conditions cannot even be evaluated (separation or
  // admissible-column count exhausted) are simply not admissible.
  const int count = d_hi - d_lo + 1;
  std::vector<char> holds(count, 0);
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < count; ++t) {
    try {
      const GuaranteeReport r = check_guarantee(table, d_lo + t, s);
      holds[t] = (r.envelope_bound_holds || r.half_bound_holds) ? 1 : 0;
    } catch (const std::invalid_argument&) {
      holds[t] = 0;
    }
  }

  std::vector<int> out;
  for (int t = 0; t < count; ++t)
    if (holds[t]) out.push_back(d_lo + t);
  return out;
}

std::vector<int> admissible_d_range(const Eigen::MatrixXcd& matrix, int s,
                                    int d_lo, int d_hi) {
  return admissible_d_range(CorrelationTable(matrix), s, d_lo, d_hi);
}

// ---------------------------------------------------------- TRC brute force

namespace {

std::vector<int> closure_1based(const std::vector<int>& set, int d, int n) {
  std::vector<int> out;
  for (int a : set) {
    const int lo = std::max(a - d, 1);
    const int hi = std::min(a + d, n);
    for (int v = lo; v <= hi; ++v)
      if (out.empty() || out.back() < v) out.push_back(v);
  }
  // Input sets here are sorted, but overlapping windows can still emit
  // non-monotone runs; normalize.
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Eigen::MatrixXcd pinv_truncated(const Eigen::MatrixXcd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues();
  Eigen::VectorXd inv_sv = Eigen::VectorXd::Zero(sv.size());
  if (sv.size() > 0 && sv(0) > 0.0) {
    const double cutoff = 1e-10 * sv(0);
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > cutoff) inv_sv(i) = 1.0 / sv(i);
  }
  return svd.matrixV() * inv_sv.asDiagonal() *
         svd.matrixU().adjoint();
}

// max_{j not in T} ||pinv(Phi_Tt) phi_j||_1 < 1 for one candidate pair.
bool trc_pair_ok(const Eigen::MatrixXcd& matrix, const std::vector<int>& t_tilde,
                 const std::vector<int>& t) {
  const int n = static_cast<int>(matrix.cols());
  Eigen::MatrixXcd sub(matrix.rows(), static_cast<int>(t_tilde.size()));
  for (int c = 0; c < static_cast<int>(t_tilde.size()); ++c)
    sub.col(c) = matrix.col(t_tilde[c] - 1);
  const Eigen::MatrixXcd p = pinv_truncated(sub);

  auto in_t = [&](int j) {
    return std::binary_search(t.begin(), t.end(), j);
  };
  for (int j = 1; j <= n; ++j) {
    if (in_t(j)) continue;
    if ((p * matrix.col(j - 1)).lpNorm<1>() >= 1.0) return false;
  }
  return true;
}

}  // namespace

bool check_trc_bruteforce(const Eigen::MatrixXcd& matrix, int d, int s,
                          std::int64_t max_enumeration) {
  if (d < 0 || s < 0)
    throw std::invalid_argument("check_trc_bruteforce: negative d or s");
  if (max_enumeration < 1)
    throw std::invalid_argument("check_trc_bruteforce: enumeration budget < 1");
  if (s == 0) return true;  // no candidate pairs: vacuously satisfied

  const int n = static_cast<int>(matrix.cols());
  const int gap = 4 * d + 2;  // consecutive members of a (4d+1)-spread set
  std::int64_t examined = 0;
  bool ok = true;

  std::vector<int> a(s);
  // Depth-first enumeration of spread supports A = {a_1 < ... < a_s}.
  auto visit = [&](auto&& self, int depth, int min_next) -> void {
    if (!ok) return;
    if (depth == s) {
      const std::vector<int> c = closure_1based(a, d, n);
      if (static_cast<int>(c.size()) > 62)
        throw std::runtime_error(
            "check_trc_bruteforce: enumeration budget exceeded; use a smaller "
            "instance");
      const std::vector<int> t = closure_1based(a, 2 * d, n);
      const std::uint64_t masks = (std::uint64_t{1} << c.size()) - 1;
      for (std::uint64_t mask = 1; mask <= masks && ok; ++mask) {
        if (++examined > max_enumeration)
          throw std::runtime_error(
              "check_trc_bruteforce: enumeration budget exceeded; use a "
              "smaller instance");
        std::vector<int> b;
        for (std::size_t bit = 0; bit < c.size(); ++bit)
          if (mask >> bit & 1) b.push_back(c[bit]);
        // Hausdorff condition: B within the closure of A (by construction)
        // and every member of A within d of some member of B.
        bool covers = true;
        for (int av : a) {
          bool near = false;
          for (int bv : b)
            if (std::abs(av - bv) <= d) {
              near = true;
              break;
            }
          if (!near) {
            covers = false;
            break;
          }
        }
        if (!covers) continue;
        std::vector<int> t_tilde = a;
        t_tilde.insert(t_tilde.end(), b.begin(), b.end());
        std::sort(t_tilde.begin(), t_tilde.end());
        t_tilde.erase(std::unique(t_tilde.begin(), t_tilde.end()),
                      t_tilde.end());
        if (!trc_pair_ok(matrix, t_tilde, t)) ok = false;
      }
      return;
    }
    const int remaining = s - depth - 1;
    for (int v = min_next; v + remaining * gap <= n && ok; ++v) {
      a[depth] = v;
      self(self, depth + 1, v + gap);
    }
  };
  visit(visit, 0, 1);
  return ok;
}

// ----------------------------------------------------------------- analyze

CoherenceReport analyze_coherence(const Eigen::MatrixXcd& matrix) {
  const CorrelationTable table(matrix);
  const int m = static_cast<int>(matrix.rows());
  const int n = static_cast<int>(matrix.cols());

  CoherenceReport report;
  report.mu = table.coherence();
  report.mu_d_profile.resize(n / 2 + 1);
  for (int d = 0; d <= n / 2; ++d) report.mu_d_profile[d] = table.d_coherence(d);
  report.welch = (m < n) ? welch_bound(m, n)
                         : std::numeric_limits<double>::quiet_NaN();
  report.correlation_profile.resize(n);
  for (int f = 0; f < n; ++f) report.correlation_profile[f] = table.at(1, 1 + f);
  return report;
}

}  // namespace dtcs
