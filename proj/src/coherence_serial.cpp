#include <algorithm>
#include <stdexcept>
#include <vector>

#include "coherence_detail.hpp"
#include "dtcs/coherence.hpp"

// Single-threaded mirrors of the parallel kernels. Same shared arithmetic
// (coherence_detail.hpp), same scan order, no pragmas — used to pin down the
// parallel implementations in tests and the kernel benchmark.

namespace dtcs::serial {

Eigen::MatrixXd correlation_gram(const Eigen::MatrixXcd& matrix) {
  const int n = static_cast<int>(matrix.cols());
  if (n < 1) throw std::invalid_argument("correlation_gram: empty matrix");
  const std::vector<double> inv = detail::inverse_column_norms(matrix);
  Eigen::MatrixXd gram(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i) {
      const double v = detail::gram_entry(matrix, i, j, inv[i], inv[j]);
      gram(i, j) = v;
      gram(j, i) = v;
    }
  return gram;
}

std::vector<double> separation_envelope(const Eigen::MatrixXd& gram) {
  const int n = static_cast<int>(gram.cols());
  const int half = n / 2;
  if (n < 2) return {};
  std::vector<double> sep_max(half + 1, 0.0);
  for (int s = 1; s <= half; ++s) sep_max[s] = detail::separation_max(gram, s);
  std::vector<double> envelope(half + 1, 0.0);
  envelope[half] = sep_max[half];
  for (int d = half - 1; d >= 1; --d)
    envelope[d] = std::max(sep_max[d], envelope[d + 1]);
  envelope[0] = envelope[1];
  return envelope;
}

double cumulative_d_coherence(const Eigen::MatrixXcd& matrix, int d, int k) {
  const int n = static_cast<int>(matrix.cols());
  if (d < 0) throw std::invalid_argument(
      "cumulative_d_coherence: d must be nonnegative");
  if (k < 0 || k > n)
    throw std::invalid_argument("cumulative_d_coherence: need 0 <= k <= N");
  if (k == 0) return 0.0;

  const Eigen::MatrixXd gram = correlation_gram(matrix);
  std::vector<int> order;
  double best = -1.0;
  for (int i = 0; i < n; ++i) {
    detail::build_row_order(gram, i, order);
    double sum = 0.0;
    if (detail::row_top_k_sum(gram, order, i, d, k, sum))
      best = std::max(best, sum);
  }
  if (best < 0.0)
    throw std::invalid_argument(
        "cumulative_d_coherence: k too large for this (N, d)");
  return best;
}

double cumulative_d_coherence_bruteforce(const Eigen::MatrixXcd& matrix, int d,
                                         int k) {
  const int n = static_cast<int>(matrix.cols());
  if (d < 0) throw std::invalid_argument(
      "cumulative_d_coherence_bruteforce: d must be nonnegative");
  if (k < 0 || k > n)
    throw std::invalid_argument(
        "cumulative_d_coherence_bruteforce: need 0 <= k <= N");
  if (k == 0) return 0.0;

  const Eigen::MatrixXd gram = correlation_gram(matrix);

  // Exhaustive max over every cardinality-k test set and every reference
  // column outside its d-closure.
  std::vector<int> gamma(k);  // 0-based, strictly increasing
  double best = -1.0;
  auto scan = [&](auto&& self, int depth, int min_next) -> void {
    if (depth == k) {
      for (int i = 0; i < n; ++i) {
        bool admissible = true;
        double sum = 0.0;
        for (int j : gamma) {
          if (std::abs(i - j) <= d) {
            admissible = false;
            break;
          }
          sum += gram(i, j);
        }
        if (admissible) best = std::max(best, sum);
      }
      return;
    }
    for (int v = min_next; v <= n - (k - depth); ++v) {
      gamma[depth] = v;
      self(self, depth + 1, v + 1);
    }
  };
  scan(scan, 0, 0);

  if (best < 0.0)
    throw std::invalid_argument(
        "cumulative_d_coherence_bruteforce: k too large for this (N, d)");
  return best;
}

}  // namespace dtcs::serial
