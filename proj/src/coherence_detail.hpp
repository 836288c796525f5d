#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <vector>

// Shared scan kernels. The parallel and serial translation units both call
// these so the two variants perform bit-identical arithmetic; parallelism
// only distributes loop iterations whose results merge through max().

namespace dtcs::detail {

inline double gram_entry(const Eigen::MatrixXcd& matrix, int i0, int j0,
                         double inv_norm_i, double inv_norm_j) {
  return std::abs(matrix.col(i0).dot(matrix.col(j0))) * inv_norm_i * inv_norm_j;
}

// Reciprocal column norms; errors on a zero column.
std::vector<double> inverse_column_norms(const Eigen::MatrixXcd& matrix);

// Max correlation over all pairs at wrapped separation exactly s (1-based
// separation, 1 <= s <= floor(N/2)).
inline double separation_max(const Eigen::MatrixXd& gram, int s) {
  const int n = static_cast<int>(gram.cols());
  double best = 0.0;
  for (int i = 0; i + s < n; ++i) best = std::max(best, gram(i, i + s));
  const int t = n - s;  // the complementary unwrapped offset
  if (t != s)
    for (int i = 0; i + t < n; ++i) best = std::max(best, gram(i, i + t));
  return best;
}

// Column indices ordered by descending correlation to row i0; ties broken
// toward the lower index so scans are fully deterministic.
inline void build_row_order(const Eigen::MatrixXd& gram, int i0,
                            std::vector<int>& order) {
  const int n = static_cast<int>(gram.cols());
  order.resize(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double va = gram(i0, a);
    const double vb = gram(i0, b);
    if (va != vb) return va > vb;
    return a < b;
  });
}

// Sum of the k largest correlations gram(i0, j) over j with |i0 - j| > d,
// accumulated in descending-value order. Returns false when fewer than k
// columns are admissible for this row.
inline bool row_top_k_sum(const Eigen::MatrixXd& gram,
                          const std::vector<int>& order, int i0, int d, int k,
                          double& sum_out) {
  double sum = 0.0;
  int taken = 0;
  for (int j : order) {
    if (std::abs(j - i0) <= d) continue;
    sum += gram(i0, j);
    if (++taken == k) break;
  }
  sum_out = sum;
  return taken == k;
}

}  // namespace dtcs::detail
