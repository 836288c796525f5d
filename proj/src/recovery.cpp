#include "dtcs/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dtcs {
namespace {

Eigen::MatrixXcd select_columns(const Eigen::MatrixXcd& matrix,
                                const std::vector<int>& columns1) {
  Eigen::MatrixXcd sub(matrix.rows(), static_cast<Eigen::Index>(columns1.size()));
  for (std::size_t c = 0; c < columns1.size(); ++c)
    sub.col(static_cast<Eigen::Index>(c)) = matrix.col(columns1[c] - 1);
  return sub;
}

}  // namespace

Eigen::VectorXcd restricted_least_squares(const Eigen::MatrixXcd& matrix,
                                          const SupportSet& columns,
                                          const Eigen::VectorXcd& y) {
  if (columns.ambient_n != static_cast<int>(matrix.cols()))
    throw std::invalid_argument(
        "restricted_least_squares: support ambient size mismatch");
  if (columns.size() < 1)
    throw std::invalid_argument("restricted_least_squares: empty support");
  if (columns.size() > static_cast<int>(matrix.rows()))
    throw std::invalid_argument(
        "restricted_least_squares: more columns than measurements");
  if (y.size() != matrix.rows())
    throw std::invalid_argument("restricted_least_squares: length mismatch");

  const Eigen::MatrixXcd sub = select_columns(matrix, columns.indices);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      sub, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues();
  if (sv(0) == 0.0 || sv(sv.size() - 1) < 1e-10 * sv(0))
    throw std::runtime_error(
        "restricted_least_squares: degenerate (rank-deficient) support");
  const Eigen::VectorXcd projected = svd.matrixU().adjoint() * y;
  return svd.matrixV() * (projected.array() / sv.array().cast<std::complex<double>>())
                             .matrix();
}

RecoveryResult dtomp(const SensingMatrix& matrix, const Eigen::VectorXcd& y,
                     int s, int d) {
  const int n = matrix.n();
  if (s < 1) throw std::invalid_argument("dtomp: sparsity budget must be >= 1");
  if (d < 0) throw std::invalid_argument("dtomp: tolerance must be >= 0");
  if (y.size() != matrix.entries.rows())
    throw std::invalid_argument("dtomp: measurement length mismatch");

  RecoveryResult result;
  result.residual_norms.push_back(y.norm());

  std::vector<int> support1;  // sorted ascending
  Eigen::VectorXcd residual = y;
  Eigen::VectorXcd coeffs;

  for (int k = 1; k <= s; ++k) {
    const Eigen::VectorXcd b = matrix.entries.adjoint() * residual;

    std::vector<char> excluded(n + 1, 0);
    for (int i : support1) {
      const int lo = std::max(i - 2 * d, 1);
      const int hi = std::min(i + 2 * d, n);
      for (int v = lo; v <= hi; ++v) excluded[v] = 1;
    }

    int pick = -1;
    double pick_val = -1.0;
    for (int j = 1; j <= n; ++j) {
      if (excluded[j]) continue;
      const double v = std::abs(b(j - 1));
      if (v > pick_val) {  // strict: ties keep the lowest index
        pick_val = v;
        pick = j;
      }
    }
    if (pick < 0) {
      result.early_stop = true;
      break;
    }

    support1.insert(std::upper_bound(support1.begin(), support1.end(), pick),
                    pick);
    const SupportSet sigma = SupportSet::from(support1, n);
    coeffs = restricted_least_squares(matrix.entries, sigma, y);
    residual = y - select_columns(matrix.entries, support1) * coeffs;
    result.residual_norms.push_back(residual.norm());
  }

  result.support = SupportSet::from(support1, n);
  result.estimate = Eigen::VectorXcd::Zero(n);
  for (std::size_t t = 0; t < support1.size(); ++t)
    result.estimate(support1[t] - 1) = coeffs(static_cast<Eigen::Index>(t));
  result.iterations = static_cast<int>(support1.size());
  return result;
}

RecoveryResult omp(const SensingMatrix& matrix, const Eigen::VectorXcd& y, int s) {
  return dtomp(matrix, y, s, 0);
}

Eigen::VectorXcd downsample(const Eigen::VectorXcd& x, int m) {
  const int n = static_cast<int>(x.size());
  if (m < 1 || m > n) throw std::invalid_argument("downsample: need 1 <= m <= N");
  const int small = n / m;
  const int longer = n % m;  // this many leading blocks take one extra entry
  Eigen::VectorXcd out(m);
  int pos = 0;
  for (int k = 0; k < m; ++k) {
    const int len = small + (k < longer ? 1 : 0);
    std::complex<double> sum = 0.0;
    for (int t = 0; t < len; ++t) sum += x(pos + t);
    out(k) = sum;
    pos += len;
  }
  return out;
}

Eigen::VectorXcd upsample(const Eigen::VectorXcd& v, int n) {
  const int m = static_cast<int>(v.size());
  if (m < 1 || m > n) throw std::invalid_argument("upsample: need 1 <= m <= N");
  const int small = n / m;
  const int longer = n % m;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  int pos = 0;
  for (int k = 0; k < m; ++k) {
    const int len = small + (k < longer ? 1 : 0);
    out(pos + (len - 1) / 2) = v(k);
    pos += len;
  }
  return out;
}

SensingMatrix coarse_sensing_matrix(int m, int n, int d, CoarseRowMode mode,
                                    std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("coarse_sensing_matrix: need d >= 1");
  if (n < 1 || m < 1)
    throw std::invalid_argument("coarse_sensing_matrix: need positive m, n");
  const int bins = (n + d - 1) / d;
  if (m > bins)
    throw std::invalid_argument(
        "coarse_sensing_matrix: more rows than coarse bins");
  MatrixSpec spec;
  spec.kind = (mode == CoarseRowMode::ConsecBegin) ? MatrixKind::FConsecBegin
                                                   : MatrixKind::FRand;
  spec.n_rows = m;
  spec.n_cols = bins;
  spec.seed = seed;
  return build(spec);
}

RecoveryResult coarse_grid_recover(const Eigen::VectorXcd& y, int m, int n,
                                   int d, int s, CoarseRowMode mode,
                                   std::uint64_t seed) {
  const SensingMatrix coarse = coarse_sensing_matrix(m, n, d, mode, seed);
  const int budget = std::min(s, coarse.n());
  return dtomp(coarse, y, budget, 0);
}

int coarse_bin_center(int bin, int n, int d) {
  if (d < 1) throw std::invalid_argument("coarse_bin_center: need d >= 1");
  const int bins = (n + d - 1) / d;
  if (bin < 1 || bin > bins)
    throw std::invalid_argument("coarse_bin_center: bin out of range");
  const int start = (bin - 1) * d + 1;
  const int width = std::min(d, n - (bin - 1) * d);
  return start + (width - 1) / 2;
}

RecoveryResult coarse_to_fine(const RecoveryResult& coarse, int n, int d) {
  RecoveryResult fine;
  fine.residual_norms = coarse.residual_norms;
  fine.iterations = coarse.iterations;
  fine.early_stop = coarse.early_stop;
  fine.estimate = Eigen::VectorXcd::Zero(n);
  std::vector<int> support1;
  for (int bin : coarse.support.indices) {
    const int center = coarse_bin_center(bin, n, d);
    fine.estimate(center - 1) = coarse.estimate(bin - 1);
    support1.push_back(center);
  }
  fine.support = SupportSet::from(std::move(support1), n);
  return fine;
}

Eigen::VectorXcd ds_measure(const Eigen::VectorXcd& x, int m, const NoiseSpec& noise) {
  const Eigen::VectorXcd xm = downsample(x, m);
  return add_noise(dft_matrix(m) * xm, noise);
}

Eigen::VectorXcd ds_recover(const Eigen::VectorXcd& x, int m, const NoiseSpec& noise) {
  const Eigen::VectorXcd y = ds_measure(x, m, noise);
  const Eigen::VectorXcd xm_hat =
      dft_matrix(m).adjoint() * y / static_cast<double>(m);
  return upsample(xm_hat, static_cast<int>(x.size()));
}

Eigen::VectorXcd sd_recover(const Eigen::VectorXcd& x, int m, const NoiseSpec& noise) {
  const int n = static_cast<int>(x.size());
  const Eigen::VectorXcd y = add_noise(downsample(dft_matrix(n) * x, m), noise);
  return dft_matrix(n).adjoint() * upsample(y, n) / static_cast<double>(n);
}

SupportSet top_s_support(const Eigen::VectorXcd& dense, int s) {
  const int n = static_cast<int>(dense.size());
  if (s < 0) throw std::invalid_argument("top_s_support: need s >= 0");
  const int take = std::min(s, n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + take, order.end(),
                    [&](int a, int b) {
                      const double va = std::abs(dense(a));
                      const double vb = std::abs(dense(b));
                      if (va != vb) return va > vb;
                      return a < b;
                    });
  std::vector<int> support1(take);
  for (int t = 0; t < take; ++t) support1[t] = order[t] + 1;
  std::sort(support1.begin(), support1.end());
  return SupportSet::from(std::move(support1), n);
}

}  // namespace dtcs
