#include "dtcs/matrices.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dtcs/rng.hpp"

namespace dtcs {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559005768;

// Draw order per kind (consumed from one Engine seeded with spec.seed):
//   FConsecutive:  1 draw  - row shift
//   FRand:         M draws - partial Fisher-Yates row subset (then sorted)
//   FnXStatBlocks: 1 draw  - row shift into the 3N-order DFT, then per
//                  placement attempt B draws - block start columns
//   RGauss:        M*N normal pairs, row-major
// FConsecBegin and XiInflated consume no randomness.

Eigen::MatrixXcd rows_of_dft(int order, const std::vector<int>& rows0, int n_cols) {
  Eigen::MatrixXcd out(static_cast<int>(rows0.size()), n_cols);
  for (int r = 0; r < static_cast<int>(rows0.size()); ++r)
    for (int c = 0; c < n_cols; ++c) {
      const double phase = -kTwoPi * static_cast<double>(rows0[r]) *
                           static_cast<double>(c) / static_cast<double>(order);
      out(r, c) = std::complex<double>(std::cos(phase), std::sin(phase));
    }
  return out;
}

Eigen::MatrixXcd build_consec(const MatrixSpec& s, int first_row0) {
  std::vector<int> rows(s.n_rows);
  for (int r = 0; r < s.n_rows; ++r) rows[r] = first_row0 + r;
  return rows_of_dft(s.n_cols, rows, s.n_cols);
}

Eigen::MatrixXcd build_frand(const MatrixSpec& s, rng::Engine& eng) {
  const std::vector<int> rows =
      rng::sample_without_replacement(eng, s.n_cols, s.n_rows);
  return rows_of_dft(s.n_cols, rows, s.n_cols);
}

Eigen::MatrixXcd build_fnx_blocks(const MatrixSpec& s, rng::Engine& eng) {
  const int n = s.n_cols;
  const int wide = 3 * n;
  const int shift0 = static_cast<int>(
      rng::uniform_below(eng, static_cast<std::uint64_t>(wide - s.n_rows)));
  std::vector<int> rows(s.n_rows);
  for (int r = 0; r < s.n_rows; ++r) rows[r] = shift0 + r;

  int b = 5 * static_cast<int>(std::floor(std::log(static_cast<double>(n))));
  b = std::max(1, std::min(b, n));
  const int base_w = n / b;
  std::vector<int> widths(b, base_w);
  widths.back() += n - b * base_w;  // last block absorbs the remainder

  // Rejection-sample non-overlapping block start columns inside [0, 3N).
  std::vector<int> starts(b);
  bool placed = false;
  for (int attempt = 0; attempt < 10000 && !placed; ++attempt) {
    for (int i = 0; i < b; ++i)
      starts[i] = static_cast<int>(rng::uniform_below(
          eng, static_cast<std::uint64_t>(wide - widths[i] + 1)));
    placed = true;
    for (int i = 0; i < b && placed; ++i)
      for (int j = i + 1; j < b; ++j)
        if (starts[i] < starts[j] + widths[j] && starts[j] < starts[i] + widths[i]) {
          placed = false;
          break;
        }
  }
  if (!placed)
    throw std::runtime_error("FnXStatBlocks: could not place non-overlapping blocks");

  // Blocks are laid out in draw order.
  Eigen::MatrixXcd wide_rows = rows_of_dft(wide, rows, wide);
  Eigen::MatrixXcd out(s.n_rows, n);
  int col = 0;
  for (int i = 0; i < b; ++i)
    for (int c = 0; c < widths[i]; ++c) out.col(col++) = wide_rows.col(starts[i] + c);
  return out;
}

Eigen::MatrixXcd build_rgauss(const MatrixSpec& s, rng::Engine& eng) {
  // Real and imaginary parts N(0, 1/2) so entries have unit complex variance.
  constexpr double kHalfVarScale = 0.7071067811865475244;  // 1/sqrt(2)
  Eigen::MatrixXcd out(s.n_rows, s.n_cols);
  for (int r = 0; r < s.n_rows; ++r)
    for (int c = 0; c < s.n_cols; ++c) {
      const auto [re, im] = rng::normal_pair(eng);
      out(r, c) = std::complex<double>(re * kHalfVarScale, im * kHalfVarScale);
    }
  return out;
}

Eigen::MatrixXcd build_xi_inflated(const MatrixSpec& s) {
  const int m = s.n_rows;
  const int width = 2 * s.inflation_d + 1;
  const Eigen::MatrixXcd fm = dft_matrix(m);
  Eigen::MatrixXcd out(m, s.n_cols);
  for (int c = 0; c < s.n_cols; ++c) {
    const int block = c / width;
    out.col(c) = fm.col(block % m);  // cyclic source extension
  }
  return out;
}

}  // namespace

MatrixKind matrix_kind_from_string(const std::string& name) {
  if (name == "FConsecBegin") return MatrixKind::FConsecBegin;
  if (name == "FConsecutive") return MatrixKind::FConsecutive;
  if (name == "FRand") return MatrixKind::FRand;
  if (name == "FnXStatBlocks") return MatrixKind::FnXStatBlocks;
  if (name == "RGauss") return MatrixKind::RGauss;
  if (name == "XiInflated") return MatrixKind::XiInflated;
  throw std::invalid_argument("unknown matrix kind: " + name);
}

std::string to_string(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::FConsecBegin: return "FConsecBegin";
    case MatrixKind::FConsecutive: return "FConsecutive";
    case MatrixKind::FRand: return "FRand";
    case MatrixKind::FnXStatBlocks: return "FnXStatBlocks";
    case MatrixKind::RGauss: return "RGauss";
    case MatrixKind::XiInflated: return "XiInflated";
  }
  throw std::invalid_argument("unknown matrix kind enum");
}

std::string MatrixSpec::key() const {
  std::string k = to_string(kind);
  k += "|m=" + std::to_string(n_rows);
  k += "|n=" + std::to_string(n_cols);
  k += "|seed=" + std::to_string(seed);
  if (kind == MatrixKind::XiInflated) k += "|inflation_d=" + std::to_string(inflation_d);
  return k;
}

Eigen::MatrixXcd dft_matrix(int order) {
  if (order < 1) throw std::invalid_argument("dft_matrix: order must be positive");
  std::vector<int> rows(order);
  for (int r = 0; r < order; ++r) rows[r] = r;
  return rows_of_dft(order, rows, order);
}

void column_normalize(Eigen::MatrixXcd& a) {
  for (int c = 0; c < a.cols(); ++c) {
    const double nrm = a.col(c).norm();
    if (nrm == 0.0)
      throw std::runtime_error("column_normalize: zero column (degenerate construction)");
    a.col(c) /= nrm;
  }
}

SensingMatrix build(const MatrixSpec& spec) {
  if (spec.n_rows < 1 || spec.n_cols < 1)
    throw std::invalid_argument("build: matrix dimensions must be positive");
  if (spec.n_rows > spec.n_cols)
    throw std::invalid_argument("build: require M <= N");
  if (spec.kind == MatrixKind::FConsecutive && spec.n_cols - spec.n_rows < 1)
    throw std::invalid_argument("build: FConsecutive requires N - M >= 1");
  if (spec.inflation_d < 0)
    throw std::invalid_argument("build: inflation_d must be nonnegative");

  rng::Engine eng(spec.seed);
  Eigen::MatrixXcd a;
  switch (spec.kind) {
    case MatrixKind::FConsecBegin:
      a = build_consec(spec, 0);
      break;
    case MatrixKind::FConsecutive: {
      // shift s in [1, N-M], 1-indexed; row offset is s-1
      const int s1 = 1 + static_cast<int>(rng::uniform_below(
                             eng, static_cast<std::uint64_t>(spec.n_cols - spec.n_rows)));
      a = build_consec(spec, s1 - 1);
      break;
    }
    case MatrixKind::FRand:
      a = build_frand(spec, eng);
      break;
    case MatrixKind::FnXStatBlocks:
      a = build_fnx_blocks(spec, eng);
      break;
    case MatrixKind::RGauss:
      a = build_rgauss(spec, eng);
      break;
    case MatrixKind::XiInflated:
      a = build_xi_inflated(spec);
      break;
  }
  column_normalize(a);
  return SensingMatrix{std::move(a), spec};
}

}  // namespace dtcs
