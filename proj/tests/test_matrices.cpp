#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "dtcs/coherence.hpp"
#include "dtcs/matrices.hpp"

using namespace dtcs;

namespace {

MatrixSpec spec_of(MatrixKind kind, int m, int n, std::uint64_t seed = 0,
                   int inflation = 0) {
  MatrixSpec s;
  s.kind = kind;
  s.n_rows = m;
  s.n_cols = n;
  s.seed = seed;
  s.inflation_d = inflation;
  return s;
}

bool matrices_equal(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int c = 0; c < a.cols(); ++c)
    for (int r = 0; r < a.rows(); ++r)
      if (a(r, c) != b(r, c)) return false;
  return true;
}

}  // namespace

TEST_CASE("dft matrix small orders") {
  const Eigen::MatrixXcd f1 = dft_matrix(1);
  REQUIRE(f1.rows() == 1);
  CHECK(std::abs(f1(0, 0) - 1.0) < 1e-15);

  const Eigen::MatrixXcd f2 = dft_matrix(2);
  CHECK(std::abs(f2(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(f2(0, 1) - 1.0) < 1e-12);
  CHECK(std::abs(f2(1, 0) - 1.0) < 1e-12);
  CHECK(std::abs(f2(1, 1) + 1.0) < 1e-12);

  // Second row, second column of the order-4 transform is -i.
  const Eigen::MatrixXcd f4 = dft_matrix(4);
  CHECK(std::abs(f4(1, 1) - std::complex<double>(0.0, -1.0)) < 1e-12);

  CHECK_THROWS_AS(dft_matrix(0), std::invalid_argument);
}

TEST_CASE("all kinds produce unit-norm columns deterministically") {
  const std::vector<MatrixSpec> specs = {
      spec_of(MatrixKind::FConsecBegin, 6, 16),
      spec_of(MatrixKind::FConsecutive, 6, 16, 3),
      spec_of(MatrixKind::FRand, 6, 16, 4),
      spec_of(MatrixKind::FnXStatBlocks, 6, 16, 5),
      spec_of(MatrixKind::RGauss, 6, 16, 6),
      spec_of(MatrixKind::XiInflated, 6, 16, 0, 1),
  };
  for (const MatrixSpec& s : specs) {
    CAPTURE(s.key());
    const SensingMatrix a = build(s);
    REQUIRE(a.m() == 6);
    REQUIRE(a.n() == 16);
    for (int c = 0; c < a.n(); ++c)
      CHECK(std::abs(a.entries.col(c).norm() - 1.0) < 1e-9);
    const SensingMatrix b = build(s);
    CHECK(matrices_equal(a.entries, b.entries));
  }
}

TEST_CASE("consecutive-row selections have the documented correlation profile") {
  const SensingMatrix psi = build(spec_of(MatrixKind::FConsecBegin, 24, 128));
  // Adjacent-column correlation of the 24x128 partial DFT.
  CHECK(column_correlation(psi.entries, 1, 2) == doctest::Approx(0.94326002007348).epsilon(1e-9));

  // Correlations depend only on the column-index difference (wrapped).
  for (int j : {5, 40, 100}) {
    for (int f : {1, 2, 7, 50}) {
      const int other = (j - 1 + f) % 128 + 1;
      CHECK(column_correlation(psi.entries, j, other) ==
            doctest::Approx(column_correlation(psi.entries, 1, 1 + f)).epsilon(1e-9));
    }
  }

  // A shifted row window reproduces the same profile.
  const SensingMatrix shifted = build(spec_of(MatrixKind::FConsecutive, 24, 128, 11));
  for (int f : {1, 3, 9}) {
    CHECK(column_correlation(shifted.entries, 1, 1 + f) ==
          doctest::Approx(column_correlation(psi.entries, 1, 1 + f)).epsilon(1e-9));
  }
}

TEST_CASE("random-row selection is a set of genuine transform rows") {
  const int m = 8, n = 32;
  const SensingMatrix a = build(spec_of(MatrixKind::FRand, m, n, 21));
  std::vector<int> recovered_rows;
  for (int r = 0; r < m; ++r) {
    const std::complex<double> ratio = a.entries(r, 1) / a.entries(r, 0);
    double k = -std::arg(ratio) * n / (2.0 * M_PI);
    int kr = static_cast<int>(std::lround(k));
    kr = ((kr % n) + n) % n;
    recovered_rows.push_back(kr);
    for (int c = 0; c < n; ++c) {
      const std::complex<double> expected =
          std::exp(std::complex<double>(0.0, -2.0 * M_PI * kr * c / n)) / std::sqrt(double(m));
      CHECK(std::abs(a.entries(r, c) - expected) < 1e-9);
    }
  }
  for (int r = 1; r < m; ++r) CHECK(recovered_rows[r] > recovered_rows[r - 1]);
}

TEST_CASE("block-structured wide selection keeps contiguous runs") {
  const int m = 8, n = 64;
  const SensingMatrix a = build(spec_of(MatrixKind::FnXStatBlocks, m, n, 17));
  REQUIRE(a.n() == n);
  // Every entry of a wide-DFT row selection has modulus 1/sqrt(M).
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < m; ++r)
      CHECK(std::abs(std::abs(a.entries(r, c)) - 1.0 / std::sqrt(double(m))) < 1e-9);

  // Adjacent columns inside one contiguous run share one fixed ratio vector;
  // only run boundaries may break the pattern.  64 columns split into
  // 5*floor(ln 64) = 20 runs.
  const int blocks = 20;
  Eigen::VectorXcd base_ratio = a.entries.col(1).cwiseQuotient(a.entries.col(0));
  int breaks = 0;
  for (int c = 0; c + 1 < n; ++c) {
    Eigen::VectorXcd ratio = a.entries.col(c + 1).cwiseQuotient(a.entries.col(c));
    if ((ratio - base_ratio).norm() > 1e-6) ++breaks;
  }
  CHECK(breaks <= blocks - 1);
  CHECK(n - 1 - breaks >= n - blocks);
}

TEST_CASE("inflated block matrix duplicates and cycles columns") {
  const SensingMatrix xi = build(spec_of(MatrixKind::XiInflated, 4, 12, 0, 1));
  // Width-3 blocks: columns 1..3 identical, distinct blocks orthogonal.
  CHECK(std::abs(column_correlation(xi.entries, 1, 2) - 1.0) < 1e-12);
  CHECK(std::abs(column_correlation(xi.entries, 1, 3) - 1.0) < 1e-12);
  CHECK(std::abs(column_correlation(xi.entries, 1, 4)) < 1e-12);
  CHECK(std::abs(coherence(xi.entries) - 1.0) < 1e-12);

  // With more blocks than matrix order the source columns repeat cyclically,
  // and the final block truncates at N.
  const SensingMatrix wide = build(spec_of(MatrixKind::XiInflated, 4, 40, 0, 1));
  CHECK(std::abs(column_correlation(wide.entries, 1, 13) - 1.0) < 1e-12);
  CHECK(std::abs(column_correlation(wide.entries, 1, 4)) < 1e-12);
}

TEST_CASE("gaussian matrices are normalized and non-degenerate") {
  const SensingMatrix g = build(spec_of(MatrixKind::RGauss, 8, 20, 123));
  for (int c = 0; c < g.n(); ++c)
    CHECK(std::abs(g.entries.col(c).norm() - 1.0) < 1e-12);
  // Entries are not all of equal modulus (distinguishes from Fourier rows).
  double lo = 1e300, hi = 0.0;
  for (int c = 0; c < g.n(); ++c)
    for (int r = 0; r < g.m(); ++r) {
      lo = std::min(lo, std::abs(g.entries(r, c)));
      hi = std::max(hi, std::abs(g.entries(r, c)));
    }
  CHECK(hi - lo > 1e-3);
  const SensingMatrix other = build(spec_of(MatrixKind::RGauss, 8, 20, 124));
  CHECK_FALSE(matrices_equal(g.entries, other.entries));
}

TEST_CASE("build validates its specs") {
  CHECK_THROWS_AS(build(spec_of(MatrixKind::FConsecBegin, 10, 4)), std::invalid_argument);
  CHECK_THROWS_AS(build(spec_of(MatrixKind::FConsecBegin, 0, 4)), std::invalid_argument);
  // A shifted window needs at least one admissible nonzero shift.
  CHECK_THROWS_AS(build(spec_of(MatrixKind::FConsecutive, 8, 8, 1)), std::invalid_argument);
  CHECK_THROWS_AS(build(spec_of(MatrixKind::XiInflated, 4, 12, 0, -1)), std::invalid_argument);
  CHECK_NOTHROW(build(spec_of(MatrixKind::FConsecBegin, 8, 8)));
}

TEST_CASE("matrix kind names and keys round-trip") {
  for (MatrixKind k : {MatrixKind::FConsecBegin, MatrixKind::FConsecutive,
                       MatrixKind::FRand, MatrixKind::FnXStatBlocks,
                       MatrixKind::RGauss, MatrixKind::XiInflated}) {
    CHECK(matrix_kind_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(matrix_kind_from_string("nonsense"), std::invalid_argument);

  CHECK(spec_of(MatrixKind::FConsecBegin, 64, 1024, 7).key() ==
        "FConsecBegin|m=64|n=1024|seed=7");
  CHECK(spec_of(MatrixKind::XiInflated, 4, 12, 9, 2).key() ==
        "XiInflated|m=4|n=12|seed=9|inflation_d=2");
}
