#include <cmath>
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "dtcs/matrices.hpp"
#include "dtcs/metrics.hpp"
#include "dtcs/signals.hpp"

using namespace dtcs;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("sparse signals are deterministic and exactly supported") {
  const SparseSignal a = generate_signal(64, 5, 42);
  const SparseSignal b = generate_signal(64, 5, 42);
  REQUIRE(a.support.size() == 5);
  CHECK(a.support.indices == b.support.indices);
  for (int i = 0; i < 64; ++i) CHECK(a.values(i) == b.values(i));

  const SparseSignal c = generate_signal(64, 5, 43);
  const bool differs =
      a.support.indices != c.support.indices || (a.values - c.values).norm() > 0.0;
  CHECK(differs);

  for (int i = 1; i <= 64; ++i) {
    if (a.support.contains(i)) {
      CHECK(std::abs(a.values(i - 1)) > 0.0);
      CHECK(std::abs(a.values(i - 1).real()) <= 50.0);
      CHECK(std::abs(a.values(i - 1).imag()) <= 50.0);
    } else {
      CHECK(a.values(i - 1) == std::complex<double>(0.0, 0.0));
    }
  }
}

TEST_CASE("signal sizes and degenerate sparsities") {
  CHECK(generate_signal(10, 0, 1).support.size() == 0);
  CHECK(generate_signal(10, 10, 1).support.size() == 10);
  CHECK_THROWS_AS(generate_signal(10, 11, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_signal(0, 1, 1), std::invalid_argument);
}

TEST_CASE("spread-constrained supports") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SparseSignal s = generate_signal(100, 5, seed, 10);
    REQUIRE(s.support.size() == 5);
    CHECK(is_d_spread(s.support, 10));
  }
  // Capacity bound: 10 positions cannot hold 5 elements pairwise more than
  // 5 apart.
  CHECK_THROWS_AS(generate_signal(10, 5, 1, 5), std::invalid_argument);
  // Exactly at capacity the deterministic fallback still succeeds.
  const SparseSignal tight = generate_signal(11, 3, 7, 4);
  CHECK(is_d_spread(tight.support, 4));
}

TEST_CASE("noise injection hits the requested level") {
  const SparseSignal x = generate_signal(256, 8, 5);
  const Eigen::VectorXcd clean = x.values;

  SUBCASE("infinite ratio is the exact pass-through") {
    const Eigen::VectorXcd y = add_noise(clean, NoiseSpec{kInf, 9});
    for (int i = 0; i < clean.size(); ++i) CHECK(y(i) == clean(i));
  }
  SUBCASE("zero dB means equal norms") {
    const Eigen::VectorXcd y = add_noise(clean, NoiseSpec{0.0, 9});
    CHECK((y - clean).norm() == doctest::Approx(clean.norm()).epsilon(1e-9));
  }
  SUBCASE("twenty dB means one tenth") {
    const Eigen::VectorXcd y = add_noise(clean, NoiseSpec{20.0, 9});
    CHECK((y - clean).norm() == doctest::Approx(0.1 * clean.norm()).epsilon(1e-9));
  }
  SUBCASE("noise draws are seed-deterministic") {
    const Eigen::VectorXcd y1 = add_noise(clean, NoiseSpec{10.0, 9});
    const Eigen::VectorXcd y2 = add_noise(clean, NoiseSpec{10.0, 9});
    const Eigen::VectorXcd y3 = add_noise(clean, NoiseSpec{10.0, 10});
    CHECK((y1 - y2).norm() == 0.0);
    CHECK((y1 - y3).norm() > 0.0);
  }
  SUBCASE("invalid levels are rejected") {
    CHECK_THROWS_AS(add_noise(clean, NoiseSpec{-kInf, 9}), std::invalid_argument);
    CHECK_THROWS_AS(add_noise(clean, NoiseSpec{std::nan(""), 9}), std::invalid_argument);
  }
  SUBCASE("a zero signal admits no finite ratio") {
    const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(16);
    CHECK_THROWS_AS(add_noise(zero, NoiseSpec{10.0, 9}), std::runtime_error);
    CHECK_NOTHROW(add_noise(zero, NoiseSpec{kInf, 9}));
  }
}

TEST_CASE("measurement composes the matrix with the noise model") {
  MatrixSpec spec;
  spec.kind = MatrixKind::FConsecBegin;
  spec.n_rows = 8;
  spec.n_cols = 32;
  const SensingMatrix phi = build(spec);
  const SparseSignal x = generate_signal(32, 3, 2);

  const Eigen::VectorXcd noiseless = measure(phi, x, NoiseSpec{kInf, 0});
  const Eigen::VectorXcd direct = phi.entries * x.values;
  for (int i = 0; i < 8; ++i) CHECK(noiseless(i) == direct(i));

  const Eigen::VectorXcd noisy = measure(phi, x, NoiseSpec{0.0, 3});
  CHECK((noisy - direct).norm() == doctest::Approx(direct.norm()).epsilon(1e-9));

  const SparseSignal wrong = generate_signal(16, 3, 2);
  CHECK_THROWS_AS(measure(phi, wrong, NoiseSpec{kInf, 0}), std::invalid_argument);
}
