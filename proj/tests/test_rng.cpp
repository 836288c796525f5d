#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "dtcs/rng.hpp"

using namespace dtcs;

TEST_CASE("engine matches the pinned mt19937_64 sequence") {
  // The standard pins the 10000th draw of a default-seeded mt19937_64.
  rng::Engine e;
  for (int i = 0; i < 9999; ++i) e.next();
  CHECK(e.next() == 9981545732273789042ULL);

  rng::Engine explicit_default(5489u);
  rng::Engine plain;
  for (int i = 0; i < 100; ++i) CHECK(explicit_default.next() == plain.next());
}

TEST_CASE("splitmix64 produces its published first output for state 0") {
  std::uint64_t state = 0;
  CHECK(rng::splitmix64_next(state) == 0xE220A8397B1DCDAFULL);
}

TEST_CASE("seed derivation is deterministic and salt-sensitive") {
  const std::uint64_t a = rng::derive_seed(42, 1);
  CHECK(a == rng::derive_seed(42, 1));
  CHECK(a != rng::derive_seed(42, 2));
  CHECK(a != rng::derive_seed(43, 1));
  CHECK(rng::derive_seed(42, 1, 2) == rng::derive_seed(rng::derive_seed(42, 1), 2));
}

TEST_CASE("fnv1a matches the published test vectors") {
  CHECK(rng::fnv1a("") == 14695981039346656037ULL);
  CHECK(rng::fnv1a("a") == 12638187200555641996ULL);
  CHECK(rng::fnv1a("abc") == 16654208175385433931ULL);
}

TEST_CASE("uniform_below stays in range and rejects bound zero") {
  rng::Engine e(7);
  CHECK_THROWS_AS(rng::uniform_below(e, 0), std::invalid_argument);
  for (int i = 0; i < 1000; ++i) CHECK(rng::uniform_below(e, 7) < 7);
  for (int i = 0; i < 100; ++i) CHECK(rng::uniform_below(e, 1) == 0);

  rng::Engine a(11), b(11);
  for (int i = 0; i < 200; ++i)
    CHECK(rng::uniform_below(a, 1000) == rng::uniform_below(b, 1000));
}

TEST_CASE("uniform doubles live in the expected intervals") {
  rng::Engine e(3);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng::uniform01(e);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  for (int i = 0; i < 1000; ++i) {
    const double v = rng::uniform_range(e, -50.0, 50.0);
    CHECK(v >= -50.0);
    CHECK(v <= 50.0);
  }
}

TEST_CASE("normal pairs have roughly standard moments") {
  rng::Engine e(12345);
  double sum = 0.0, sumsq = 0.0;
  const int pairs = 20000;
  for (int i = 0; i < pairs; ++i) {
    auto [x, y] = rng::normal_pair(e);
    sum += x + y;
    sumsq += x * x + y * y;
  }
  const double n = 2.0 * pairs;
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("sampling without replacement is sorted, unique, in range") {
  rng::Engine e(99);
  for (int rep = 0; rep < 50; ++rep) {
    const std::vector<int> s = rng::sample_without_replacement(e, 20, 7);
    REQUIRE(s.size() == 7);
    std::set<int> seen(s.begin(), s.end());
    CHECK(seen.size() == 7);
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(s[i] >= 0);
      CHECK(s[i] < 20);
      if (i > 0) CHECK(s[i] > s[i - 1]);
    }
  }
  CHECK(rng::sample_without_replacement(e, 5, 5) == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(rng::sample_without_replacement(e, 5, 0).empty());
  CHECK_THROWS_AS(rng::sample_without_replacement(e, 3, 4), std::invalid_argument);
  CHECK_THROWS_AS(rng::sample_without_replacement(e, -1, 0), std::invalid_argument);
}
