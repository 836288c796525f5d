#pragma once

// Deterministic, platform-independent randomness.
//
// The engine is std::mt19937_64, whose output sequence is pinned by the C++
// standard, so identical seeds reproduce identical draws on every platform.
// Distributions are implemented here by hand (rejection sampling, Box-Muller)
// because the std::*_distribution adapters are implementation-defined and
// would break cross-platform reproducibility.
//
// Seed derivation uses splitmix64 steps; grid points hash with FNV-1a.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

namespace dtcs::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// One splitmix64 scramble of an advancing state.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += kGolden;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Derive a child seed from (seed, salt); independent salts give independent
// streams for one parent seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t state = seed ^ (salt * kGolden);
  return splitmix64_next(state);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt_a,
                                 std::uint64_t salt_b) {
  return derive_seed(derive_seed(seed, salt_a), salt_b);
}

// FNV-1a over a byte string; used to hash canonical grid-point keys.
inline std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

class Engine {
 public:
  explicit Engine(std::uint64_t seed) : gen_(seed) {}
  Engine() : gen_() {}  // standard default seed 5489

  std::uint64_t next() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

// Unbiased integer in [0, bound) by rejection.
inline std::uint64_t uniform_below(Engine& e, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t r = e.next();
    if (r >= threshold) return r % bound;
  }
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine& e) {
  return static_cast<double>(e.next() >> 11) * 0x1.0p-53;
}

inline double uniform_range(Engine& e, double lo, double hi) {
  return lo + (hi - lo) * uniform01(e);
}

// Two independent standard normals via Box-Muller; u1 = 0 is redrawn so the
// logarithm stays finite.
inline std::pair<double, double> normal_pair(Engine& e) {
  double u1 = uniform01(e);
  while (u1 == 0.0) u1 = uniform01(e);
  const double u2 = uniform01(e);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * 3.141592653589793238462643383279502884 * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

// Uniform size-k subset of {0, ..., n-1} via partial Fisher-Yates, returned
// sorted ascending; consumes exactly k draws.
inline std::vector<int> sample_without_replacement(Engine& e, int n, int k) {
  if (k < 0 || n < 0 || k > n)
    throw std::invalid_argument("sample_without_replacement: need 0 <= k <= n");
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(uniform_below(e, static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
  }
  std::vector<int> out(pool.begin(), pool.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dtcs::rng
