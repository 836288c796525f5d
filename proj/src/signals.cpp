#include "dtcs/signals.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dtcs/rng.hpp"

namespace dtcs {
namespace {

constexpr int kSpreadRejectionCap = 100000;

bool spread_ok(const std::vector<int>& sorted0, int g) {
  for (std::size_t t = 1; t < sorted0.size(); ++t)
    if (sorted0[t] - sorted0[t - 1] <= g) return false;
  return true;
}

std::vector<int> draw_support0(rng::Engine& eng, int n, int s,
                               std::optional<int> spread) {
  if (!spread) return rng::sample_without_replacement(eng, n, s);

  const int g = *spread;
  if (g < 0) throw std::invalid_argument("generate_signal: spread must be >= 0");
  const int capacity = (n - 1) / (g + 1) + 1;  // largest g-spread set in [1,n]
  if (s > capacity)
    throw std::invalid_argument(
        "generate_signal: no g-spread support of the requested size exists");

  for (int attempt = 0; attempt < kSpreadRejectionCap; ++attempt) {
    std::vector<int> cand = rng::sample_without_replacement(eng, n, s);
    if (spread_ok(cand, g)) return cand;
  }
  // Deterministic fallback: equally spaced from the left edge.
  std::vector<int> fixed(s);
  for (int t = 0; t < s; ++t) fixed[t] = t * (g + 1);
  return fixed;
}

}  // namespace

SparseSignal generate_signal(int n, int s, std::uint64_t seed,
                             std::optional<int> spread) {
  if (n < 1) throw std::invalid_argument("generate_signal: n must be positive");
  if (s < 0 || s > n)
    throw std::invalid_argument("generate_signal: need 0 <= s <= n");

  rng::Engine eng(seed);
  const std::vector<int> support0 = draw_support0(eng, n, s, spread);

  SparseSignal sig;
  sig.values = Eigen::VectorXcd::Zero(n);
  for (int i0 : support0) {
    double re = rng::uniform_range(eng, -50.0, 50.0);
    double im = rng::uniform_range(eng, -50.0, 50.0);
    while (re == 0.0 && im == 0.0) {  // keep the support invariant exact
      re = rng::uniform_range(eng, -50.0, 50.0);
      im = rng::uniform_range(eng, -50.0, 50.0);
    }
    sig.values(i0) = std::complex<double>(re, im);
  }

  std::vector<int> support1(support0.size());
  for (std::size_t t = 0; t < support0.size(); ++t) support1[t] = support0[t] + 1;
  sig.support = SupportSet::from(std::move(support1), n);
  return sig;
}

Eigen::VectorXcd add_noise(const Eigen::VectorXcd& clean, const NoiseSpec& noise) {
  if (std::isnan(noise.snr_db) ||
      noise.snr_db == -std::numeric_limits<double>::infinity())
    throw std::invalid_argument("add_noise: snr_db must be finite or +infinity");
  if (noise.snr_db == std::numeric_limits<double>::infinity()) return clean;

  const double clean_norm = clean.norm();
  if (clean_norm == 0.0)
    throw std::runtime_error("add_noise: zero measurement, SNR undefined");

  rng::Engine eng(noise.seed);
  Eigen::VectorXcd e(clean.size());
  for (Eigen::Index i = 0; i < clean.size(); ++i) {
    const auto [re, im] = rng::normal_pair(eng);
    e(i) = std::complex<double>(re, im);
  }
  const double raw_norm = e.norm();
  if (raw_norm == 0.0) throw std::runtime_error("add_noise: degenerate noise draw");

  const double target = clean_norm / std::pow(10.0, noise.snr_db / 20.0);
  return clean + (target / raw_norm) * e;
}

Eigen::VectorXcd measure(const SensingMatrix& matrix, const SparseSignal& x,
                         const NoiseSpec& noise) {
  if (matrix.n() != static_cast<int>(x.values.size()))
    throw std::invalid_argument("measure: signal length does not match matrix");
  return add_noise(matrix.entries * x.values, noise);
}

}  // namespace dtcs
