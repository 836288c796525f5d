#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>

#include "dtcs/matrices.hpp"
#include "dtcs/metrics.hpp"

namespace dtcs {

struct SparseSignal {
  Eigen::VectorXcd values;  // length N, nonzero exactly on the support
  SupportSet support;
};

struct NoiseSpec {
  double snr_db = 0.0;  // +infinity selects the exact noiseless measurement
  std::uint64_t seed = 0;
};

// Support uniform among size-s subsets (or among g-spread subsets by
// rejection when spread = g is given, with a deterministic fallback
// placement); nonzero entries have real and imaginary parts i.i.d. uniform
// on [-50, 50]. Draw order: support first, then values in ascending index
// order (two draws per entry).
SparseSignal generate_signal(int n, int s, std::uint64_t seed,
                             std::optional<int> spread = std::nullopt);

// clean + complex white noise rescaled so 20*log10(||clean|| / ||e||) equals
// snr_db; exact pass-through at snr_db = +infinity.
Eigen::VectorXcd add_noise(const Eigen::VectorXcd& clean, const NoiseSpec& noise);

// y = Phi x + e per the noise spec.
Eigen::VectorXcd measure(const SensingMatrix& matrix, const SparseSignal& x,
                         const NoiseSpec& noise);

}  // namespace dtcs
