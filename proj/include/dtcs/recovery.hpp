#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "dtcs/matrices.hpp"
#include "dtcs/metrics.hpp"
#include "dtcs/signals.hpp"

namespace dtcs {

struct RecoveryResult {
  Eigen::VectorXcd estimate;  // length N, supported on `support`
  SupportSet support;
  // Entry 0 is ||y||; one further entry per completed refit. Non-increasing.
  std::vector<double> residual_norms;
  int iterations = 0;
  bool early_stop = false;  // candidate pool emptied before the budget
};

// Least-squares coefficients of y against the selected columns via SVD;
// errors when the smallest singular value falls below 1e-10 of the largest.
Eigen::VectorXcd restricted_least_squares(const Eigen::MatrixXcd& matrix,
                                          const SupportSet& columns,
                                          const Eigen::VectorXcd& y);

// Greedy tolerant pursuit: each iteration correlates the residual with all
// columns, picks the strongest candidate outside the 2d-closure of the
// current support (ties to the lowest index), refits on the grown support,
// and updates the residual. d = 0 is plain orthogonal matching pursuit.
RecoveryResult dtomp(const SensingMatrix& matrix, const Eigen::VectorXcd& y,
                     int s, int d);
RecoveryResult omp(const SensingMatrix& matrix, const Eigen::VectorXcd& y, int s);

// Block-sum reduction to m entries; the first (N mod m) blocks are one
// longer when m does not divide N.
Eigen::VectorXcd downsample(const Eigen::VectorXcd& x, int m);
// Zero-padded expansion placing entry k at the center of block k (floor
// convention). downsample(upsample(v, n), m) == v.
Eigen::VectorXcd upsample(const Eigen::VectorXcd& v, int n);

enum class CoarseRowMode { ConsecBegin, RandomRows };

// The m x ceil(n/d) sensing matrix of the coarse-grid baseline: row-restricted
// DFT of order ceil(n/d), consecutive-from-the-top or seeded random rows.
SensingMatrix coarse_sensing_matrix(int m, int n, int d, CoarseRowMode mode,
                                    std::uint64_t seed);

// Runs plain pursuit on the coarse grid; the result lives on ceil(n/d) bins.
RecoveryResult coarse_grid_recover(const Eigen::VectorXcd& y, int m, int n,
                                   int d, int s, CoarseRowMode mode,
                                   std::uint64_t seed);

// 1-based fine index of the center of coarse bin `bin` (bins of width d,
// the last one possibly shorter).
int coarse_bin_center(int bin, int n, int d);

// Lifts a coarse-grid result onto the fine grid at the bin centers.
RecoveryResult coarse_to_fine(const RecoveryResult& coarse, int n, int d);

// Downsample-then-sense baseline: y = F_m D(x) + e, then x_hat = U(F_m^-1 y).
Eigen::VectorXcd ds_measure(const Eigen::VectorXcd& x, int m, const NoiseSpec& noise);
Eigen::VectorXcd ds_recover(const Eigen::VectorXcd& x, int m, const NoiseSpec& noise);

// Sense-then-downsample baseline: y = D(F_n x) + e, then x_hat = F_n^-1 U(y).
Eigen::VectorXcd sd_recover(const Eigen::VectorXcd& x, int m, const NoiseSpec& noise);

// Indices of the s largest-magnitude entries (ties to the lowest index);
// used to read a support off the dense baseline estimates.
SupportSet top_s_support(const Eigen::VectorXcd& dense, int s);

}  // namespace dtcs
