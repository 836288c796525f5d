#pragma once

// Sensing-matrix construction with seeded, bit-reproducible randomness and
// l2 column normalization.

#include <Eigen/Dense>
#include <cstdint>
#include <string>

namespace dtcs {

enum class MatrixKind {
  FConsecBegin,    // rows 1..M of the N-order DFT
  FConsecutive,    // rows s..s+M-1, s drawn uniformly from [1, N-M]
  FRand,           // M distinct rows drawn uniformly without replacement
  FnXStatBlocks,   // blocks of consecutive columns cut from a 3N-order DFT
  RGauss,          // i.i.d. complex Gaussian entries
  XiInflated,      // columns of the M-order DFT repeated in (2d+1)-wide blocks
};

MatrixKind matrix_kind_from_string(const std::string& name);
std::string to_string(MatrixKind kind);

struct MatrixSpec {
  MatrixKind kind = MatrixKind::FConsecBegin;
  int n_rows = 0;                 // M
  int n_cols = 0;                 // N
  std::uint64_t seed = 0;
  int inflation_d = 0;            // XiInflated only

  // Canonical flat key string; doubles as the config serialization.
  std::string key() const;
};

struct SensingMatrix {
  Eigen::MatrixXcd entries;       // M x N, columns l2-normalized
  MatrixSpec spec;

  int m() const { return static_cast<int>(entries.rows()); }
  int n() const { return static_cast<int>(entries.cols()); }
};

// Unnormalized DFT: entry (r, c) = exp(-2*pi*i*(r-1)*(c-1)/order), 1-indexed.
Eigen::MatrixXcd dft_matrix(int order);

// Normalizes every column to unit l2 norm; errors on a zero column.
void column_normalize(Eigen::MatrixXcd& a);

// Deterministic construction; all random draws come from spec.seed in a fixed
// documented order (see the per-kind builders in matrices.cpp).
SensingMatrix build(const MatrixSpec& spec);

}  // namespace dtcs
