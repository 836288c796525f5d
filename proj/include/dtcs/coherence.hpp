#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace dtcs {

// ---------------------------------------------------------------- reports

struct CoherenceReport {
  double mu = 0.0;
  // max column correlation over pairs at wrapped separation >= d, for
  // d = 0 .. floor(N/2); entry 0 equals mu.
  std::vector<double> mu_d_profile;
  double welch = 0.0;  // NaN when M == N (bound defined only for M < N)
  std::vector<double> correlation_profile;  // mu(1, 1+f) for f = 0 .. N-1
};

struct GuaranteeReport {
  double mu_d = 0.0;
  double mu_c_d_2s = 0.0;
  double mu_c_d_2s_minus_1 = 0.0;
  bool pair_sum_holds = false;
  bool envelope_bound_holds = false;
  bool half_bound_holds = false;
};

enum class CoherenceClass { Dynamic, Static };

// ---------------------------------------------------------- precomputation

// Absolute Gram table of a column-normalized matrix plus the structures the
// scans need: a suffix-max envelope over wrapped separations (for the
// d-coherence) and per-row index orderings by descending correlation (for
// the cumulative d-coherence top-k scans). Built in parallel; all queries
// are pure and safe for concurrent use.
class CorrelationTable {
 public:
  explicit CorrelationTable(const Eigen::MatrixXcd& matrix);

  int n() const { return static_cast<int>(gram_.cols()); }
  // 1-indexed column pair -> |<phi_i, phi_j>| (columns are unit norm).
  double at(int i, int j) const { return gram_(i - 1, j - 1); }
  const Eigen::MatrixXd& gram() const { return gram_; }

  double coherence() const;
  // Max correlation over pairs at wrapped separation >= d (>= 1 for d = 0).
  double d_coherence(int d) const;
  // Max over reference columns of the sum of the k largest correlations to
  // columns at unwrapped distance > d.
  double cumulative_d_coherence(int d, int k) const;

 private:
  Eigen::MatrixXd gram_;
  std::vector<double> envelope_;               // index d = 0 .. floor(N/2)
  std::vector<std::vector<int>> row_order_;    // 0-based, descending value
};

// ------------------------------------------------------------- operations

double column_correlation(const Eigen::MatrixXcd& matrix, int i, int j);
double coherence(const Eigen::MatrixXcd& matrix);
double d_coherence(const Eigen::MatrixXcd& matrix, int d);
double welch_bound(int m, int n);
std::vector<double> coherence_function(const Eigen::MatrixXcd& matrix, int j);
CoherenceClass classify_coherence_functions(const Eigen::MatrixXcd& matrix,
                                            double tolerance = 1e-9);
double cumulative_d_coherence(const Eigen::MatrixXcd& matrix, int d, int k);

GuaranteeReport check_guarantee(const CorrelationTable& table, int d, int s);
GuaranteeReport check_guarantee(const Eigen::MatrixXcd& matrix, int d, int s);

// All d in [d_lo, d_hi] for which either sufficient recovery condition
// holds (sparsity bound from the d-coherence, or the cumulative
// d-coherence at 2s below one half).
std::vector<int> admissible_d_range(const CorrelationTable& table, int s,
                                    int d_lo, int d_hi);
std::vector<int> admissible_d_range(const Eigen::MatrixXcd& matrix, int s,
                                    int d_lo, int d_hi);

// Exhaustive check of the tolerant recovery condition: for every pair of
// index sets {A, B} within Hausdorff distance d (A of cardinality s and
// (4d+1)-spread, B nonempty), with T~ = A u B and T = clos_2d(A), verify
// max_{j not in T} ||pinv(Phi_T~) phi_j||_1 < 1. Errors out once more than
// max_enumeration candidate pairs would be examined.
bool check_trc_bruteforce(const Eigen::MatrixXcd& matrix, int d, int s,
                          std::int64_t max_enumeration = 1000000);

CoherenceReport analyze_coherence(const Eigen::MatrixXcd& matrix);

// ------------------------------------------------------- serial reference

// Single-threaded mirrors of the parallel kernels (same arithmetic, same
// scan order, no threading) plus the exponential subset-enumeration oracle
// for the cumulative d-coherence. Kept for equivalence tests and the
// kernel benchmark.
namespace serial {

Eigen::MatrixXd correlation_gram(const Eigen::MatrixXcd& matrix);
std::vector<double> separation_envelope(const Eigen::MatrixXd& gram);
double cumulative_d_coherence(const Eigen::MatrixXcd& matrix, int d, int k);
double cumulative_d_coherence_bruteforce(const Eigen::MatrixXcd& matrix, int d,
                                         int k);

}  // namespace serial

}  // namespace dtcs
