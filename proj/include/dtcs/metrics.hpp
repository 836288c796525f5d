#pragma once

// Index-set machinery and tolerant recovery measures.
//
// All public index math is 1-based; sets are sorted, duplicate-free vectors.
// The d-closure clamps to [1, N] and does not wrap.

#include <Eigen/Dense>
#include <vector>

namespace dtcs {

struct SupportSet {
  std::vector<int> indices;  // sorted ascending, unique, within [1, ambient_n]
  int ambient_n = 0;

  static SupportSet from(std::vector<int> idx, int ambient_n);
  bool contains(int i) const;
  int size() const { return static_cast<int>(indices.size()); }
};

// clos_d(B): union over i in B of {max(i-d,1), ..., min(i+d,N)}.
SupportSet d_closure(const SupportSet& s, int d);

// |Sigma ∩ clos_d(Gamma)| / |Sigma|; errors on empty Sigma.
double rho_d(const SupportSet& true_support, const SupportSet& recovered, int d);

// Count form of the same intersection (the "recovered non-zeros" statistic).
int tolerant_hits(const SupportSet& true_support, const SupportSet& recovered, int d);

// floor((n-1)/(2d+1)) + 1.
int s_max(int n, int d);

// True iff all distinct i, j in the set satisfy |i-j| > d.
bool is_d_spread(const SupportSet& s, int d);

// True iff a ⊆ clos_d(b), b ⊆ clos_d(a), and max(|a|,|b|) >= s.
bool is_d_approximate_pair(const SupportSet& a, const SupportSet& b, int d, int s);

// Proxy-signal similarity: both proxies live on supp(x_true), entry i being the
// sum of magnitudes over the d-window around i; returns
// 1 - ||xp_rec - xp_true|| / (||xp_rec|| * ||xp_true||).
double rho_2(const Eigen::VectorXcd& true_signal, const Eigen::VectorXcd& recovered, int d);

// The proxy vector itself (exposed for tests and the CLI).
Eigen::VectorXd proxy_signal(const Eigen::VectorXcd& reference_support_of,
                             const Eigen::VectorXcd& magnitudes_from, int d);

}  // namespace dtcs
