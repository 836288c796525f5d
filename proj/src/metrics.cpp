#include "dtcs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dtcs {

SupportSet SupportSet::from(std::vector<int> idx, int ambient_n) {
  if (ambient_n < 0) throw std::invalid_argument("SupportSet: negative ambient size");
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  for (int i : idx)
    if (i < 1 || i > ambient_n)
      throw std::invalid_argument("SupportSet: index out of [1, N]");
  return SupportSet{std::move(idx), ambient_n};
}

bool SupportSet::contains(int i) const {
  return std::binary_search(indices.begin(), indices.end(), i);
}

SupportSet d_closure(const SupportSet& s, int d) {
  if (d < 0) throw std::invalid_argument("d_closure: d must be nonnegative");
  std::vector<int> out;
  // Merge the clamped windows in one sweep; input is sorted.
  int pending_lo = 0, pending_hi = -1;
  for (int i : s.indices) {
    const int lo = std::max(i - d, 1);
    const int hi = std::min(i + d, s.ambient_n);
    if (pending_hi >= pending_lo && lo <= pending_hi + 1) {
      pending_hi = std::max(pending_hi, hi);
    } else {
      for (int v = pending_lo; v <= pending_hi; ++v) out.push_back(v);
      pending_lo = lo;
      pending_hi = hi;
    }
  }
  for (int v = pending_lo; v <= pending_hi; ++v) out.push_back(v);
  return SupportSet{std::move(out), s.ambient_n};
}

int tolerant_hits(const SupportSet& true_support, const SupportSet& recovered, int d) {
  const SupportSet cl = d_closure(recovered, d);
  int hits = 0;
  for (int i : true_support.indices)
    if (cl.contains(i)) ++hits;
  return hits;
}

double rho_d(const SupportSet& true_support, const SupportSet& recovered, int d) {
  if (true_support.size() == 0)
    throw std::invalid_argument("rho_d: true support must be nonempty");
  return static_cast<double>(tolerant_hits(true_support, recovered, d)) /
         static_cast<double>(true_support.size());
}

int s_max(int n, int d) {
  if (n < 1 || d < 0) throw std::invalid_argument("s_max: need n >= 1, d >= 0");
  return (n - 1) / (2 * d + 1) + 1;
}

bool is_d_spread(const SupportSet& s, int d) {
  for (std::size_t t = 1; t < s.indices.size(); ++t)
    if (s.indices[t] - s.indices[t - 1] <= d) return false;
  return true;
}

bool is_d_approximate_pair(const SupportSet& a, const SupportSet& b, int d, int s) {
  const SupportSet ca = d_closure(a, d);
  const SupportSet cb = d_closure(b, d);
  for (int i : a.indices)
    if (!cb.contains(i)) return false;
  for (int i : b.indices)
    if (!ca.contains(i)) return false;
  return std::max(a.size(), b.size()) >= s;
}

Eigen::VectorXd proxy_signal(const Eigen::VectorXcd& reference_support_of,
                             const Eigen::VectorXcd& magnitudes_from, int d) {
  const int n = static_cast<int>(reference_support_of.size());
  if (magnitudes_from.size() != n)
    throw std::invalid_argument("proxy_signal: length mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (reference_support_of[i] == std::complex<double>(0.0, 0.0)) continue;
    const int lo = std::max(i - d, 0);
    const int hi = std::min(i + d, n - 1);
    double acc = 0.0;
    for (int j = lo; j <= hi; ++j) acc += std::abs(magnitudes_from[j]);
    out[i] = acc;
  }
  return out;
}

double rho_2(const Eigen::VectorXcd& true_signal, const Eigen::VectorXcd& recovered, int d) {
  if (true_signal.size() != recovered.size())
    throw std::invalid_argument("rho_2: length mismatch");
  if (d < 0) throw std::invalid_argument("rho_2: d must be nonnegative");
  const Eigen::VectorXd xp = proxy_signal(true_signal, true_signal, d);
  const Eigen::VectorXd xr = proxy_signal(true_signal, recovered, d);
  const double np = xp.norm();
  const double nr = xr.norm();
  if (np == 0.0) throw std::invalid_argument("rho_2: true signal is zero");
  if (nr == 0.0) throw std::runtime_error("rho_2: recovered proxy is zero; measure undefined");
  return 1.0 - (xr - xp).norm() / (nr * np);
}

}  // namespace dtcs
