// Timing comparison: parallel coherence kernels vs the serial reference.
// Also cross-checks that both paths agree bit for bit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "dtcs/coherence.hpp"
#include "dtcs/matrices.hpp"

using namespace dtcs;
using clock_type = std::chrono::steady_clock;

namespace {

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0)
      .count();
}

}  // namespace

int main() {
  MatrixSpec spec;
  spec.kind = MatrixKind::FConsecBegin;
  spec.n_rows = 64;
  spec.n_cols = 512;
  const SensingMatrix mat = build(spec);
  const int n = mat.n();

  // Gram of column correlations.
  auto t0 = clock_type::now();
  const Eigen::MatrixXd gram_serial = serial::correlation_gram(mat.entries);
  const double gram_serial_ms = ms_since(t0);

  t0 = clock_type::now();
  const CorrelationTable table(mat.entries);
  const double gram_parallel_ms = ms_since(t0);

  double gram_diff = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      gram_diff = std::max(gram_diff,
                           std::abs(gram_serial(i, j) - table.gram()(i, j)));

  // Separation envelope.
  t0 = clock_type::now();
  const std::vector<double> env_serial = serial::separation_envelope(gram_serial);
  const double env_serial_ms = ms_since(t0);

  t0 = clock_type::now();
  std::vector<double> env_parallel(n / 2 + 1);
  for (int d = 0; d <= n / 2; ++d) env_parallel[d] = table.d_coherence(d);
  const double env_parallel_ms = ms_since(t0);

  double env_diff = 0.0;
  for (int d = 0; d <= n / 2; ++d)
    env_diff = std::max(env_diff, std::abs(env_serial[d] - env_parallel[d]));

  // Cumulative coherence queries across a sweep of (d, k).
  const std::vector<int> ds = {0, 4, 8, 16, 32};
  const std::vector<int> ks = {1, 2, 4, 8};

  t0 = clock_type::now();
  double serial_sum = 0.0;
  for (int d : ds)
    for (int k : ks) serial_sum += serial::cumulative_d_coherence(mat.entries, d, k);
  const double cum_serial_ms = ms_since(t0);

  t0 = clock_type::now();
  double parallel_sum = 0.0;
  for (int d : ds)
    for (int k : ks) parallel_sum += table.cumulative_d_coherence(d, k);
  const double cum_parallel_ms = ms_since(t0);

  std::printf("kernel benchmark on %dx%d\n", mat.m(), n);
  std::printf("  %-28s serial %8.2f ms   parallel %8.2f ms   max diff %.3g\n",
              "correlation gram", gram_serial_ms, gram_parallel_ms, gram_diff);
  std::printf("  %-28s serial %8.2f ms   parallel %8.2f ms   max diff %.3g\n",
              "separation envelope", env_serial_ms, env_parallel_ms, env_diff);
  std::printf("  %-28s serial %8.2f ms   parallel %8.2f ms   |sum diff| %.3g\n",
              "cumulative coherence sweep", cum_serial_ms, cum_parallel_ms,
              std::abs(serial_sum - parallel_sum));

  const bool ok = gram_diff == 0.0 && env_diff == 0.0 &&
                  std::abs(serial_sum - parallel_sum) == 0.0;
  std::printf("agreement: %s\n", ok ? "exact" : "MISMATCH");
  return ok ? 0 : 1;
}
