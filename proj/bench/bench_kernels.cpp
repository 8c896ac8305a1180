// Timings of the OpenMP kernels against their serial references: the
// coefficient-table row products and the per-subspace ensemble evaluation.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ladderboson/gtable.hpp"
#include "ladderboson/pump.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void bench_gtable(int M, int depth) {
  const ladder::ModelSpec model{1, {2}};
  const ladder::BetaSequence beta =
      ladder::beta_sequence(model, ladder::make_subspace(model, M, {0}));

  auto t0 = Clock::now();
  const ladder::GTable serial = ladder::build_gtable(beta, depth, false);
  const double t_serial = seconds_since(t0);

  t0 = Clock::now();
  const ladder::GTable parallel = ladder::build_gtable(beta, depth, true);
  const double t_parallel = seconds_since(t0);

  const bool same = serial.rows == parallel.rows;
  std::printf("gtable  M=%-5d depth=%-3d serial %8.3f ms  parallel %8.3f ms  "
              "speedup %5.2fx  identical=%s\n",
              M, depth, 1e3 * t_serial, 1e3 * t_parallel, t_serial / t_parallel,
              same ? "yes" : "NO");
}

void bench_ensemble(double alpha, double tau) {
  const ladder::ModelSpec model{1, {2}};
  const ladder::PumpEnsemble ensemble = ladder::truncate_pump(alpha, 1e-10);
  ladder::EnsembleOptions options;

  auto t0 = Clock::now();
  const auto serial = ladder::evolve_ensemble_serial(ensemble, model, tau, options);
  const double t_serial = seconds_since(t0);

  t0 = Clock::now();
  const auto parallel = ladder::evolve_ensemble(ensemble, model, tau, options);
  const double t_parallel = seconds_since(t0);

  const bool same = serial.total_norm == parallel.total_norm &&
                    serial.pump_mean == parallel.pump_mean &&
                    serial.signal_mean == parallel.signal_mean;
  std::printf("ensemble alpha=%-4.1f tau=%-6.3f subspaces=%-4zu serial %8.3f ms  "
              "parallel %8.3f ms  speedup %5.2fx  identical=%s\n",
              alpha, tau, ensemble.retained.size(), 1e3 * t_serial,
              1e3 * t_parallel, t_serial / t_parallel, same ? "yes" : "NO");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; parallel paths run serially\n");
#endif
  bench_gtable(200, 40);
  bench_gtable(1000, 40);
  bench_ensemble(6.0, 0.02);
  bench_ensemble(10.0, 0.01);
  return 0;
}
