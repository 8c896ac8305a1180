#include "ladderboson/pump.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ladderboson/reference.hpp"

namespace ladder {

namespace {

// log P_M, kept in log space until the window is known: at alpha^2 >> 1 the
// individual weights underflow long before they stop mattering relatively.
double log_poisson(double alpha, int M) {
  const double lambda = alpha * alpha;
  return -lambda + 2.0 * M * std::log(alpha) - std::lgamma(M + 1.0);
}

}  // namespace

PumpEnsemble truncate_pump(double alpha, double weight_eps) {
  if (alpha <= 0.0) throw DomainError("pump amplitude alpha must be > 0");
  if (weight_eps <= 0.0 || weight_eps >= 1.0)
    throw DomainError("weight_eps must lie strictly between 0 and 1");

  const int mode = static_cast<int>(std::floor(alpha * alpha));
  int lo = mode, hi = mode;
  double mass = std::exp(log_poisson(alpha, mode));
  while (mass < 1.0 - weight_eps) {
    const double below = lo > 0 ? std::exp(log_poisson(alpha, lo - 1)) : -1.0;
    const double above = std::exp(log_poisson(alpha, hi + 1));
    if (above >= below) {
      ++hi;
      mass += above;
    } else {
      --lo;
      mass += below;
    }
  }

  PumpEnsemble ensemble;
  ensemble.alpha = alpha;
  ensemble.weight_eps = weight_eps;
  ensemble.retained_mass = mass;
  ensemble.retained.reserve(hi - lo + 1);
  for (int M = lo; M <= hi; ++M)
    ensemble.retained.push_back({M, std::exp(log_poisson(alpha, M))});
  return ensemble;
}

namespace {

ObservableReport assemble(const PumpEnsemble& ensemble, const ModelSpec& model,
                          double tau, const EnsembleOptions& options,
                          bool parallel) {
  model.validate();
  if (options.eps <= 0.0) throw DomainError("eps must be > 0");
  const int S = model.mode_count();
  const int count = static_cast<int>(ensemble.retained.size());

  for (const auto& component : ensemble.retained) {
    const int dim = component.pump_photons / model.pump_power + 1;
    if (dim > options.max_dimension)
      throw ResourceError("retained subspace dimension " + std::to_string(dim) +
                          " exceeds the cap " + std::to_string(options.max_dimension));
  }

  ObservableReport report;
  report.tau = tau;
  report.retained_mass = ensemble.retained_mass;
  report.signal_mean.assign(S, 0.0);
  report.per_subspace.resize(count);

  EngineOptions engine;
  engine.eps = options.eps;
  engine.theta = options.theta;

  bool failed = false;
  std::string failure;
  double failure_tail = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (int i = 0; i < count; ++i) {
    try {
      const auto& component = ensemble.retained[i];
      SubspaceIndex subspace =
          make_subspace(model, component.pump_photons, std::vector<int>(S, 0));
      GTable table = build_gtable(beta_sequence(model, subspace), 0);
      ObservableReport::SubspaceResult result;
      result.subspace = subspace;
      result.weight = component.weight;
      result.state = evaluate_gamma(table, tau, engine);
      report.per_subspace[i] = std::move(result);
    } catch (const NumericalFailure& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
      {
        failed = true;
        failure = e.what();
        failure_tail = e.tail_estimate;
      }
    } catch (const std::exception& e) {  // must not escape the parallel region
#ifdef _OPENMP
#pragma omp critical
#endif
      {
        failed = true;
        failure = e.what();
      }
    }
  }
  if (failed) throw NumericalFailure(failure, failure_tail);

  // ordered reduction, independent of evaluation scheduling
  for (const auto& result : report.per_subspace) {
    const int m = model.pump_power;
    const int M = result.subspace.pump_photons;
    double norm_sq = 0.0, pump = 0.0;
    std::vector<double> signal(S, 0.0);
    for (int n = 0; n <= result.subspace.ladder_steps; ++n) {
      const double p = std::norm(result.state.psi[n]);
      norm_sq += p;
      pump += p * (M - m * n);
      for (int s = 0; s < S; ++s)
        signal[s] += p * (model.signal_powers[s] * n + result.subspace.signal_offsets[s]);
    }
    report.total_norm += result.weight * norm_sq;
    report.pump_mean += result.weight * pump;
    for (int s = 0; s < S; ++s) report.signal_mean[s] += result.weight * signal[s];
  }
  return report;
}

}  // namespace

ObservableReport evolve_ensemble(const PumpEnsemble& ensemble, const ModelSpec& model,
                                 double tau, const EnsembleOptions& options) {
  return assemble(ensemble, model, tau, options, options.parallel);
}

ObservableReport evolve_ensemble_serial(const PumpEnsemble& ensemble,
                                        const ModelSpec& model, double tau,
                                        const EnsembleOptions& options) {
  return assemble(ensemble, model, tau, options, false);
}

double fidelity_vs_parametric(const PumpEnsemble& ensemble, const ModelSpec& model,
                              double tau, const EnsembleOptions& options) {
  if (model.pump_power != 1 || model.signal_powers != std::vector<int>{2})
    throw DomainError("fidelity requires the two-photon conversion model (m=1, k=2)");
  const double r = SqueezeParams::from_time(ensemble.alpha, tau).r;
  const ObservableReport report = evolve_ensemble(ensemble, model, tau, options);
  std::complex<double> overlap(0.0, 0.0);
  for (const auto& result : report.per_subspace) {
    const int N = result.subspace.ladder_steps;
    std::complex<double> inner(0.0, 0.0);
    for (int n = 0; n <= N; ++n)
      inner += std::conj(parametric_psi(N, n, r, ensemble.alpha)) * result.state.psi[n];
    overlap += result.weight * inner;
  }
  return std::norm(overlap);
}

}  // namespace ladder
