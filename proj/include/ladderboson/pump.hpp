#pragma once

#include <vector>

#include "ladderboson/series.hpp"

namespace ladder {

/// Poisson-truncated coherent-pump expansion: the pump Fock components kept
/// and their weights P_M = e^{-alpha^2} alpha^{2M} / M!.
struct PumpEnsemble {
  double alpha = 0.0;
  double weight_eps = 0.0;
  struct Component {
    int pump_photons;  // M
    double weight;
  };
  std::vector<Component> retained;  // ascending in M
  double retained_mass = 0.0;
};

/// Smallest contiguous Fock window around the Poisson mode with cumulative
/// mass >= 1 - weight_eps.
PumpEnsemble truncate_pump(double alpha, double weight_eps);

struct EnsembleOptions {
  double eps = 1e-12;
  double theta = 8.0;
  bool parallel = true;
  int max_dimension = 2001;  // largest subspace dimension evaluated
};

/// Weighted observables of the evolved pump + vacuum-signal state.  Each
/// retained component lives in the (M, ell = 0) subspace and is evolved
/// independently; the reduction is ordered, so output does not depend on
/// scheduling.
struct ObservableReport {
  double tau = 0.0;
  double retained_mass = 0.0;
  double total_norm = 0.0;               // sum of weight * subspace norm^2
  double pump_mean = 0.0;                // weighted <pump photons>
  std::vector<double> signal_mean;       // weighted <signal photons>, per mode
  struct SubspaceResult {
    SubspaceIndex subspace;
    double weight;
    SubspaceState state;
  };
  std::vector<SubspaceResult> per_subspace;
};

ObservableReport evolve_ensemble(const PumpEnsemble& ensemble, const ModelSpec& model,
                                 double tau, const EnsembleOptions& options = {});

/// Serial reference for the parallel evaluation above; identical output.
ObservableReport evolve_ensemble_serial(const PumpEnsemble& ensemble,
                                        const ModelSpec& model, double tau,
                                        const EnsembleOptions& options = {});

/// Squared overlap of the exact evolved state with the semiclassical
/// squeezed-pump state, |sum_M P_M sum_n conj(psi~_n) psi_n|^2.  Only defined
/// for the two-photon conversion model (m = 1, single signal mode, k = 2).
double fidelity_vs_parametric(const PumpEnsemble& ensemble, const ModelSpec& model,
                              double tau, const EnsembleOptions& options = {});

}  // namespace ladder
