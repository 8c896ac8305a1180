#pragma once

#include <complex>
#include <vector>

#include "ladderboson/gtable.hpp"

namespace ladder {

enum class EvalMethod { series, propagator_fallback };

/// Evolved amplitudes of one subspace at time tau: the real coefficients
/// gamma_n and the normalized amplitudes psi_n = (-i)^n gamma_n
/// sqrt(prod_{l<n} beta_l), plus convergence metadata.
struct SubspaceState {
  std::vector<double> gamma;
  std::vector<std::complex<double>> psi;
  double tau = 0.0;
  std::vector<long> terms_used;  // retained series terms per amplitude
  double tail_estimate = 0.0;    // largest first-omitted term magnitude
  EvalMethod method = EvalMethod::series;

  double norm() const;
};

struct EngineOptions {
  double eps = 1e-12;   // per-amplitude truncation target
  double theta = 8.0;   // cancellation guard on tau * sqrt(sum beta)
  long max_terms = 1000000;
  bool force_series = false;  // bypass the cancellation guard (tests)
  long forced_depth = -1;     // sum exactly this many terms when >= 0
};

/// Ratio-test estimate of the series depth needed for accuracy eps; the
/// worst case over the amplitudes is the n = 0 one,
///   depth(eps) ~ (tau / sqrt(eps)) * sqrt(sum_s beta_s).
/// A deliberate overestimate: the runtime tail check stops far earlier.
long truncation_depth(const BetaSequence& beta, double tau, double eps);

/// Evaluates every gamma_n(tau) from the coefficient table, extending it in
/// place if the runtime tail check demands more depth.  Each term is produced
/// from its predecessor through one exactly-rounded integer-ratio update
///   T_{l+1} = T_l * (-tau^2) * (g^(l+1)_n / g^(l)_n) / ((n+2l+1)(n+2l+2)),
/// and the terms are accumulated with compensated summation.
///
/// Alternating-series cancellation costs roughly tau * sqrt(sum beta) digits,
/// so past options.theta the engine evaluates exp(-i tau H) e_0 spectrally
/// instead and reports method = propagator_fallback.
SubspaceState evaluate_gamma(GTable& table, double tau,
                             const EngineOptions& options = {});

/// psi_n = (-i)^n gamma_n sqrt(prod_{l<n} beta_l), carried out in log space
/// so that large subspaces neither overflow the product nor turn underflowed
/// gammas into NaNs.
std::vector<std::complex<double>> gamma_to_psi(const std::vector<double>& gamma,
                                               const BetaSequence& beta);

/// Inverse map used by the propagator path: gamma_n = Re(i^n psi_n) /
/// sqrt(prod beta).
std::vector<double> psi_to_gamma(const std::vector<std::complex<double>>& psi,
                                 const BetaSequence& beta);

/// Coefficients of (A + A^dag)^power applied to the bottom rung: entry l is
/// the exact nested beta sum multiplying (A^dag)^{power-2l}, for
/// 0 <= l <= power/2.  Coefficients whose operator power exceeds the ladder
/// are still reported (their state component vanishes).
std::vector<Int> ladder_power_coefficients(const BetaSequence& beta, int power);

}  // namespace ladder
