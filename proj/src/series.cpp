#include "ladderboson/series.hpp"

#include <algorithm>
#include <cmath>

#include "ladderboson/oracle.hpp"

namespace ladder {

double SubspaceState::norm() const {
  double acc = 0.0;
  for (const auto& a : psi) acc += std::norm(a);
  return std::sqrt(acc);
}

long truncation_depth(const BetaSequence& beta, double tau, double eps) {
  if (eps <= 0.0) throw DomainError("eps must be > 0");
  if (tau == 0.0) return 0;
  const double s = to_double(beta.sum());
  const double estimate = std::abs(tau) * std::sqrt(s / eps);
  // saturate with headroom so callers may still double the result
  if (estimate >= 2e18) return 2000000000000000000L;
  return static_cast<long>(std::ceil(estimate));
}

namespace {

constexpr std::complex<double> kPhase[4] = {
    {1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};  // (-i)^n

// log(prod_{l<n} beta_l) accumulated once; entry n covers amplitude n.
std::vector<double> log_beta_products(const BetaSequence& beta) {
  std::vector<double> out(beta.subspace.dimension(), 0.0);
  for (int n = 1; n <= beta.steps(); ++n)
    out[n] = out[n - 1] + std::log(to_double(beta.at(n - 1)));
  return out;
}

struct AmplitudeSum {
  double value = 0.0;
  long terms = 0;
  double tail = 0.0;
  bool converged = true;
};

// Compensated accumulation of the alternating series for one amplitude.
// Returns converged = false when the table would have to grow past the cap.
AmplitudeSum sum_amplitude(GTable& table, int n, double tau,
                           const EngineOptions& opt) {
  AmplitudeSum out;
  const double abs_tau = std::abs(tau);
  const double sign =
      (tau < 0.0 && (n % 2 == 1)) ? -1.0 : 1.0;  // tau^n carries the sign

  double term = std::exp(n * std::log(abs_tau) - std::lgamma(n + 1.0));
  if (n == 0) term = 1.0;
  if (term == 0.0 || !std::isfinite(term)) {
    out.value = 0.0;  // leading term underflows; so does the amplitude
    return out;
  }

  double sum = term, comp = 0.0;
  const double scale_floor = term;
  long l = 0;
  const long forced = opt.forced_depth;
  while (true) {
    if (l + 1 > table.depth()) {
      if (forced >= 0 && l >= forced) break;
      const int want = static_cast<int>(
          std::min<long>(opt.max_terms,
                         std::max<long>(table.depth() + table.depth() / 4,
                                        table.depth() + 8)));
      if (want <= table.depth()) {
        out.converged = false;
        out.tail = std::abs(term);
        break;
      }
      table.extend(want);
    }
    const Int& g_next = table.g(static_cast<int>(l + 1), n);
    if (g_next == 0) {
      out.tail = 0.0;  // all deeper coefficients vanish
      break;
    }
    const double ratio = ratio_as_double(g_next, table.g(static_cast<int>(l), n));
    const double denom = (n + 2.0 * l + 1.0) * (n + 2.0 * l + 2.0);
    term *= -(tau * tau) * ratio / denom;
    const double mag = std::abs(term);
    if (forced >= 0) {
      if (l + 1 > forced || mag == 0.0) {
        out.tail = mag;
        break;
      }
    } else if (mag <= opt.eps * std::max(std::abs(sum), scale_floor)) {
      out.tail = mag;  // first omitted term
      break;
    }
    // Kahan update
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    ++l;
    if (forced < 0 && l >= opt.max_terms) {
      out.converged = false;
      out.tail = mag;
      break;
    }
  }
  out.value = sign * sum;
  out.terms = l + 1;
  return out;
}

SubspaceState propagator_state(const BetaSequence& beta, double tau) {
  SubspaceState state;
  state.tau = tau;
  state.method = EvalMethod::propagator_fallback;
  state.psi = propagator_psi(beta, tau);
  state.gamma = psi_to_gamma(state.psi, beta);
  state.terms_used.assign(beta.subspace.dimension(), 0);
  state.tail_estimate = 0.0;
  return state;
}

}  // namespace

SubspaceState evaluate_gamma(GTable& table, double tau, const EngineOptions& options) {
  if (options.eps <= 0.0) throw DomainError("eps must be > 0");
  const BetaSequence& beta = table.beta;
  const int N = beta.steps();

  const double cancellation = std::abs(tau) * std::sqrt(to_double(beta.sum()));
  if (!options.force_series && options.forced_depth < 0 &&
      cancellation > options.theta)
    return propagator_state(beta, tau);

  // Initial depth: the ratio-test estimate, clipped to the scale where the
  // factorial decay has certainly taken over.  The tail check extends past
  // it on demand.
  const long estimate = truncation_depth(beta, tau, options.eps / 10.0);
  const long practical = 48 + 2 * static_cast<long>(std::ceil(cancellation));
  table.extend(static_cast<int>(
      std::min(std::min(estimate, practical), options.max_terms)));

  SubspaceState state;
  state.tau = tau;
  state.method = EvalMethod::series;
  state.gamma.resize(N + 1);
  state.terms_used.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    AmplitudeSum r = sum_amplitude(table, n, tau, options);
    if (!r.converged)
      throw NumericalFailure("series did not converge within the term cap", r.tail);
    state.gamma[n] = r.value;
    state.terms_used[n] = r.terms;
    state.tail_estimate = std::max(state.tail_estimate, r.tail);
  }
  state.psi = gamma_to_psi(state.gamma, beta);
  return state;
}

std::vector<std::complex<double>> gamma_to_psi(const std::vector<double>& gamma,
                                               const BetaSequence& beta) {
  if (static_cast<int>(gamma.size()) != beta.subspace.dimension())
    throw DomainError("gamma length does not match the subspace dimension");
  const std::vector<double> log_prod = log_beta_products(beta);
  std::vector<std::complex<double>> psi(gamma.size());
  for (std::size_t n = 0; n < gamma.size(); ++n) {
    if (gamma[n] == 0.0) {
      psi[n] = 0.0;
      continue;
    }
    const double mag = std::exp(std::log(std::abs(gamma[n])) + 0.5 * log_prod[n]);
    psi[n] = kPhase[n % 4] * (gamma[n] < 0.0 ? -mag : mag);
  }
  return psi;
}

std::vector<double> psi_to_gamma(const std::vector<std::complex<double>>& psi,
                                 const BetaSequence& beta) {
  if (static_cast<int>(psi.size()) != beta.subspace.dimension())
    throw DomainError("psi length does not match the subspace dimension");
  const std::vector<double> log_prod = log_beta_products(beta);
  std::vector<double> gamma(psi.size());
  for (std::size_t n = 0; n < psi.size(); ++n) {
    // i^n psi_n is real by the phase convention
    const double re = (psi[n] * std::conj(kPhase[n % 4])).real();
    if (re == 0.0) {
      gamma[n] = 0.0;
      continue;
    }
    const double mag = std::exp(std::log(std::abs(re)) - 0.5 * log_prod[n]);
    gamma[n] = re < 0.0 ? -mag : mag;
  }
  return gamma;
}

std::vector<Int> ladder_power_coefficients(const BetaSequence& beta, int power) {
  if (power < 0) throw DomainError("operator power must be >= 0");
  // Coefficient l is the nested beta sum with first upper limit power - 2l,
  // which is entry power - 2l of the depth-l table row built from the beta
  // sequence zero-extended past the top rung.
  const int width = std::max(power, beta.steps()) + 2;
  std::vector<Int> ext(width, Int(0));
  for (int n = 0; n <= beta.steps(); ++n) ext[n] = beta.at(n);

  std::vector<Int> out;
  std::vector<Int> row(width, Int(1));
  out.push_back(1);
  for (int l = 1; 2 * l <= power; ++l) {
    std::vector<Int> next(width);
    next[0] = ext[0] * row[1];
    for (int n = 1; n < width - 1; ++n) next[n] = next[n - 1] + ext[n] * row[n + 1];
    next[width - 1] = next[width - 2];  // ext[width - 1] = 0 by construction
    row = std::move(next);
    out.push_back(row[power - 2 * l]);
  }
  return out;
}

}  // namespace ladder
