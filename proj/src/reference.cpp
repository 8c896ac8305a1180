#include "ladderboson/reference.hpp"

#include <cmath>

#include "ladderboson/series.hpp"

namespace ladder {

namespace {
constexpr std::complex<double> kMinusIPower[4] = {
    {1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};  // (-i)^n
}

SqueezeParams SqueezeParams::from_time(double alpha, double tau) {
  if (alpha <= 0.0) throw DomainError("pump amplitude alpha must be > 0");
  if (tau < 0.0) throw DomainError("tau must be >= 0");
  return {alpha, 2.0 * alpha * tau, tau};
}

SqueezeParams SqueezeParams::from_squeezing(double alpha, double r) {
  if (alpha <= 0.0) throw DomainError("pump amplitude alpha must be > 0");
  if (r < 0.0) throw DomainError("squeezing parameter r must be >= 0");
  return {alpha, r, r / (2.0 * alpha)};
}

double beamsplitter_gamma(int N, int n, double tau) {
  if (n < 0 || n > N) throw DomainError("amplitude index out of range");
  return std::pow(std::cos(tau), N - n) * std::pow(std::sin(tau), n) /
         std::exp(std::lgamma(n + 1.0));
}

std::vector<std::complex<double>> squeezed_state_amplitudes(double r, int n_max) {
  if (n_max < 0) throw DomainError("n_max must be >= 0");
  if (r < 0.0) throw DomainError("squeezing parameter r must be >= 0");
  std::vector<std::complex<double>> out(n_max + 1);
  const double log_sech = -std::log(std::cosh(r));
  const double t = std::tanh(r);
  out[0] = std::sqrt(std::exp(log_sech));
  for (int n = 1; n <= n_max; ++n) {
    if (t == 0.0) {
      out[n] = 0.0;
      continue;
    }
    const double log_binom = log_int(binomial_int(2 * n, n));
    const double mag =
        std::exp(0.5 * (log_sech + log_binom) + n * std::log(t / 2.0));
    out[n] = kMinusIPower[n % 4] * mag;
  }
  return out;
}

double parametric_gamma(int n, double r, double alpha) {
  if (alpha <= 0.0) throw DomainError("pump amplitude alpha must be > 0");
  if (n < 0) throw DomainError("amplitude index must be >= 0");
  if (r < 0.0) throw DomainError("squeezing parameter r must be >= 0");
  const double root_sech = std::sqrt(1.0 / std::cosh(r));
  if (n == 0) return root_sech;
  const double t = std::tanh(r);
  if (t == 0.0) return 0.0;
  return root_sech *
         std::exp(n * std::log(t / (2.0 * alpha)) - std::lgamma(n + 1.0));
}

std::complex<double> parametric_psi(int N, int n, double r, double alpha) {
  if (alpha <= 0.0) throw DomainError("pump amplitude alpha must be > 0");
  if (n < 0 || n > N) throw DomainError("amplitude index out of range");
  if (r < 0.0) throw DomainError("squeezing parameter r must be >= 0");
  const double log_sech = -std::log(std::cosh(r));
  if (n == 0) return std::sqrt(std::exp(log_sech));
  const double t = std::tanh(r);
  if (t == 0.0) return 0.0;
  // (N)_n C(2n,n) in exact integers, converted once
  const double log_comb = log_int(falling_factorial(N, n) * binomial_int(2 * n, n));
  const double mag =
      std::exp(0.5 * (log_comb + log_sech) + n * std::log(t / (2.0 * alpha)));
  return kMinusIPower[n % 4] * mag;
}

namespace {

ParametricErrorTable error_table(int N, double tau, double r, double alpha,
                                 double eps) {
  ModelSpec model{1, {2}};
  GTable table = build_gtable(beta_sequence(model, make_subspace(model, N, {0})), 0);
  const SubspaceState state = evaluate_gamma(table, tau);
  ParametricErrorTable out;
  out.subspace_size = N;
  out.first_exceed_n = -1;
  for (int n = 0; n <= N; ++n) {
    const double exact = state.gamma[n];
    if (exact == 0.0) break;  // amplitudes below double range from here on
    const double approx = parametric_gamma(n, r, alpha);
    ParametricErrorRow row;
    row.n = n;
    row.gamma_exact = exact;
    row.gamma_param = approx;
    row.rel_err = std::abs(approx - exact) / std::abs(exact);
    if (out.first_exceed_n < 0 && row.rel_err > eps) out.first_exceed_n = n;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace

ParametricErrorReport parametric_error_report(double alpha, double r, double eps,
                                              bool include_neighbors,
                                              int max_dimension) {
  if (alpha < 2.0) throw DomainError("alpha must be >= 2");
  if (r <= 0.0) throw DomainError("squeezing parameter r must be > 0");
  if (eps <= 0.0) throw DomainError("eps must be > 0");

  const int center = static_cast<int>(std::lround(alpha * alpha));
  const int half = static_cast<int>(std::ceil(alpha));
  const int largest = include_neighbors ? center + half : center;
  if (largest + 1 > max_dimension)
    throw ResourceError(
        "subspace dimension exceeds the cap; lower alpha or raise the cap");

  const double tau = SqueezeParams::from_squeezing(alpha, r).tau;
  ParametricErrorReport report;
  report.alpha = alpha;
  report.r = r;
  report.eps = eps;
  report.predicted_crossing = eps * alpha / (r * r);
  report.main = error_table(center, tau, r, alpha, eps);
  if (include_neighbors) {
    for (int N : {center - half, center + half})
      if (N >= 1) report.neighbors.push_back(error_table(N, tau, r, alpha, eps));
  }
  return report;
}

}  // namespace ladder
