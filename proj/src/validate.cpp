#include "ladderboson/validate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <sstream>

#include "ladderboson/oracle.hpp"
#include "ladderboson/pump.hpp"
#include "ladderboson/reference.hpp"
#include "ladderboson/series.hpp"

namespace ladder {

namespace {

// (k, m) pairs of the model family exercised by the oracle suites.
const std::vector<std::pair<int, int>> kModelGrid = {{1, 1}, {2, 1}, {3, 1}, {2, 2}};

std::vector<ModelSpec> grid_models() {
  std::vector<ModelSpec> out;
  for (auto [k, m] : kModelGrid) out.push_back(ModelSpec{m, {k}});
  return out;
}

double max_abs_diff(const std::vector<std::complex<double>>& a,
                    const std::vector<std::complex<double>>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// ---------------------------------------------------------------------------
// 1. beam-splitter identity: n! gamma_n = cos^{N-n} tau sin^n tau
CriterionResult check_beamsplitter(double tol) {
  CriterionResult res;
  res.name = "beamsplitter";
  res.threshold = std::isnan(tol) ? 1e-10 : tol;
  const ModelSpec model{1, {1}};
  double worst = 0.0;
  for (int N = 1; N <= 20; ++N) {
    GTable table = build_gtable(beta_sequence(model, make_subspace(model, N, {0})), 0);
    for (int j = 1; j <= 15; ++j) {
      const double tau = 0.1 * j;
      const SubspaceState state = evaluate_gamma(table, tau);
      for (int n = 0; n <= N; ++n) {
        const double lhs = to_double(factorial_int(n)) * state.gamma[n];
        const double rhs = std::pow(std::cos(tau), N - n) * std::pow(std::sin(tau), n);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
  }
  res.measured = worst;
  res.passed = worst <= res.threshold;
  std::ostringstream os;
  os << "max |n! gamma_n - cos^{N-n} sin^n| = " << worst << " over N<=20, tau<=1.5";
  res.detail = os.str();
  return res;
}

// ---------------------------------------------------------------------------
// 2. three-oracle equivalence: engine vs spectral propagator vs RK4
CriterionResult check_three_oracle(double tol) {
  CriterionResult res;
  res.name = "three-oracle";
  const double tol_prop = std::isnan(tol) ? 1e-8 : tol;
  const double tol_ode = std::isnan(tol) ? 1e-6 : tol;
  res.threshold = tol_prop;

  std::vector<double> taus;
  for (int j = 1; j <= 10; ++j) taus.push_back(0.1 * j);

  double worst_prop = 0.0, worst_ode = 0.0;
  for (const ModelSpec& model : grid_models()) {
    for (int ell = 0; ell < model.signal_powers[0]; ++ell) {
      for (int M = 0; M <= 20; ++M) {
        const BetaSequence beta =
            beta_sequence(model, make_subspace(model, M, {ell}));
        Propagator propagator(TridiagonalHamiltonian::from_beta(beta));
        const auto ode_grid = integrate_gamma_ode_grid(beta, taus, 1e-4);
        GTable table = build_gtable(beta, 0);
        for (std::size_t t = 0; t < taus.size(); ++t) {
          const SubspaceState state = evaluate_gamma(table, taus[t]);
          worst_prop =
              std::max(worst_prop, max_abs_diff(state.psi, propagator.psi(taus[t])));
          worst_ode = std::max(
              worst_ode, max_abs_diff(state.psi, gamma_to_psi(ode_grid[t], beta)));
        }
      }
    }
  }
  res.measured = std::max(worst_prop, worst_ode * tol_prop / tol_ode);
  res.passed = worst_prop <= tol_prop && worst_ode <= tol_ode;
  std::ostringstream os;
  os << "max |psi_engine - psi_propagator| = " << worst_prop << " (tol " << tol_prop
     << "), max |psi_engine - psi_rk4(h=1e-4)| = " << worst_ode << " (tol "
     << tol_ode << ")";
  res.detail = os.str();
  return res;
}

// ---------------------------------------------------------------------------
// 3. operator-power coefficients vs exact integer matrix powers
CriterionResult check_operator_powers(double tol) {
  CriterionResult res;
  res.name = "operator-powers";
  res.threshold = std::isnan(tol) ? 0.0 : tol;
  long mismatches = 0, checked = 0;
  for (const ModelSpec& model : grid_models()) {
    const int m = model.pump_power;
    for (int ell = 0; ell < model.signal_powers[0]; ++ell) {
      for (int M = 0; M <= 8 * m + (m - 1); ++M) {
        const BetaSequence beta =
            beta_sequence(model, make_subspace(model, M, {ell}));
        const int N = beta.steps();
        for (int power = 0; power <= 12; ++power) {
          const std::vector<Int> coeffs = ladder_power_coefficients(beta, power);
          // (A + A^dag)^power e_0 in the unnormalized rung basis, where the
          // matrix is exactly integer: raising is 1, lowering is beta_{n-1}.
          std::vector<Int> v(N + 1, Int(0));
          v[0] = 1;
          for (int p = 0; p < power; ++p) {
            std::vector<Int> w(N + 1, Int(0));
            for (int n = 0; n <= N; ++n) {
              if (v[n] == 0) continue;
              if (n + 1 <= N && beta.at(n) != 0) w[n + 1] += v[n];
              if (n >= 1) w[n - 1] += beta.at(n - 1) * v[n];
            }
            v.swap(w);
          }
          for (int l = 0; 2 * l <= power; ++l) {
            const int n = power - 2 * l;
            if (n > N) continue;  // component annihilated by the ladder top
            ++checked;
            if (v[n] != coeffs[l]) ++mismatches;
          }
        }
      }
    }
  }
  res.measured = static_cast<double>(mismatches);
  res.passed = mismatches == 0 && res.measured <= res.threshold;
  std::ostringstream os;
  os << mismatches << " mismatches in " << checked
     << " exact coefficient comparisons (power<=12, N<=8)";
  res.detail = os.str();
  return res;
}

// ---------------------------------------------------------------------------
// 4. structural identities of the coefficient tables and the Hessenberg form
GTable gtable_by_nested_sums(const BetaSequence& beta, int depth) {
  // literal form g^(l)_n = sum_{s<=n} beta_s g^(l-1)_{s+1}; the s = N term
  // vanishes with beta_N = 0, so index N + 1 is never consulted.
  GTable table;
  table.beta = beta;
  const int N = beta.steps();
  table.rows.emplace_back(N + 1, Int(1));
  for (int l = 1; l <= depth; ++l) {
    std::vector<Int> row(N + 1, Int(0));
    for (int n = 0; n <= N; ++n) {
      Int acc = 0;
      for (int s = 0; s <= n; ++s) {
        if (s + 1 <= N) acc += beta.at(s) * table.rows[l - 1][s + 1];
      }
      row[n] = acc;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

CriterionResult check_structural(double tol) {
  CriterionResult res;
  res.name = "structural";
  res.threshold = std::isnan(tol) ? 0.0 : tol;
  const int depth = 60;
  long violations = 0, sequences = 0;
  for (const ModelSpec& model : grid_models()) {
    for (int ell = 0; ell < model.signal_powers[0]; ++ell) {
      for (int M = 0; M <= 30; ++M) {
        const BetaSequence beta =
            beta_sequence(model, make_subspace(model, M, {ell}));
        ++sequences;
        const int N = beta.steps();
        if (beta.at(N) != 0) ++violations;
        for (int n = 0; n < N; ++n)
          if (beta.at(n) <= 0) ++violations;

        const GTable a = build_gtable(beta, depth);
        const GTable b = gtable_by_nested_sums(beta, depth);
        const GTable c = gtable_via_matrix(beta, depth);
        const Int total = beta.sum();
        Int bound = 1;
        for (int l = 0; l <= depth; ++l) {
          if (a.rows[l] != b.rows[l] || a.rows[l] != c.rows[l]) ++violations;
          for (int n = 0; n <= N; ++n) {
            if (l == 0 && a.g(l, n) != 1) ++violations;
            if (a.g(l, n) > bound) ++violations;  // g^(l)_n <= (sum beta)^l
          }
          if (N >= 1 && a.g(l, N) != a.g(l, N - 1)) ++violations;
          bound *= total;
        }

        const HessenbergB B(beta);
        const auto dense = B.dense();
        if (N >= 1 && dense[N] != dense[N - 1]) ++violations;
        const auto L = B.unit_lower_factor();
        const auto U = B.superdiagonal_factor();
        for (int r = 0; r <= N; ++r) {
          for (int col = 0; col <= N; ++col) {
            Int acc = 0;
            for (int i = 0; i <= N; ++i) acc += L[r][i] * U[i][col];
            if (acc != dense[r][col]) ++violations;
          }
        }
      }
    }
  }
  res.measured = static_cast<double>(violations);
  res.passed = violations == 0 && res.measured <= res.threshold;
  std::ostringstream os;
  os << violations << " violations over " << sequences
     << " subspaces (M<=30, depth " << depth << ")";
  res.detail = os.str();
  return res;
}

// ---------------------------------------------------------------------------
// 5. norm preservation on the series path and the amplitude bounds
CriterionResult check_norm_bound(double tol) {
  CriterionResult res;
  res.name = "norm-bound";
  res.threshold = std::isnan(tol) ? 1e-10 : tol;
  double worst_norm = 0.0;
  double worst_bound = 0.0;  // positive means a bound violation beyond slack
  for (const ModelSpec& model : grid_models()) {
    for (int ell = 0; ell < model.signal_powers[0]; ++ell) {
      for (int M = 0; M <= 20; M += 2) {
        const BetaSequence beta =
            beta_sequence(model, make_subspace(model, M, {ell}));
        GTable table = build_gtable(beta, 0);
        const double sum_beta = to_double(beta.sum());
        for (int j = 1; j <= 10; ++j) {
          const double tau = 0.1 * j;
          const SubspaceState state = evaluate_gamma(table, tau);
          if (state.method == EvalMethod::series)
            worst_norm = std::max(worst_norm, std::abs(state.norm() - 1.0));

          double log_prod = 0.0;
          for (int n = 0; n <= beta.steps(); ++n) {
            if (n > 0) log_prod += std::log(to_double(beta.at(n - 1)));
            if (state.gamma[n] != 0.0) {
              // |gamma_n| <= (prod beta)^{-1/2}
              const double excess =
                  std::log(std::abs(state.gamma[n])) + 0.5 * log_prod;
              worst_bound = std::max(worst_bound, excess);
            }
            if (state.method == EvalMethod::series && state.gamma[n] != 0.0) {
              // |gamma_n| <= sum_l tau^{n+2l}/(n+2l)! (sum beta)^l
              double term = std::exp(n * std::log(tau) - std::lgamma(n + 1.0));
              if (n == 0) term = 1.0;
              double majorant = term;
              for (long l = 0; term > 1e-18 * majorant; ++l) {
                term *= tau * tau * sum_beta /
                        ((n + 2.0 * l + 1.0) * (n + 2.0 * l + 2.0));
                majorant += term;
              }
              worst_bound = std::max(
                  worst_bound, std::abs(state.gamma[n]) - majorant * (1.0 + 1e-8));
            }
          }
        }
      }
    }
  }
  res.measured = std::max(worst_norm, worst_bound);
  res.passed = worst_norm <= res.threshold && worst_bound <= 1e-8;
  std::ostringstream os;
  os << "max series-path |norm-1| = " << worst_norm
     << ", worst bound excess = " << worst_bound;
  res.detail = os.str();
  return res;
}

// ---------------------------------------------------------------------------
// 6. closed-form depth-1 coefficients for the two-photon model:
//    3 g^(1)_n = (n+1)(n+2)(4Nn + 3N - 3n(n+1))
CriterionResult check_taylor_k2(double tol) {
  CriterionResult res;
  res.name = "taylor-k2";
  res.threshold = std::isnan(tol) ? 0.0 : tol;
  const ModelSpec model{1, {2}};
  long mismatches = 0, checked = 0;
  for (int N = 1; N <= 200; ++N) {
    const BetaSequence beta = beta_sequence(model, make_subspace(model, N, {0}));
    Int prefix = 0;
    for (int n = 0; n <= N - 1; ++n) {
      prefix += beta.at(n);  // g^(1)_n = sum_{s<=n} beta_s
      const Int rhs = Int(n + 1) * (n + 2) *
                      (Int(4) * N * n + Int(3) * N - Int(3) * n * (n + 1));
      ++checked;
      if (3 * prefix != rhs) ++mismatches;
    }
  }
  res.measured = static_cast<double>(mismatches);
  res.passed = mismatches == 0 && res.measured <= res.threshold;
  std::ostringstream os;
  os << mismatches << " mismatches in " << checked
     << " exact depth-1 coefficient identities (N<=200)";
  res.detail = os.str();
  return res;
}

// ---------------------------------------------------------------------------
// 7. semiclassical error scaling across the significant pump window
CriterionResult check_parametric_error(double tol) {
  CriterionResult res;
  res.name = "parametric-error";
  res.threshold = std::isnan(tol) ? 2.0 : tol;
  std::vector<double> ratios, center_ratios;
  for (double r : {0.25, 0.5}) {
    for (double alpha : {4.0, 8.0, 16.0}) {
      const ParametricErrorReport report =
          parametric_error_report(alpha, r, 1e-2, /*include_neighbors=*/true);
      for (int n : {1, 2, 3}) {
        double measured = report.main.rows[n].rel_err;
        center_ratios.push_back(measured / (r * r * (n + 1) / alpha));
        for (const auto& table : report.neighbors)
          measured = std::max(measured, table.rows[n].rel_err);
        ratios.push_back(measured / (r * r * (n + 1) / alpha));
      }
    }
  }
  const auto fit = [](const std::vector<double>& v) {
    const double lo = *std::min_element(v.begin(), v.end());
    const double hi = *std::max_element(v.begin(), v.end());
    const double c = std::sqrt(lo * hi);
    return std::pair<double, double>(c, std::max(hi / c, c / lo));
  };
  const auto [c, deviation] = fit(ratios);
  const auto [c0, deviation0] = fit(center_ratios);
  res.measured = deviation;
  res.passed = deviation <= res.threshold;
  std::ostringstream os;
  os << "window-max fit c = " << c << ", worst factor " << deviation
     << " (center-only: c = " << c0 << ", factor " << deviation0 << ")";
  res.detail = os.str();
  return res;
}

// ---------------------------------------------------------------------------
// 8. sufficiency of the ratio-test depth estimate
CriterionResult check_truncation(double tol) {
  CriterionResult res;
  res.name = "truncation";
  res.threshold = std::isnan(tol) ? 1e-10 : tol;
  double worst = 0.0;
  long worst_excess = 0;  // terms actually used beyond the estimated depth
  for (const ModelSpec& model : grid_models()) {
    for (int ell = 0; ell < model.signal_powers[0]; ++ell) {
      for (int M = 0; M <= 20; ++M) {
        const BetaSequence beta =
            beta_sequence(model, make_subspace(model, M, {ell}));
        const double sum_beta = to_double(beta.sum());
        GTable table = build_gtable(beta, 0);
        for (int j = 1; j <= 10; ++j) {
          const double tau = 0.1 * j;
          if (tau * std::sqrt(sum_beta) > 8.0) continue;  // series domain only
          const long depth = truncation_depth(beta, tau, 1e-12);

          EngineOptions forced;
          forced.forced_depth = depth;
          const SubspaceState a = evaluate_gamma(table, tau, forced);
          forced.forced_depth = 2 * depth;
          const SubspaceState b = evaluate_gamma(table, tau, forced);
          for (int n = 0; n <= beta.steps(); ++n)
            worst = std::max(worst, std::abs(a.gamma[n] - b.gamma[n]));

          const SubspaceState c = evaluate_gamma(table, tau);
          for (long used : c.terms_used)
            worst_excess = std::max(worst_excess, used - (depth + 1));
        }
      }
    }
  }
  res.measured = worst;
  res.passed = worst <= res.threshold && worst_excess <= 0;
  std::ostringstream os;
  os << "max |gamma(depth) - gamma(2 depth)| = " << worst
     << ", max terms used beyond estimate = " << worst_excess;
  res.detail = os.str();
  return res;
}

// ---------------------------------------------------------------------------
// 9. rescaled-time collapse across the retained pump window
CriterionResult check_collapse(double tol) {
  CriterionResult res;
  res.name = "collapse";
  const double alpha = 8.0;
  res.threshold = std::isnan(tol) ? 5.0 / alpha : tol;
  const ModelSpec model{1, {2}};
  const PumpEnsemble ensemble = truncate_pump(alpha, 1e-12);

  const int reference_N = 64;
  double worst = 0.0;
  for (double tau_bar : {0.1, 0.2, 0.3, 0.4, 0.5}) {
    GTable ref_table = build_gtable(
        beta_sequence(model, make_subspace(model, reference_N, {0})), 0);
    const SubspaceState ref =
        evaluate_gamma(ref_table, tau_bar / std::sqrt(double(reference_N)));
    for (const auto& component : ensemble.retained) {
      const int N = component.pump_photons;
      GTable table =
          build_gtable(beta_sequence(model, make_subspace(model, N, {0})), 0);
      const SubspaceState state = evaluate_gamma(table, tau_bar / std::sqrt(double(N)));
      for (int n = 0; n <= std::min(5, N); ++n)
        worst = std::max(worst,
                         std::abs(std::abs(state.psi[n]) - std::abs(ref.psi[n])));
    }
  }
  res.measured = worst;
  res.passed = worst <= res.threshold;
  std::ostringstream os;
  os << "max | |psi_n(tau_bar)| - |psi_n at N=64| | = " << worst
     << " over the alpha=8 window, n<=5, tau_bar<=0.5";
  res.detail = os.str();
  return res;
}

using CheckFn = std::function<CriterionResult(double)>;

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> table = {
      {"beamsplitter", check_beamsplitter},
      {"three-oracle", check_three_oracle},
      {"operator-powers", check_operator_powers},
      {"structural", check_structural},
      {"norm-bound", check_norm_bound},
      {"taylor-k2", check_taylor_k2},
      {"parametric-error", check_parametric_error},
      {"truncation", check_truncation},
      {"collapse", check_collapse},
  };
  return table;
}

}  // namespace

std::vector<std::string> acceptance_suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

std::vector<CriterionResult> run_acceptance(const std::vector<std::string>& suites,
                                            double tolerance_override) {
  for (const std::string& s : suites) {
    bool known = false;
    for (const auto& [name, fn] : registry()) known = known || name == s;
    if (!known) throw DomainError("unknown acceptance suite: " + s);
  }
  std::vector<CriterionResult> results;
  for (const auto& [name, fn] : registry()) {
    if (!suites.empty() &&
        std::find(suites.begin(), suites.end(), name) == suites.end())
      continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r = fn(tolerance_override);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                    .count();
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace ladder
