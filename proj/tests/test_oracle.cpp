#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "ladderboson/oracle.hpp"
#include "ladderboson/series.hpp"

using namespace ladder;

namespace {

BetaSequence model_beta(int m, int k, int M, int ell = 0) {
  const ModelSpec model{m, {k}};
  return beta_sequence(model, make_subspace(model, M, {ell}));
}

}  // namespace

TEST_CASE("RK4 integration: initial condition and parameter validation") {
  const BetaSequence beta = model_beta(1, 2, 5);
  const auto at_zero = integrate_gamma_ode(beta, 0.0, 1e-3);
  CHECK(at_zero[0] == 1.0);
  for (int n = 1; n <= 5; ++n) CHECK(at_zero[n] == 0.0);
  CHECK_THROWS_AS(integrate_gamma_ode(beta, 0.5, 0.0), DomainError);
  CHECK_THROWS_AS(integrate_gamma_ode(beta, 0.5, -1e-4), DomainError);
  CHECK_THROWS_AS(integrate_gamma_ode(beta, -0.5, 1e-4), DomainError);
}

TEST_CASE("RK4 reproduces the beam-splitter closed form") {
  const BetaSequence beta = model_beta(1, 1, 2);
  const double tau = 0.3;
  const auto gamma = integrate_gamma_ode(beta, tau, 1e-4);
  CHECK(gamma[0] == doctest::Approx(std::cos(tau) * std::cos(tau)).epsilon(1e-10));
  CHECK(gamma[1] == doctest::Approx(std::cos(tau) * std::sin(tau)).epsilon(1e-10));
  CHECK(gamma[2] == doctest::Approx(0.5 * std::sin(tau) * std::sin(tau)).epsilon(1e-10));
}

TEST_CASE("RK4 agrees with the series engine") {
  const BetaSequence beta = model_beta(1, 2, 10);
  GTable table = build_gtable(beta, 0);
  const double tau = 0.5;
  const auto ode = integrate_gamma_ode(beta, tau, 1e-4);
  const SubspaceState state = evaluate_gamma(table, tau);
  for (int n = 0; n <= 10; ++n)
    CHECK(std::abs(ode[n] - state.gamma[n]) <= 1e-8);
}

TEST_CASE("RK4 preserves the norm at the fixed step") {
  const BetaSequence beta = model_beta(1, 2, 10);
  for (double tau : {0.3, 0.7, 1.0}) {
    const auto gamma = integrate_gamma_ode(beta, tau, 1e-4);
    const auto psi = gamma_to_psi(gamma, beta);
    double norm_sq = 0.0;
    for (const auto& a : psi) norm_sq += std::norm(a);
    CHECK(std::abs(std::sqrt(norm_sq) - 1.0) <= 1e-10);
  }
}

TEST_CASE("grid integration matches one-shot integrations") {
  const BetaSequence beta = model_beta(2, 2, 9);
  const std::vector<double> taus = {0.1, 0.25, 0.4};
  const auto grid = integrate_gamma_ode_grid(beta, taus, 1e-4);
  REQUIRE(grid.size() == taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const auto single = integrate_gamma_ode(beta, taus[i], 1e-4);
    for (std::size_t n = 0; n < single.size(); ++n)
      CHECK(grid[i][n] == doctest::Approx(single[n]).epsilon(1e-12));
  }
}

TEST_CASE("default step policy shrinks with the largest beta") {
  const BetaSequence small = model_beta(1, 1, 2);
  const BetaSequence large = model_beta(1, 3, 20);
  CHECK(default_ode_step(small) < 1e-4 * 1.0001);
  CHECK(default_ode_step(large) < default_ode_step(small));
}

TEST_CASE("spectral propagator: identity, unitarity, phase convention") {
  const BetaSequence beta = model_beta(1, 2, 9);
  const auto at_zero = propagator_psi(beta, 0.0);
  CHECK(std::abs(at_zero[0] - 1.0) <= 1e-14);
  for (int n = 1; n <= 9; ++n) CHECK(std::abs(at_zero[n]) <= 1e-14);

  for (double tau : {0.3, 1.0, 4.0}) {
    const auto psi = propagator_psi(beta, tau);
    double norm_sq = 0.0;
    for (const auto& a : psi) norm_sq += std::norm(a);
    CHECK(std::abs(norm_sq - 1.0) <= 1e-13);
    // i^n psi_n is real
    std::complex<double> phase(1.0, 0.0);
    const std::complex<double> i_unit(0.0, 1.0);
    for (const auto& a : psi) {
      CHECK(std::abs((a * phase).imag()) <= 1e-10);
      phase *= i_unit;
    }
  }
}

TEST_CASE("two-rung propagator closed form") {
  const BetaSequence beta = model_beta(1, 2, 1);
  for (double tau : {0.2, 0.9}) {
    const auto psi = propagator_psi(beta, tau);
    const double arg = std::sqrt(2.0) * tau;
    CHECK(std::abs(psi[0] - std::complex<double>(std::cos(arg), 0.0)) <= 1e-13);
    CHECK(std::abs(psi[1] - std::complex<double>(0.0, -std::sin(arg))) <= 1e-13);
  }
}

TEST_CASE("raw-operator construction verifies the integer matrix elements") {
  const ModelSpec model{1, {2}};
  double mismatch = 1.0;

  const SubspaceIndex vac = make_subspace(model, 4, {0});
  const auto psi = brute_force_fock(model, vac, 0.0, 10000, &mismatch);
  CHECK(mismatch <= 1e-12);
  CHECK(std::abs(psi[0] - 1.0) <= 1e-14);

  // offsets shift the signal factors: beta_n = (4 - n)(2n + 2)(2n + 3)
  const SubspaceIndex shifted = make_subspace(model, 4, {1});
  const BetaSequence expected = beta_sequence(model, shifted);
  for (int n = 0; n < 4; ++n)
    CHECK(expected.at(n) == Int(4 - n) * (2 * n + 2) * (2 * n + 3));
  brute_force_fock(model, shifted, 0.0, 10000, &mismatch);
  CHECK(mismatch <= 1e-12);
}

TEST_CASE("raw-operator propagation matches the formula-based propagator") {
  for (int m : {1, 2}) {
    for (int k : {1, 2}) {
      const ModelSpec model{m, {k}};
      for (int ell = 0; ell < k; ++ell) {
        const SubspaceIndex sub = make_subspace(model, 7, {ell});
        const BetaSequence beta = beta_sequence(model, sub);
        for (double tau : {0.4, 1.1}) {
          const auto raw = brute_force_fock(model, sub, tau);
          const auto spectral = propagator_psi(beta, tau);
          for (std::size_t n = 0; n < raw.size(); ++n)
            CHECK(std::abs(raw[n] - spectral[n]) <= 1e-10);
        }
      }
    }
  }
  // three modes
  const ModelSpec multi{1, {1, 2}};
  const SubspaceIndex sub = make_subspace(multi, 5, {0, 1});
  const auto raw = brute_force_fock(multi, sub, 0.6);
  const auto spectral = propagator_psi(beta_sequence(multi, sub), 0.6);
  for (std::size_t n = 0; n < raw.size(); ++n)
    CHECK(std::abs(raw[n] - spectral[n]) <= 1e-10);
}

TEST_CASE("raw-operator route enforces the dimension cap") {
  const ModelSpec model{1, {2}};
  const SubspaceIndex sub = make_subspace(model, 200, {0});
  CHECK_THROWS_AS(brute_force_fock(model, sub, 0.1, 10000), ResourceError);
}

TEST_CASE("three-way agreement on a sampled grid") {
  for (auto [k, m] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {3, 1}, {2, 2}}) {
    const ModelSpec model{m, {k}};
    for (int M : {5, 12}) {
      const BetaSequence beta = beta_sequence(model, make_subspace(model, M, {k - 1}));
      GTable table = build_gtable(beta, 0);
      Propagator propagator(TridiagonalHamiltonian::from_beta(beta));
      for (double tau : {0.2, 0.8}) {
        const SubspaceState engine = evaluate_gamma(table, tau);
        const auto spectral = propagator.psi(tau);
        const auto ode = integrate_gamma_ode(beta, tau, 1e-4);
        const auto ode_psi = gamma_to_psi(ode, beta);
        for (int n = 0; n <= beta.steps(); ++n) {
          CHECK(std::abs(engine.psi[n] - spectral[n]) <= 1e-8);
          CHECK(std::abs(engine.psi[n] - ode_psi[n]) <= 1e-6);
        }
      }
    }
  }
}
