#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ladderboson/pump.hpp"

using namespace ladder;

TEST_CASE("pump truncation keeps the requested Poisson mass") {
  const double alpha = 8.0, eps = 1e-12;
  const PumpEnsemble ensemble = truncate_pump(alpha, eps);
  CHECK(ensemble.retained_mass >= 1.0 - eps);

  // weights match the Poisson law directly
  const double lambda = alpha * alpha;
  for (const auto& c : ensemble.retained) {
    const double expected =
        std::exp(-lambda + 2.0 * c.pump_photons * std::log(alpha) -
                 std::lgamma(c.pump_photons + 1.0));
    CHECK(c.weight == doctest::Approx(expected).epsilon(1e-12));
  }

  // window centered near alpha^2 with half-width of a few sigma = alpha
  const int lo = ensemble.retained.front().pump_photons;
  const int hi = ensemble.retained.back().pump_photons;
  CHECK(lo <= 64);
  CHECK(hi >= 64);
  CHECK(64 - lo >= 5 * alpha);
  CHECK(64 - lo <= 9 * alpha);
  CHECK(hi - 64 >= 5 * alpha);
  CHECK(hi - 64 <= 9 * alpha);

  // no smaller contiguous window achieves the mass: dropping either edge
  // (the smaller of the two boundary weights) must fall below the target
  const double smaller_edge =
      std::min(ensemble.retained.front().weight, ensemble.retained.back().weight);
  CHECK(ensemble.retained_mass - smaller_edge < 1.0 - eps);
}

TEST_CASE("loose truncation keeps only the Poisson mode") {
  const PumpEnsemble single = truncate_pump(2.0, 0.999);
  REQUIRE(single.retained.size() == 1);
  CHECK(single.retained.front().pump_photons == 4);
}

TEST_CASE("degenerate truncation targets are rejected") {
  CHECK_THROWS_AS(truncate_pump(0.0, 1e-12), DomainError);
  CHECK_THROWS_AS(truncate_pump(-3.0, 1e-12), DomainError);
  CHECK_THROWS_AS(truncate_pump(4.0, 0.0), DomainError);
  CHECK_THROWS_AS(truncate_pump(4.0, 1.0), DomainError);
  CHECK_THROWS_AS(truncate_pump(4.0, 1.5), DomainError);
}

TEST_CASE("ensemble at tau = 0: no conversion yet") {
  const ModelSpec model{1, {2}};
  const PumpEnsemble ensemble = truncate_pump(4.0, 1e-12);
  const ObservableReport report = evolve_ensemble(ensemble, model, 0.0);
  CHECK(report.signal_mean[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(report.pump_mean == doctest::Approx(16.0).epsilon(1e-9));
  CHECK(report.total_norm == doctest::Approx(ensemble.retained_mass).epsilon(1e-12));
}

TEST_CASE("small-time signal growth matches the squeezed-state mean") {
  const ModelSpec model{1, {2}};
  const PumpEnsemble ensemble = truncate_pump(4.0, 1e-12);
  const double tau = 0.02;
  const ObservableReport report = evolve_ensemble(ensemble, model, tau);
  const double r = 2.0 * 4.0 * tau;
  const double expected = std::sinh(r) * std::sinh(r);
  CHECK(std::abs(report.signal_mean[0] - expected) <= 0.05 * expected);
}

TEST_CASE("photon bookkeeping: pump depletion balances signal growth") {
  const ModelSpec model{1, {2}};
  const PumpEnsemble ensemble = truncate_pump(5.0, 1e-12);
  for (double tau : {0.01, 0.05, 0.1, 0.3}) {
    const ObservableReport report = evolve_ensemble(ensemble, model, tau);
    // each conversion trades m = 1 pump photon for k = 2 signal photons
    CHECK(std::abs(report.pump_mean + 0.5 * report.signal_mean[0] - 25.0) <= 1e-8);
  }

  const ModelSpec multi{1, {1, 2}};
  const PumpEnsemble small = truncate_pump(3.0, 1e-12);
  for (double tau : {0.05, 0.2}) {
    const ObservableReport report = evolve_ensemble(small, multi, tau);
    CHECK(std::abs(report.pump_mean + report.signal_mean[0] - 9.0) <= 1e-8);
    CHECK(std::abs(report.pump_mean + 0.5 * report.signal_mean[1] - 9.0) <= 1e-8);
  }
}

TEST_CASE("per-subspace norms make the total norm the retained mass") {
  const ModelSpec model{1, {2}};
  const PumpEnsemble ensemble = truncate_pump(6.0, 1e-12);
  const ObservableReport report = evolve_ensemble(ensemble, model, 0.04);
  for (const auto& sub : report.per_subspace) {
    double norm_sq = 0.0;
    for (const auto& a : sub.state.psi) norm_sq += std::norm(a);
    CHECK(std::abs(norm_sq - 1.0) <= 1e-10);
  }
  CHECK(std::abs(report.total_norm - ensemble.retained_mass) <= 1e-9);
}

TEST_CASE("parallel and serial ensemble evaluations are identical") {
  const ModelSpec model{1, {2}};
  const PumpEnsemble ensemble = truncate_pump(5.0, 1e-10);
  const ObservableReport a = evolve_ensemble(ensemble, model, 0.05);
  const ObservableReport b = evolve_ensemble_serial(ensemble, model, 0.05);
  CHECK(a.total_norm == b.total_norm);
  CHECK(a.pump_mean == b.pump_mean);
  CHECK(a.signal_mean == b.signal_mean);
  REQUIRE(a.per_subspace.size() == b.per_subspace.size());
  for (std::size_t i = 0; i < a.per_subspace.size(); ++i)
    CHECK(a.per_subspace[i].state.psi == b.per_subspace[i].state.psi);
}

TEST_CASE("fidelity against the squeezed-pump product state") {
  const ModelSpec model{1, {2}};

  const PumpEnsemble ensemble = truncate_pump(6.0, 1e-10);
  CHECK(fidelity_vs_parametric(ensemble, model, 0.0) >= 1.0 - 1e-9);
  CHECK(fidelity_vs_parametric(ensemble, model, 0.0) <= 1.0 + 1e-12);

  // decreasing in r at fixed alpha
  double previous = 2.0;
  for (double r : {0.1, 0.2, 0.3, 0.4, 0.5}) {
    const double tau = r / (2.0 * 6.0);
    const double f = fidelity_vs_parametric(ensemble, model, tau);
    CHECK(f <= previous);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0 + 1e-12);
    previous = f;
  }

  // increasing in alpha at fixed r
  const double r = 0.3;
  const PumpEnsemble wide = truncate_pump(8.0, 1e-10);
  const double f_narrow = fidelity_vs_parametric(ensemble, model, r / 12.0);
  const double f_wide = fidelity_vs_parametric(wide, model, r / 16.0);
  CHECK(f_wide > f_narrow);

  const ModelSpec wrong{1, {3}};
  CHECK_THROWS_AS(fidelity_vs_parametric(ensemble, wrong, 0.01), DomainError);
}

TEST_CASE("ensemble respects the dimension cap") {
  const ModelSpec model{1, {2}};
  const PumpEnsemble huge = truncate_pump(50.0, 1e-12);
  CHECK_THROWS_AS(evolve_ensemble(huge, model, 0.01), ResourceError);

  EnsembleOptions tight;
  tight.max_dimension = 10;
  const PumpEnsemble small = truncate_pump(4.0, 1e-12);
  CHECK_THROWS_AS(evolve_ensemble(small, model, 0.01, tight), ResourceError);
}
