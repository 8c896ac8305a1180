// Command-line front end: every computation behind one deterministic
// machine-readable emitter.  Exit codes: 0 success, 1 usage or validation
// error, 2 numerical failure.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ladderboson/format.hpp"
#include "ladderboson/pump.hpp"
#include "ladderboson/reference.hpp"
#include "ladderboson/series.hpp"
#include "ladderboson/validate.hpp"

namespace {

using ladder::format_double;

// ---------------------------------------------------------------------------
// minimal deterministic JSON assembly: insertion order preserved, reals
// always through format_double

std::string json_reals(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_double(v[i]);
  }
  return out + "]";
}

std::string json_ints(const std::vector<long>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

std::string json_ints(const std::vector<int>& v) {
  return json_ints(std::vector<long>(v.begin(), v.end()));
}

std::string json_strings(const std::vector<std::string>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += "\"" + v[i] + "\"";
  }
  return out + "]";
}

std::string json_model(const ladder::ModelSpec& model) {
  return "{\"m\":" + std::to_string(model.pump_power) +
         ",\"k\":" + json_ints(model.signal_powers) + "}";
}

std::string json_subspace(const ladder::SubspaceIndex& s, bool with_remainder) {
  std::string out = "{\"M\":" + std::to_string(s.pump_photons) +
                    ",\"ell\":" + json_ints(s.signal_offsets) +
                    ",\"N\":" + std::to_string(s.ladder_steps);
  if (with_remainder) out += ",\"q\":" + std::to_string(s.pump_remainder);
  return out + "}";
}

// Output is assembled in memory and written once; files go through a
// temporary so a failed run never leaves a partial result.
void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return;
  }
  const std::string tmp = path + ".tmp";
  std::FILE* f = std::fopen(tmp.c_str(), "wb");
  if (!f) throw ladder::DomainError("cannot open output file: " + path);
  std::fwrite(content.data(), 1, content.size(), f);
  std::fclose(f);
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw ladder::DomainError("cannot move output into place: " + path);
}

struct Config {
  int m = 1;
  std::vector<int> k;
  int M = 0;
  std::vector<int> ell;
  double tau = 0.0;
  double eps = 1e-12;
  double weight_eps = 1e-12;
  double theta = 8.0;
  double alpha = 0.0;
  double r = 0.0;
  int depth = 8;
  int max_dim = 2001;
  bool max_dim_from_flag = false;
  std::string format = "csv";
  std::string out = "-";
  bool neighbors = false;
  bool fidelity = false;
  bool amplitudes = false;
  bool serial = false;
  std::vector<std::string> suites;
  double override_tol = std::numeric_limits<double>::quiet_NaN();
};

ladder::ModelSpec make_model(const Config& cfg) {
  ladder::ModelSpec model{cfg.m, cfg.k};
  model.validate();
  return model;
}

ladder::SubspaceIndex make_subspace_from(const Config& cfg, const ladder::ModelSpec& model) {
  std::vector<int> ell = cfg.ell;
  if (ell.empty()) ell.assign(model.signal_powers.size(), 0);
  return ladder::make_subspace(model, cfg.M, ell);
}

int resolve_max_dim(const Config& cfg) {
  if (cfg.max_dim_from_flag) return cfg.max_dim;  // flags win over environment
  if (const char* env = std::getenv("LADDERBOSON_MAX_DIM")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<int>(v);
    throw ladder::DomainError("LADDERBOSON_MAX_DIM must be a positive integer");
  }
  return cfg.max_dim;
}

// ---------------------------------------------------------------------------

std::string run_betas(const Config& cfg) {
  const auto model = make_model(cfg);
  const auto subspace = make_subspace_from(cfg, model);
  const ladder::BetaSequence beta = ladder::beta_sequence(model, subspace);
  if (cfg.format == "json") {
    std::vector<long> n;
    std::vector<std::string> values;
    for (int i = 0; i <= beta.steps(); ++i) {
      n.push_back(i);
      values.push_back(beta.at(i).str());
    }
    return "{\"model\":" + json_model(model) +
           ",\"subspace\":" + json_subspace(subspace, true) +
           ",\"n\":" + json_ints(n) + ",\"beta\":" + json_strings(values) + "}\n";
  }
  std::string out = "n,beta\n";
  for (int n = 0; n <= beta.steps(); ++n)
    out += std::to_string(n) + "," + beta.at(n).str() + "\n";
  return out;
}

std::string run_gtable(const Config& cfg) {
  const auto model = make_model(cfg);
  const auto subspace = make_subspace_from(cfg, model);
  if (cfg.depth < 0) throw ladder::DomainError("--depth must be >= 0");
  const ladder::GTable table =
      ladder::build_gtable(ladder::beta_sequence(model, subspace), cfg.depth);
  if (cfg.format == "json") {
    std::string rows = "[";
    for (int l = 0; l <= table.depth(); ++l) {
      if (l) rows += ",";
      std::vector<std::string> row;
      for (int n = 0; n <= table.beta.steps(); ++n) row.push_back(table.g(l, n).str());
      rows += json_strings(row);
    }
    rows += "]";
    return "{\"model\":" + json_model(model) +
           ",\"subspace\":" + json_subspace(subspace, true) +
           ",\"depth\":" + std::to_string(table.depth()) + ",\"g\":" + rows + "}\n";
  }
  std::string out = "l,n,g\n";
  for (int l = 0; l <= table.depth(); ++l)
    for (int n = 0; n <= table.beta.steps(); ++n)
      out += std::to_string(l) + "," + std::to_string(n) + "," + table.g(l, n).str() + "\n";
  return out;
}

std::string run_evolve(const Config& cfg) {
  const auto model = make_model(cfg);
  const auto subspace = make_subspace_from(cfg, model);
  ladder::GTable table = ladder::build_gtable(ladder::beta_sequence(model, subspace), 0);
  ladder::EngineOptions options;
  options.eps = cfg.eps;
  options.theta = cfg.theta;
  const ladder::SubspaceState state = ladder::evaluate_gamma(table, cfg.tau, options);

  std::vector<double> re(state.psi.size()), im(state.psi.size());
  double norm_sq = 0.0;
  for (std::size_t i = 0; i < state.psi.size(); ++i) {
    re[i] = state.psi[i].real();
    im[i] = state.psi[i].imag();
    norm_sq += std::norm(state.psi[i]);
  }
  const char* method =
      state.method == ladder::EvalMethod::series ? "series" : "propagator_fallback";
  return "{\"model\":" + json_model(model) +
         ",\"subspace\":" + json_subspace(subspace, false) +
         ",\"tau\":" + format_double(state.tau) + ",\"method\":\"" + method +
         "\",\"terms_used\":" + json_ints(state.terms_used) +
         ",\"gamma\":" + json_reals(state.gamma) + ",\"psi\":{\"re\":" +
         json_reals(re) + ",\"im\":" + json_reals(im) + "},\"norm\":" +
         format_double(norm_sq) + ",\"tail_estimate\":" +
         format_double(state.tail_estimate) + "}\n";
}

std::string run_pump(const Config& cfg) {
  const auto model = make_model(cfg);
  if (cfg.alpha <= 0.0) throw ladder::DomainError("--alpha must be > 0");
  const ladder::PumpEnsemble ensemble = ladder::truncate_pump(cfg.alpha, cfg.weight_eps);
  ladder::EnsembleOptions options;
  options.eps = cfg.eps;
  options.theta = cfg.theta;
  options.max_dimension = resolve_max_dim(cfg);
  options.parallel = !cfg.serial;
  const ladder::ObservableReport report =
      ladder::evolve_ensemble(ensemble, model, cfg.tau, options);

  std::string out = "{\"model\":" + json_model(model) +
                    ",\"alpha\":" + format_double(cfg.alpha) +
                    ",\"tau\":" + format_double(cfg.tau) +
                    ",\"weight_eps\":" + format_double(cfg.weight_eps) +
                    ",\"retained\":{\"M_min\":" +
                    std::to_string(ensemble.retained.front().pump_photons) +
                    ",\"M_max\":" +
                    std::to_string(ensemble.retained.back().pump_photons) +
                    ",\"count\":" + std::to_string(ensemble.retained.size()) +
                    ",\"mass\":" + format_double(ensemble.retained_mass) + "}" +
                    ",\"pump_mean\":" + format_double(report.pump_mean) +
                    ",\"signal_mean\":" + json_reals(report.signal_mean) +
                    ",\"norm\":" + format_double(report.total_norm);
  if (cfg.fidelity)
    out += ",\"fidelity\":" + format_double(ladder::fidelity_vs_parametric(
                                  ensemble, model, cfg.tau, options));
  out += ",\"subspaces\":[";
  for (std::size_t i = 0; i < report.per_subspace.size(); ++i) {
    const auto& sub = report.per_subspace[i];
    if (i) out += ",";
    double norm_sq = 0.0;
    for (const auto& a : sub.state.psi) norm_sq += std::norm(a);
    out += "{\"M\":" + std::to_string(sub.subspace.pump_photons) +
           ",\"N\":" + std::to_string(sub.subspace.ladder_steps) +
           ",\"weight\":" + format_double(sub.weight) +
           ",\"norm\":" + format_double(norm_sq) + ",\"method\":\"" +
           (sub.state.method == ladder::EvalMethod::series ? "series"
                                                           : "propagator_fallback") +
           "\"";
    if (cfg.amplitudes) {
      std::vector<double> re(sub.state.psi.size()), im(sub.state.psi.size());
      for (std::size_t j = 0; j < sub.state.psi.size(); ++j) {
        re[j] = sub.state.psi[j].real();
        im[j] = sub.state.psi[j].imag();
      }
      out += ",\"psi\":{\"re\":" + json_reals(re) + ",\"im\":" + json_reals(im) + "}";
    }
    out += "}";
  }
  out += "]}\n";
  return out;
}

std::string run_compare_parametric(const Config& cfg) {
  if (cfg.alpha <= 0.0) throw ladder::DomainError("--alpha must be > 0");
  if (cfg.r <= 0.0) throw ladder::DomainError("--r must be > 0");
  const ladder::ParametricErrorReport report = ladder::parametric_error_report(
      cfg.alpha, cfg.r, cfg.eps, cfg.neighbors, resolve_max_dim(cfg));

  if (cfg.format == "json") {
    const auto table_json = [](const ladder::ParametricErrorTable& t) {
      std::string rows = "[";
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& row = t.rows[i];
        if (i) rows += ",";
        rows += "{\"n\":" + std::to_string(row.n) +
                ",\"gamma_exact\":" + format_double(row.gamma_exact) +
                ",\"gamma_param\":" + format_double(row.gamma_param) +
                ",\"rel_err\":" + format_double(row.rel_err) + "}";
      }
      rows += "]";
      return "{\"N\":" + std::to_string(t.subspace_size) +
             ",\"first_exceed_n\":" + std::to_string(t.first_exceed_n) +
             ",\"rows\":" + rows + "}";
    };
    std::string out = "{\"alpha\":" + format_double(report.alpha) +
                      ",\"r\":" + format_double(report.r) +
                      ",\"eps\":" + format_double(report.eps) +
                      ",\"predicted_n_c\":" + format_double(report.predicted_crossing) +
                      ",\"main\":" + table_json(report.main) + ",\"neighbors\":[";
    for (std::size_t i = 0; i < report.neighbors.size(); ++i) {
      if (i) out += ",";
      out += table_json(report.neighbors[i]);
    }
    return out + "]}\n";
  }
  std::string out = "n,gamma_exact,gamma_param,rel_err\n";
  for (const auto& row : report.main.rows)
    out += std::to_string(row.n) + "," + format_double(row.gamma_exact) + "," +
           format_double(row.gamma_param) + "," + format_double(row.rel_err) + "\n";
  return out;
}

int run_validate(const Config& cfg) {
  const auto results = ladder::run_acceptance(cfg.suites, cfg.override_tol);
  bool all_passed = true;
  for (const auto& r : results) {
    all_passed = all_passed && r.passed;
    std::printf("[%s] %-17s %s (%.2f s)\n", r.passed ? "PASS" : "FAIL",
                r.name.c_str(), r.detail.c_str(), r.seconds);
  }
  std::printf("%zu/%zu criteria passed\n",
              static_cast<std::size_t>(
                  std::count_if(results.begin(), results.end(),
                                [](const auto& r) { return r.passed; })),
              results.size());
  return all_passed ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact ladder-model state evolution for interacting bosons"};
  app.require_subcommand(1);
  Config cfg;

  const auto add_model = [&](CLI::App* cmd) {
    cmd->add_option("--m", cfg.m, "pump operator power m")->check(CLI::PositiveNumber);
    cmd->add_option("--k", cfg.k, "signal power k_s (repeat for several modes)")
        ->required();
  };
  const auto add_subspace = [&](CLI::App* cmd) {
    cmd->add_option("--M", cfg.M, "pump photons of the top state")->required();
    cmd->add_option("--ell", cfg.ell, "signal offsets (default all zero)");
  };
  const auto add_output = [&](CLI::App* cmd, bool with_format) {
    if (with_format)
      cmd->add_option("--format", cfg.format, "csv or json")
          ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", cfg.out, "output path, - for stdout");
  };

  CLI::App* betas = app.add_subcommand("betas", "exact beta sequence of one subspace");
  add_model(betas);
  add_subspace(betas);
  add_output(betas, true);

  CLI::App* gtable = app.add_subcommand("gtable", "exact series coefficient table");
  add_model(gtable);
  add_subspace(gtable);
  gtable->add_option("--depth", cfg.depth, "table depth L");
  add_output(gtable, true);

  CLI::App* evolve = app.add_subcommand("evolve", "evolved amplitudes of one subspace");
  add_model(evolve);
  add_subspace(evolve);
  evolve->add_option("--tau", cfg.tau, "dimensionless propagation time")->required();
  evolve->add_option("--eps", cfg.eps, "series truncation target");
  evolve->add_option("--theta", cfg.theta, "cancellation guard threshold");
  add_output(evolve, false);

  CLI::App* pump = app.add_subcommand("pump", "coherent-pump ensemble observables");
  add_model(pump);
  pump->add_option("--alpha", cfg.alpha, "coherent pump amplitude")->required();
  pump->add_option("--tau", cfg.tau, "dimensionless propagation time")->required();
  pump->add_option("--eps", cfg.eps, "series truncation target");
  pump->add_option("--weight-eps", cfg.weight_eps, "discarded Poisson mass");
  pump->add_option("--theta", cfg.theta, "cancellation guard threshold");
  pump->add_option("--max-dim", cfg.max_dim, "largest subspace dimension")
      ->each([&](const std::string&) { cfg.max_dim_from_flag = true; });
  pump->add_flag("--fidelity", cfg.fidelity, "include overlap with the squeezed state");
  pump->add_flag("--amplitudes", cfg.amplitudes, "include per-subspace amplitudes");
  pump->add_flag("--serial", cfg.serial, "disable the parallel subspace loop");
  add_output(pump, false);

  CLI::App* compare =
      app.add_subcommand("compare-parametric", "exact vs semiclassical coefficients");
  compare->add_option("--alpha", cfg.alpha, "coherent pump amplitude")->required();
  compare->add_option("--r", cfg.r, "squeezing parameter r = 2 alpha tau")->required();
  compare->add_option("--eps", cfg.eps, "relative error threshold for the crossing");
  compare->add_flag("--neighbors", cfg.neighbors, "include the window neighbors");
  compare->add_option("--max-dim", cfg.max_dim, "largest subspace dimension")
      ->each([&](const std::string&) { cfg.max_dim_from_flag = true; });
  add_output(compare, true);

  CLI::App* validate = app.add_subcommand("validate", "run the acceptance suites");
  validate->add_option("--suite", cfg.suites, "suite name (repeatable; default all)");
  validate->add_option("--override-tol", cfg.override_tol,
                       "replace every suite tolerance (failure-path testing)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (betas->parsed()) write_output(cfg.out, run_betas(cfg));
    else if (gtable->parsed()) write_output(cfg.out, run_gtable(cfg));
    else if (evolve->parsed()) write_output(cfg.out, run_evolve(cfg));
    else if (pump->parsed()) write_output(cfg.out, run_pump(cfg));
    else if (compare->parsed()) write_output(cfg.out, run_compare_parametric(cfg));
    else if (validate->parsed()) return run_validate(cfg);
  } catch (const ladder::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ladder::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ladder::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what()
              << " (tail estimate " << e.tail_estimate << ")\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
