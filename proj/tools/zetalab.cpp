// zetalab: run one experiment and write its table plus manifest.
//
//   zetalab <mode> [--T .. | --L1 .. | --L2 ..] [options] --out results.csv
//
// Exit codes: 0 ok, 2 invalid config, 3 capacity, 4 numerical contract, 1 I/O.

#include <fstream>
#include <iostream>
#include <string>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "zetalab/experiment.hpp"

namespace {

using zetalab::ExperimentConfig;

ExperimentConfig load_manifest(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw zetalab::DomainError("cannot read manifest '" + path + "'");
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw zetalab::DomainError("manifest '" + path + "' is not valid JSON: " + e.what());
  }
  if (j.contains("manifest")) j = j["manifest"];
  if (!j.contains("config")) throw zetalab::DomainError("manifest '" + path + "' has no config block");
  return ExperimentConfig::from_json(j["config"]);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments on zeta moments and large values in short intervals", "zetalab"};
  app.fallthrough();
  app.set_config("--config", "", "key=value file; command-line flags override it");
  app.set_version_flag("--version", zetalab::kArtifactVersion);

  ExperimentConfig cfg;
  std::optional<double> T, L1, L2, H, V, x, lambda, c_surrogate;
  std::string v_grid, manifest;

  app.add_option("--T", T, "height T");
  app.add_option("--L1", L1, "log T, for symbolic scales");
  app.add_option("--L2", L2, "log log T, for symbolic scales");
  app.add_option("--H", H, "interval length (default T^theta)");
  app.add_option("--theta", cfg.theta, "H = T^theta")->capture_default_str();
  app.add_option("--k", cfg.k, "moment exponent")->capture_default_str();
  app.add_option("--t", cfg.t_values, "evaluation heights for eval");
  app.add_option("--V", V, "single large-values threshold");
  app.add_option("--V-grid", v_grid, "threshold grid lo:hi:step");
  app.add_option("--x", x, "Dirichlet polynomial length");
  app.add_option("--lambda", lambda, "majorant shift (default lambda0)");
  app.add_option("--r", cfg.r, "power r (mv-check: maximum r)")->capture_default_str();
  app.add_option("--m", cfg.m, "grid oversampling per mean zero gap")->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--rs-terms", cfg.rs_terms, "Riemann-Siegel correction terms 0..5")->capture_default_str();
  app.add_option("--slack", cfg.slack, "majorant slack, allowance slack/log x")->capture_default_str();
  app.add_option("--c-surrogate", c_surrogate, "O(1/log3 T) exponent constant (default 7/(2 theta))");
  app.add_option("--littlewood-c", cfg.littlewood_c, "envelope constant")->capture_default_str();
  app.add_option("--n-points", cfg.n_points, "majorant audit points")->capture_default_str();
  app.add_option("--n-suites", cfg.n_suites, "mv-check random polynomials")->capture_default_str();
  app.add_option("--out", cfg.out, "output path");
  app.add_option("--format", cfg.format, "csv or json")->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "worker threads")->capture_default_str();
  app.add_option("--manifest", manifest, "replay the config recorded in a manifest");

  const std::pair<const char*, const char*> modes[] = {
      {"eval", "Z(t) and |zeta(1/2+it)| at --t heights (default T)"},
      {"moments", "I_k(T,H) by quadrature with bounds and dyadic recombination"},
      {"large-values", "measure of log|zeta| >= V over [T, T+H]"},
      {"majorant", "pointwise audit of the prime-sum majorant"},
      {"mv-check", "mean-value inequality on random prime polynomials"},
      {"bounds", "large-values bound formulas at a symbolic or concrete scale"},
      {"audit", "parameter-chain checks over a V grid"},
  };
  for (const auto& [mode, about] : modes) {
    app.add_subcommand(mode, about)->callback([&cfg, m = std::string(mode)] { cfg.mode = m; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (!manifest.empty()) {
      auto replay = load_manifest(manifest);
      if (!cfg.out.empty()) replay.out = cfg.out;
      if (app.count("--format")) replay.format = cfg.format;
      if (app.count("--jobs")) replay.jobs = cfg.jobs;
      cfg = replay;
    } else {
      if (cfg.mode.empty()) throw zetalab::DomainError("a mode is required (or --manifest)");
      cfg.T = T;
      cfg.L1 = L1;
      cfg.L2 = L2;
      cfg.H = H;
      cfg.V = V;
      cfg.x = x;
      cfg.lambda = lambda;
      cfg.c_surrogate = c_surrogate;
      if (!v_grid.empty()) cfg.v_grid = zetalab::VGridSpec::parse(v_grid);
    }
    if (cfg.out.empty()) throw zetalab::DomainError("--out is required");
    const auto result = zetalab::run_experiment(cfg);
    for (const auto& p : zetalab::emit_report(result, cfg.out, cfg.format)) std::cout << p.string() << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "zetalab: " << e.what() << "\n";
    return zetalab::exit_code_for(e);
  }
}
