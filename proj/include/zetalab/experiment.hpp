#pragma once

// Experiment runner behind the zetalab command-line tool: a flat config, one
// pipeline per mode producing a table, and CSV/JSON emission with a manifest.
// Runs are deterministic for a fixed config; the job count only changes speed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "zetalab/arith.hpp"
#include "zetalab/constants.hpp"
#include "zetalab/dirichlet.hpp"
#include "zetalab/error.hpp"
#include "zetalab/grid.hpp"
#include "zetalab/large_values.hpp"
#include "zetalab/majorant.hpp"
#include "zetalab/moments.hpp"
#include "zetalab/zeta.hpp"

namespace zetalab {

inline constexpr const char* kArtifactVersion = "1.0.0";
inline constexpr int kManifestSchema = 1;

struct VGridSpec {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;

  // "lo:hi:step"
  static VGridSpec parse(const std::string& text) {
    VGridSpec g;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> g.lo >> c1 >> g.hi >> c2 >> g.step) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof()) {
      throw DomainError("V-grid: expected lo:hi:step, got '" + text + "'");
    }
    return g;
  }

  std::vector<double> values() const {
    if (!(step > 0.0) || !(hi >= lo)) throw DomainError("V-grid: need step > 0 and hi >= lo");
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step * (1.0 + 1e-12))) + 1;
    if (n > 10'000'000) throw CapacityError("V-grid: more than 1e7 values");
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = lo + static_cast<double>(i) * step;
    return v;
  }

  std::string str() const;
};

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string VGridSpec::str() const {
  return format_double(lo) + ":" + format_double(hi) + ":" + format_double(step);
}

struct ExperimentConfig {
  std::string mode;  // eval | moments | large-values | majorant | mv-check | bounds | audit
  std::optional<double> T;
  std::optional<double> L1;
  std::optional<double> L2;
  std::optional<double> H;  // default T^theta
  double theta = 0.5;
  double k = 1.0;
  std::vector<double> t_values;  // eval
  std::optional<double> V;
  std::optional<VGridSpec> v_grid;
  std::optional<double> x;
  std::optional<double> lambda;
  int r = 2;
  int m = kDefaultOversample;
  std::uint64_t seed = 20261015;
  int rs_terms = 5;
  double slack = kLemma1Slack;
  std::optional<double> c_surrogate;  // default 7/(2 theta)
  double littlewood_c = kLittlewoodC;
  int n_points = 10'000;  // majorant audit points
  int n_suites = 100;     // mv-check random polynomials
  std::string out;
  std::string format = "csv";
  int jobs = 1;

  double lambda_value() const { return lambda.value_or(lambda0()); }
  double c_value() const { return c_surrogate.value_or(default_c_surrogate(theta)); }

  // Height-bearing fields are checked per mode by the runner.
  void validate() const {
    static const char* modes[] = {"eval", "moments", "large-values", "majorant", "mv-check", "bounds", "audit"};
    if (std::find(std::begin(modes), std::end(modes), mode) == std::end(modes)) {
      throw DomainError("unknown mode '" + mode + "'");
    }
    const int scales = T.has_value() + L1.has_value() + L2.has_value();
    if (scales > 1) throw DomainError("give exactly one of --T, --L1, --L2");
    if (!(theta > 0.0 && theta <= 1.0)) throw DomainError("theta must lie in (0, 1]");
    if (!(k > 0.0)) throw DomainError("k must be positive");
    if (m < 1) throw DomainError("m must be >= 1");
    if (r < 1) throw DomainError("r must be >= 1");
    if (jobs < 1) throw DomainError("jobs must be >= 1");
    if (n_points < 2) throw DomainError("n-points must be >= 2");
    if (n_suites < 1) throw DomainError("n-suites must be >= 1");
    if (format != "csv" && format != "json") throw DomainError("format must be csv or json");
    if (V && v_grid) throw DomainError("give at most one of --V, --V-grid");
    RsConfig{rs_terms}.validate();
  }

  // Everything that determines the results; excludes jobs, out and format.
  nlohmann::ordered_json inputs_json() const {
    nlohmann::ordered_json j;
    j["mode"] = mode;
    auto opt = [&](const char* key, const std::optional<double>& v) {
      j[key] = v ? nlohmann::ordered_json(format_double(*v)) : nlohmann::ordered_json(nullptr);
    };
    opt("T", T);
    opt("L1", L1);
    opt("L2", L2);
    opt("H", H);
    j["theta"] = format_double(theta);
    j["k"] = format_double(k);
    nlohmann::ordered_json ts = nlohmann::ordered_json::array();
    for (double t : t_values) ts.push_back(format_double(t));
    j["t"] = ts;
    opt("V", V);
    j["V_grid"] = v_grid ? nlohmann::ordered_json(v_grid->str()) : nlohmann::ordered_json(nullptr);
    opt("x", x);
    opt("lambda", lambda);
    j["r"] = r;
    j["m"] = m;
    j["seed"] = seed;
    j["rs_terms"] = rs_terms;
    j["slack"] = format_double(slack);
    opt("c_surrogate", c_surrogate);
    j["littlewood_c"] = format_double(littlewood_c);
    j["n_points"] = n_points;
    j["n_suites"] = n_suites;
    return j;
  }

  nlohmann::ordered_json to_json() const {
    auto j = inputs_json();
    j["out"] = out;
    j["format"] = format;
    j["jobs"] = jobs;
    return j;
  }

  static ExperimentConfig from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    auto num = [](const nlohmann::json& v) {
      return v.is_string() ? std::stod(v.get<std::string>()) : v.get<double>();
    };
    auto opt = [&](const char* key, std::optional<double>& dst) {
      if (j.contains(key) && !j[key].is_null()) dst = num(j[key]);
    };
    c.mode = j.at("mode").get<std::string>();
    opt("T", c.T);
    opt("L1", c.L1);
    opt("L2", c.L2);
    opt("H", c.H);
    if (j.contains("theta")) c.theta = num(j["theta"]);
    if (j.contains("k")) c.k = num(j["k"]);
    if (j.contains("t")) {
      for (const auto& t : j["t"]) c.t_values.push_back(num(t));
    }
    opt("V", c.V);
    if (j.contains("V_grid") && !j["V_grid"].is_null()) c.v_grid = VGridSpec::parse(j["V_grid"].get<std::string>());
    opt("x", c.x);
    opt("lambda", c.lambda);
    opt("c_surrogate", c.c_surrogate);
    if (j.contains("r")) c.r = j["r"].get<int>();
    if (j.contains("m")) c.m = j["m"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("rs_terms")) c.rs_terms = j["rs_terms"].get<int>();
    if (j.contains("slack")) c.slack = num(j["slack"]);
    if (j.contains("littlewood_c")) c.littlewood_c = num(j["littlewood_c"]);
    if (j.contains("n_points")) c.n_points = j["n_points"].get<int>();
    if (j.contains("n_suites")) c.n_suites = j["n_suites"].get<int>();
    if (j.contains("out")) c.out = j["out"].get<std::string>();
    if (j.contains("format")) c.format = j["format"].get<std::string>();
    if (j.contains("jobs")) c.jobs = j["jobs"].get<int>();
    return c;
  }
};

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw NumericalError("table row width does not match the header");
    rows.push_back(std::move(row));
  }
};

inline std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

inline Cell flag(bool b) { return std::string(b ? "true" : "false"); }
inline Cell flag(const std::optional<bool>& b) { return b ? flag(*b) : Cell(std::string("unevaluated")); }
inline Cell int_cell(std::size_t n) { return static_cast<std::int64_t>(n); }

struct RunManifest {
  nlohmann::ordered_json config;
  std::string version = kArtifactVersion;
  std::string manifest_hash;
  double wall_time_s = 0.0;
  std::map<std::string, double> timings;
  nlohmann::ordered_json constants;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = kManifestSchema;
    j["artifact"] = "zetalab";
    j["version"] = version;
    j["manifest_hash"] = manifest_hash;
    j["config"] = config;
    j["constants"] = constants;
    j["summary"] = summary;
    j["wall_time_s"] = wall_time_s;
    j["timings_s"] = timings;
    return j;
  }
};

struct RunResult {
  Table table;
  RunManifest manifest;
};

// 64-bit FNV-1a.
inline std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline nlohmann::ordered_json constants_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json c;
  auto put = [&](const char* name, double value, const char* label) {
    c[name] = {{"value", format_double(value)}, {"label", label}};
  };
  put("lambda0", lambda0(), "root of e^-l = l + l^2/2");
  put("lambda", cfg.lambda_value(), "majorant shift, default lambda0");
  put("majorant_slack", cfg.slack, "empirical, not proven: allowance slack/log x for the O(1/log x) term");
  put("prime_power_tail_c", kLemma2TailC, "empirical, not proven: tail bound in units of max(1, log3 T)");
  put("mean_value_ratio_cap", kLemma3RatioCap, "empirical: numeric moment over factorial bound");
  put("c_surrogate", cfg.c_value(), "surrogate for the O(1/log3 T) exponent constant");
  put("littlewood_c", cfg.littlewood_c, "envelope constant");
  put("oversample_m", cfg.m, "grid points per mean zero gap");
  put("rs_correction_terms", cfg.rs_terms, "Riemann-Siegel remainder terms");
  return c;
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

inline double require_T(const ExperimentConfig& cfg) {
  if (!cfg.T) throw DomainError("mode " + cfg.mode + " needs a concrete height --T");
  return *cfg.T;
}

inline double height_H(const ExperimentConfig& cfg, double T) { return cfg.H.value_or(std::pow(T, cfg.theta)); }

inline LogScale scale_of(const ExperimentConfig& cfg) {
  if (cfg.T) return LogScale::from_height(*cfg.T, cfg.theta);
  if (cfg.L1) return LogScale::from_log(*cfg.L1, cfg.theta);
  if (cfg.L2) return LogScale::from_loglog(*cfg.L2, cfg.theta);
  throw DomainError("mode " + cfg.mode + " needs one of --T, --L1, --L2");
}

// Explicit V, an explicit grid, or 33 points spread geometrically over the
// admissible range (capped at 1e6 times its lower end).
inline std::vector<double> v_values(const ExperimentConfig& cfg, const LogScale* s) {
  if (cfg.V) return {*cfg.V};
  if (cfg.v_grid) return cfg.v_grid->values();
  if (!s) throw DomainError("mode " + cfg.mode + " needs --V or --V-grid");
  const VRange r = v_range(*s);
  if (r.empty()) {
    throw DomainError("admissible V-range is empty at this scale (lower " + format_double(r.lower) + " > upper " +
                      format_double(r.upper) + "); pass --V or --V-grid for diagnostics");
  }
  const double hi = std::min(r.upper, 1e6 * r.lower);
  std::vector<double> v(33);
  for (int i = 0; i < 33; ++i) v[i] = r.lower * std::pow(hi / r.lower, i / 32.0);
  v.back() = hi;
  return v;
}

inline GridSpec moment_grid(const ExperimentConfig& cfg, double T) { return build_grid(T, height_H(cfg, T), cfg.m); }

}  // namespace detail

// Spacing for |P|^{2r}: its highest frequency is at most 2 r log x, sampled m
// times per period.
inline GridSpec mean_value_grid(double T, double H, double x, int r, int m) {
  const double top = 2.0 * r * std::log(std::max(x, 2.0));
  const double step = 2.0 * std::numbers::pi / top / m;
  const auto count = static_cast<std::size_t>(std::ceil(H / step)) + 1;
  if (count > 200'000'000) throw CapacityError("mean-value grid exceeds 2e8 points");
  return GridSpec::uniform(T, H, std::max<std::size_t>(count, 2));
}

// 1 + n_points grid points at the m-oversampled zero-gap step starting at T.
inline GridSpec majorant_grid(double T, int n_points, int m) {
  const double step = mean_zero_gap(T) / m;
  return GridSpec::uniform(T, step * (n_points - 1), static_cast<std::size_t>(n_points));
}

inline RunResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto t_start = detail::Clock::now();
  RunResult res;
  auto& tab = res.table;
  auto& man = res.manifest;
  const RsConfig rs{cfg.rs_terms};
  const RiemannSiegelEngine engine{rs};

  if (cfg.mode == "eval") {
    std::vector<double> ts = cfg.t_values;
    if (ts.empty()) ts.push_back(detail::require_T(cfg));
    tab.columns = {"t", "Z", "abs_zeta", "log_abs_zeta", "method"};
    const auto t0 = detail::Clock::now();
    for (const double t : ts) {
      const auto s = z_function(t, rs);
      tab.add({s.t, s.z_value, s.abs_zeta, log_abs_zeta(s), std::string(to_string(s.method))});
    }
    man.timings["zeta_engine"] = detail::seconds_since(t0);
  } else if (cfg.mode == "moments") {
    const double T = detail::require_T(cfg);
    const auto s = detail::scale_of(cfg);
    const auto grid = detail::moment_grid(cfg, T);
    const double H = grid.H;
    const auto t0 = detail::Clock::now();
    const auto abs_zeta = sample_grid(grid, [&](double t) { return engine.abs_zeta(t); }, cfg.jobs);
    man.timings["sampling"] = detail::seconds_since(t0);
    const auto t1 = detail::Clock::now();
    const auto mom = moment_from_samples(abs_zeta, cfg.k, grid);
    const auto dy = dyadic_recombination(T, H, cfg.k, abs_zeta, grid, s);
    const auto t1b = theorem1_bound(s, H, cfg.k, cfg.c_value());
    const double lower = H > std::numbers::e ? rb_lower_bound(H, cfg.k) : std::numeric_limits<double>::quiet_NaN();
    man.timings["moments"] = detail::seconds_since(t1);
    tab.columns = {"T",          "H",          "k",        "value",       "quad_error",  "n_points",
                   "m",          "lower_bound", "ratio_to_lower", "log_upper_bound", "trivial_part",
                   "recombined", "sum_form",   "max_form", "littlewood_envelope_T"};
    tab.add({T, H, cfg.k, mom.value, mom.quad_error, int_cell(mom.n_points), static_cast<std::int64_t>(mom.m), lower,
             mom.value / lower, t1b.log_value, dy.trivial_part, dy.recombined, dy.sum_form, dy.max_form,
             littlewood_envelope(T, cfg.littlewood_c)});
    man.summary["u_grid"] = dy.u_grid;
  } else if (cfg.mode == "large-values") {
    const double T = detail::require_T(cfg);
    const auto grid = detail::moment_grid(cfg, T);
    const auto vs = detail::v_values(cfg, nullptr);
    const auto t0 = detail::Clock::now();
    const auto est = measure_mu(vs, grid, engine, cfg.jobs);
    man.timings["large_values"] = detail::seconds_since(t0);
    tab.columns = {"T", "H", "V", "mu_hat", "crossing_uncertainty", "n_points"};
    for (const auto& e : est) tab.add({e.T, e.H, e.V, e.mu_hat, e.crossing_uncertainty, int_cell(e.n_points)});
  } else if (cfg.mode == "majorant") {
    const double T = detail::require_T(cfg);
    const double x = cfg.x.value_or(std::sqrt(T));
    const auto t0 = detail::Clock::now();
    const auto primes = sieve_primes(static_cast<std::uint64_t>(std::floor(std::max(x, 2.0))));
    const auto grid = majorant_grid(T, cfg.n_points, cfg.m);
    const auto audit = audit_lemma1(T, x, cfg.lambda_value(), grid, cfg.slack, engine, primes, cfg.jobs);
    man.timings["selberg_majorant"] = detail::seconds_since(t0);
    tab.columns = {"t", "log_abs_zeta", "prime_sum", "prime_power_tail", "main_term", "total", "slack_budget", "margin"};
    for (const auto& p : audit.points) {
      tab.add({p.t, p.log_abs_zeta, p.terms.prime_sum, p.terms.prime_power_tail, p.terms.main_term, p.terms.total,
               p.terms.slack_budget(cfg.slack), p.margin});
    }
    man.summary["violations"] = audit.violations;
    man.summary["zeros"] = audit.zeros;
    man.summary["min_margin"] = format_double(audit.min_margin);
    man.summary["t_at_min"] = format_double(audit.t_at_min);
    man.summary["histogram_edges"] = nlohmann::ordered_json::array();
    for (double e : audit.edges) man.summary["histogram_edges"].push_back(format_double(e));
    man.summary["histogram"] = audit.histogram;
  } else if (cfg.mode == "mv-check") {
    const double T = cfg.T.value_or(1e3);
    const double H = cfg.H.value_or(1e5);
    const double x_max = cfg.x.value_or(50.0);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> pick_x(2, static_cast<int>(std::floor(x_max)));
    std::uniform_int_distribution<int> pick_r(1, cfg.r);
    tab.columns = {"suite", "x", "r", "n_terms", "coeff_l2_norm", "factorial_norm", "inequality_holds", "numeric",
                   "quad_error", "main_term", "off_diagonal_budget", "ratio_to_main", "ratio_to_bound",
                   "residual_to_budget", "length_condition"};
    const auto t0 = detail::Clock::now();
    for (int i = 0; i < cfg.n_suites; ++i) {
      const double x = pick_x(rng);
      const int r = pick_r(rng);
      const auto poly = random_prime_polynomial(rng, x, 1.0);
      const auto e = expand_power(poly, r);
      const double lhs = coeff_l2_norm(e);
      const double rhs = std::exp(log_lemma3_rhs(poly, r, 1.0));
      const auto a = audit_lemma3(poly, r, mean_value_grid(T, H, x, r, cfg.m), cfg.jobs);
      tab.add({static_cast<std::int64_t>(i), x, static_cast<std::int64_t>(r), int_cell(e.terms.size()), lhs, rhs,
               flag(lhs <= rhs * (1.0 + 1e-12)), a.numeric, a.numeric_error, a.main_term, a.off_diagonal_budget,
               a.ratio_to_main, a.ratio_to_bound, a.residual_to_budget, flag(a.length_condition)});
    }
    man.timings["dirichlet_mv"] = detail::seconds_since(t0);
  } else if (cfg.mode == "bounds") {
    const auto s = detail::scale_of(cfg);
    const auto vs = detail::v_values(cfg, &s);
    const auto t0 = detail::Clock::now();
    tab.columns = {"V",  "case", "case_lo", "case_hi", "log_bound_per_H", "log_bound", "vacuous", "A",
                   "V1", "r_s1", "r_s2",    "log_mu1_raw_per_H", "log_mu1_per_H", "log_mu2_per_H"};
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const double V : vs) {
      const auto sel = select_case(V, s);
      const auto b = theorem2_bound(V, s, 1.0, true);
      std::vector<Cell> row = {V, std::string(to_string(sel.id)), sel.lo, sel.hi, b.log_value,
                               s.logH + b.log_value, flag(b.vacuous)};
      if (sel.id != LargeValueCase::out_of_range) {
        const auto plan = parameter_plan(V, s, 0.0);
        const auto mu = mu_split_bounds(plan, s, 1.0);
        row.insert(row.end(), {plan.A, plan.V1, plan.r_s1, plan.r_s2, mu.log_mu1_raw, mu.log_mu1, mu.log_mu2});
      } else {
        row.insert(row.end(), {nan, nan, nan, nan, nan, nan, nan});
      }
      tab.add(std::move(row));
    }
    const auto t1b = theorem1_bound(s, 1.0, cfg.k, cfg.c_value());
    const auto g = gt_factor(s, cfg.c_value());
    man.summary["L1"] = format_double(s.L1);
    man.summary["L2"] = format_double(s.L2);
    man.summary["L3"] = format_double(s.L3);
    man.summary["logH"] = format_double(s.logH);
    man.summary["v_ceiling"] = format_double(s.v_ceiling());
    man.summary["moment_log_upper_bound_per_H"] = format_double(t1b.log_value);
    man.summary["G"] = format_double(g.G);
    man.summary["U_star"] = format_double(g.u_star(cfg.k));
    man.timings["large_values"] = detail::seconds_since(t0);
  } else {  // audit
    const auto s = detail::scale_of(cfg);
    const auto vs = detail::v_values(cfg, &s);
    const auto t0 = detail::Clock::now();
    const auto rows = audit_proof_chain(s, vs);
    man.timings["large_values"] = detail::seconds_since(t0);
    tab.columns = {"V",           "case",        "A",           "r_s1",          "r_s2",
                   "v_over_a_over_l3", "length_ok", "s2_power_ok", "mertens_ok", "stirling_s1",
                   "stirling_s2", "stirling_in_bracket", "log_s2_ratio", "exponent_step", "case3_chain",
                   "deep_stirling_step"};
    for (const auto& r : rows) {
      tab.add({r.V, std::string(to_string(r.case_id)), r.A, r.r_s1, r.r_s2, r.v_over_a_over_l3, flag(r.length_ok),
               flag(r.s2_power_ok), flag(r.mertens_ok), r.stirling_s1, r.stirling_s2, flag(r.stirling_in_bracket),
               r.log_s2_ratio, flag(r.exponent_step), flag(r.case3_chain), flag(r.deep_stirling_step)});
    }
  }

  man.config = cfg.to_json();
  man.constants = constants_json(cfg);
  man.manifest_hash =
      fnv1a_hex(cfg.inputs_json().dump() + "|" + man.constants.dump() + "|" + kArtifactVersion);
  man.wall_time_s = detail::seconds_since(t_start);
  return res;
}

inline std::string render_csv(const RunResult& res) {
  std::string s = "# manifest-hash: " + res.manifest.manifest_hash + "\n";
  for (std::size_t i = 0; i < res.table.columns.size(); ++i) s += (i ? "," : "") + res.table.columns[i];
  s += "\n";
  for (const auto& row : res.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + format_cell(row[i]);
    s += "\n";
  }
  return s;
}

inline nlohmann::ordered_json render_json(const RunResult& res) {
  nlohmann::ordered_json j;
  j["manifest"] = res.manifest.to_json();
  j["columns"] = res.table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : res.table.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& c : row) {
      if (const auto* d = std::get_if<double>(&c); d && std::isfinite(*d)) {
        r.push_back(*d);
      } else if (const auto* i = std::get_if<std::int64_t>(&c)) {
        r.push_back(*i);
      } else {
        r.push_back(format_cell(c));
      }
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  f << content;
  if (!f) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace detail

// Writes <out> (CSV or JSON). CSV output gets a sibling <out>.manifest.json.
// Returns the paths written.
inline std::vector<std::filesystem::path> emit_report(const RunResult& res, const std::string& out,
                                                      const std::string& format) {
  if (res.table.rows.empty()) throw DomainError("emit_report: no results to write");
  if (out.empty()) throw DomainError("emit_report: no output path");
  const std::filesystem::path path(out);
  if (format == "json") {
    detail::write_file(path, render_json(res).dump(2) + "\n");
    return {path};
  }
  if (format != "csv") throw DomainError("emit_report: format must be csv or json");
  const std::filesystem::path manifest_path = path.string() + ".manifest.json";
  detail::write_file(path, render_csv(res));
  detail::write_file(manifest_path, res.manifest.to_json().dump(2) + "\n");
  return {path, manifest_path};
}

// CLI exit code for an exception: 2 config/domain, 3 capacity, 4 numerical, 1 other.
inline int exit_code_for(const std::exception& e) {
  if (const auto* z = dynamic_cast<const Error*>(&e)) {
    switch (z->kind()) {
      case ErrorKind::domain: return 2;
      case ErrorKind::capacity: return 3;
      case ErrorKind::numerical: return 4;
    }
  }
  return 1;
}

}  // namespace zetalab
