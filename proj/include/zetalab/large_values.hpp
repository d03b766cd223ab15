#pragma once

// Large values of log|zeta(1/2+it)| on [T, T+H], H = T^theta.
//
// mu(T,H,V) is the measure of t in [T, T+H] with log|zeta(1/2+it)| >= V. For
// 10 sqrt(L2) <= V <= 3 log 2T / (8 log log 2T) the conditional bounds are
//
//   case 1, V <= L2:               H V/sqrt(L2) exp(-(V^2/L2)(1 - 7/(2 theta L3)))
//   case 2, V <= theta L2 L3 / 2:  H exp(-(V^2/L2)(1 - 7V/(4 theta L2 L3))^2)
//   case 3, above:                 H exp(-(theta/20) V log V)
//
// with L2 = log log T, L3 = log log log T. Implied constants are taken as 1.
// Everything is evaluated in log space from a LogScale so the formulas can be
// exercised at scales (L2 = 1e3, say) where T itself is not representable.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zetalab/arith.hpp"
#include "zetalab/error.hpp"
#include "zetalab/grid.hpp"
#include "zetalab/zeta.hpp"

namespace zetalab {

enum class LargeValueCase { out_of_range = 0, one = 1, two = 2, three = 3 };

inline const char* to_string(LargeValueCase c) {
  switch (c) {
    case LargeValueCase::one: return "1";
    case LargeValueCase::two: return "2";
    case LargeValueCase::three: return "3";
    default: return "out_of_range";
  }
}

// Admissible V-range limits at a scale.
struct VRange {
  double lower = 0.0;    // 10 sqrt(L2)
  double case1_hi = 0.0; // L2
  double case2_hi = 0.0; // theta L2 L3 / 2
  double upper = 0.0;    // 3 log 2T / (8 log log 2T); may be +inf
  bool empty() const { return !(lower <= upper); }
};

inline VRange v_range(const LogScale& s) {
  return {10.0 * std::sqrt(s.L2), s.L2, 0.5 * s.theta * s.L2 * s.L3, s.v_ceiling()};
}

struct CaseSelection {
  LargeValueCase id = LargeValueCase::out_of_range;
  double lo = 0.0;  // admissible V-range of the selected case (whole range if out of range)
  double hi = 0.0;
};

inline CaseSelection select_case(double V, const LogScale& s) {
  const VRange r = v_range(s);
  if (!(V >= r.lower && V <= r.upper)) return {LargeValueCase::out_of_range, r.lower, r.upper};
  if (V <= r.case1_hi) return {LargeValueCase::one, r.lower, std::min(r.case1_hi, r.upper)};
  if (V <= r.case2_hi) return {LargeValueCase::two, r.case1_hi, std::min(r.case2_hi, r.upper)};
  return {LargeValueCase::three, std::max(r.case1_hi, r.case2_hi), r.upper};
}

struct ParameterPlan {
  LargeValueCase case_id = LargeValueCase::out_of_range;
  double V = 0.0;
  double A = 0.0;
  // x = H^{A/V}, z = x^{1/L2}. Stored as log and log-log since x overflows at
  // symbolic scales; log z = log x / L2 holds exactly as loglog_z = loglog_x - L3.
  double log_x = 0.0;
  double loglog_x = 0.0;
  double log_z = 0.0;
  double loglog_z = 0.0;
  double V1 = 0.0;    // V (1 - 7/(8 A theta))
  double r_s1 = 0.0;  // integer-valued; doubles because V can exceed 2^63
  double r_s2 = 0.0;
  bool s1_deep = false;  // case 3 with V > (2/theta) L2^2, r_s1 = [V/2]

  struct Flags {
    bool A_ge_1 = false;
    bool length_ok = false;         // A r_s1 / (V L2) <= 1
    bool r_s2_admissible = false;  // r_s2 A <= V
    bool r_s1_positive = false;
    bool r_s2_positive = false;
    std::optional<bool> mertens_ok;  // sum_{p<=z} 1/p <= L2, when z is small enough to sieve
  } flags;
  std::optional<double> mertens_z;

  double x() const { return std::exp(log_x); }
  double z() const { return std::exp(log_z); }
};

inline constexpr double kMertensSieveCap = 1e9;

inline ParameterPlan parameter_plan(double V, const LogScale& s, double mertens_cap = kMertensSieveCap) {
  const auto sel = select_case(V, s);
  if (sel.id == LargeValueCase::out_of_range) {
    const VRange r = v_range(s);
    throw DomainError("parameter_plan: V = " + std::to_string(V) + " outside the admissible range [" +
                      std::to_string(r.lower) + ", " + std::to_string(r.upper) + "]");
  }
  ParameterPlan p;
  p.case_id = sel.id;
  p.V = V;
  switch (sel.id) {
    case LargeValueCase::one: p.A = 0.5 * s.L3; break;
    case LargeValueCase::two: p.A = s.L2 * s.L3 / (2.0 * V); break;
    default: p.A = 2.0 / s.theta; break;
  }
  p.loglog_x = std::log(p.A / V) + std::log(s.theta) + s.L2;
  p.loglog_z = p.loglog_x - s.L3;
  p.log_x = std::exp(p.loglog_x);
  p.log_z = std::exp(p.loglog_z);
  p.V1 = V * (1.0 - 7.0 / (8.0 * p.A * s.theta));
  p.s1_deep = sel.id == LargeValueCase::three && V > 2.0 / s.theta * s.L2 * s.L2;
  p.r_s1 = p.s1_deep ? std::floor(V / 2.0) : std::floor(p.V1 * p.V1 / s.L2);
  p.r_s2 = std::floor(V / p.A - 1.0);

  p.flags.A_ge_1 = p.A >= 1.0;
  p.flags.length_ok = p.A * p.r_s1 / (V * s.L2) <= 1.0;
  p.flags.r_s2_admissible = p.r_s2 * p.A <= V;
  p.flags.r_s1_positive = p.r_s1 >= 1.0;
  p.flags.r_s2_positive = p.r_s2 >= 1.0;
  if (p.log_z <= std::log(mertens_cap)) {
    const auto z = static_cast<std::uint64_t>(std::floor(std::exp(p.log_z)));
    p.mertens_z = mertens_sum_streaming(z);
    p.flags.mertens_ok = *p.mertens_z <= s.L2;
  }
  return p;
}

struct LogBound {
  double log_value = 0.0;
  double value = 0.0;  // exp(log_value); 0 or +inf when not representable
  LargeValueCase formula = LargeValueCase::out_of_range;
  bool vacuous = false;  // bound >= H, i.e. no information
};

namespace detail {

inline LogBound make_bound(double log_value, double log_H, LargeValueCase f) {
  return {log_value, std::exp(log_value), f, log_value >= log_H};
}

}  // namespace detail

// The three formulas individually, as log-values.
inline double log_bound_case1(double V, const LogScale& s, double log_H) {
  return log_H + std::log(V) - 0.5 * std::log(s.L2) - V * V / s.L2 * (1.0 - 7.0 / (2.0 * s.theta * s.L3));
}

inline double log_bound_case2(double V, const LogScale& s, double log_H) {
  const double f = 1.0 - 7.0 * V / (4.0 * s.theta * s.L2 * s.L3);
  return log_H - V * V / s.L2 * f * f;
}

inline double log_bound_case3(double V, const LogScale& s, double log_H) {
  return log_H - s.theta / 20.0 * V * std::log(V);
}

// Case-appropriate bound. Out-of-range V throws unless diagnostic is set, in
// which case the formula is chosen by position relative to L2 and theta L2 L3/2.
inline LogBound theorem2_bound(double V, const LogScale& s, double H, bool diagnostic = false) {
  if (!(H > 0.0)) throw DomainError("theorem2_bound: H must be positive");
  if (!(V > 0.0)) throw DomainError("theorem2_bound: V must be positive");
  auto sel = select_case(V, s);
  if (sel.id == LargeValueCase::out_of_range) {
    if (!diagnostic) {
      throw DomainError("theorem2_bound: V = " + std::to_string(V) + " outside the admissible range");
    }
    const VRange r = v_range(s);
    sel.id = V <= r.case1_hi ? LargeValueCase::one
             : V <= r.case2_hi ? LargeValueCase::two
                               : LargeValueCase::three;
  }
  const double log_H = std::log(H);
  switch (sel.id) {
    case LargeValueCase::one: return detail::make_bound(log_bound_case1(V, s, log_H), log_H, sel.id);
    case LargeValueCase::two: return detail::make_bound(log_bound_case2(V, s, log_H), log_H, sel.id);
    default: return detail::make_bound(log_bound_case3(V, s, log_H), log_H, sel.id);
  }
}

struct MuSplitBounds {
  double log_mu1_raw = 0.0;  // H sqrt(r) (r L2 / (e V1^2))^r at r = r_s1
  double log_mu1 = 0.0;       // H sqrt(V)/L2 exp(-V1^2/L2), or H exp(-V log V / 10) when deep
  double log_mu2 = 0.0;       // H exp(-(V/(2A)) log V)
  bool mu1_deep = false;
};

// log of H sqrt(r) (r L2 / (e V1^2))^r.
inline double log_mu1_raw(double r, double V1, const LogScale& s, double log_H) {
  return log_H + 0.5 * std::log(r) + r * (std::log(r) + std::log(s.L2) - 1.0 - 2.0 * std::log(V1));
}

inline MuSplitBounds mu_split_bounds(const ParameterPlan& plan, const LogScale& s, double H) {
  if (!(H > 0.0)) throw DomainError("mu_split_bounds: H must be positive");
  if (plan.case_id == LargeValueCase::out_of_range) throw DomainError("mu_split_bounds: invalid plan");
  const double log_H = std::log(H);
  const double V = plan.V;
  MuSplitBounds b;
  b.log_mu1_raw = plan.r_s1 >= 1.0 ? log_mu1_raw(plan.r_s1, plan.V1, s, log_H)
                                    : std::numeric_limits<double>::quiet_NaN();
  b.mu1_deep = plan.s1_deep;
  b.log_mu1 = plan.s1_deep ? log_H - 0.1 * V * std::log(V)
                           : log_H + 0.5 * std::log(V) - std::log(s.L2) - plan.V1 * plan.V1 / s.L2;
  b.log_mu2 = log_H - V / (2.0 * plan.A) * std::log(V);
  return b;
}

// r! / (r^r sqrt(r) e^{-r}); decreases from e at r = 1 towards sqrt(2 pi).
inline double stirling_ratio(double r) {
  return std::exp(std::lgamma(r + 1.0) - (r + 0.5) * std::log(r) + r);
}

struct ProofChainRow {
  double V = 0.0;
  LargeValueCase case_id = LargeValueCase::out_of_range;
  double A = 0.0;
  double r_s1 = 0.0;
  double r_s2 = 0.0;
  double v_over_a_over_l3 = 0.0;  // (V/A)/L3; large means V/A << L3 fails, as it must
  bool length_ok = false;
  bool s2_power_ok = false;         // (A/V)^2 r L3 <= (A/V) L3 with r = r_s2
  std::optional<bool> mertens_ok;
  double stirling_s1 = std::numeric_limits<double>::quiet_NaN();  // NaN when r outside [1, 170]
  double stirling_s2 = std::numeric_limits<double>::quiet_NaN();
  bool stirling_in_bracket = true;  // every evaluated ratio in [sqrt(2 pi)(1 - 1/(4r)), e]
  double log_s2_ratio = std::numeric_limits<double>::quiet_NaN();  // log LHS - log RHS
  // V1^2/L2 >= (V^2/L2)(1 - 7/(2 theta L3)) (case 1) and the case-3 chain
  // V1^2/L2 >= V^2/(4 L2) >= theta V L3 / 8 >= (theta/20) V log V on its sub-range.
  std::optional<bool> exponent_step;
  std::optional<bool> case3_chain;
  // sqrt(r)(r L2/(e V1^2))^r <= sqrt(V)(2 L2/(e V))^r with r = [V/2], deep case 3.
  std::optional<bool> deep_stirling_step;
};

namespace detail {

inline bool stirling_bracket_ok(double r, double ratio) {
  const double lo = std::sqrt(2.0 * std::numbers::pi) * (1.0 - 1.0 / (4.0 * r));
  return ratio >= lo && ratio <= std::numbers::e * (1.0 + 1e-15);
}

}  // namespace detail

inline ProofChainRow audit_proof_chain_at(double V, const LogScale& s, double mertens_cap = kMertensSieveCap) {
  ProofChainRow row;
  row.V = V;
  row.case_id = select_case(V, s).id;
  if (row.case_id == LargeValueCase::out_of_range) return row;
  const auto plan = parameter_plan(V, s, mertens_cap);
  row.A = plan.A;
  row.r_s1 = plan.r_s1;
  row.r_s2 = plan.r_s2;
  row.v_over_a_over_l3 = V / plan.A / s.L3;
  row.length_ok = plan.flags.length_ok;
  {
    const double q = plan.A / V;
    row.s2_power_ok = q * q * plan.r_s2 * s.L3 <= q * s.L3;
  }
  row.mertens_ok = plan.flags.mertens_ok;
  auto stirling = [&](double r, double& out) {
    if (r >= 1.0 && r <= 170.0) {
      out = stirling_ratio(r);
      row.stirling_in_bracket = row.stirling_in_bracket && detail::stirling_bracket_ok(r, out);
    }
  };
  stirling(plan.r_s1, row.stirling_s1);
  stirling(plan.r_s2, row.stirling_s2);
  if (plan.r_s2 >= 1.0) {
    const double log_lhs = 2.0 * std::log(plan.A / V) + std::log(plan.r_s2) + std::log(s.L3);
    const double log_rhs = -V / (2.0 * plan.r_s2 * plan.A) * std::log(V);
    row.log_s2_ratio = log_lhs - log_rhs;
  }
  const double e2 = V * V / s.L2;
  const double v1_sq = plan.V1 * plan.V1 / s.L2;
  if (row.case_id == LargeValueCase::one) {
    row.exponent_step = v1_sq >= e2 * (1.0 - 7.0 / (2.0 * s.theta * s.L3)) * (1.0 - 1e-15);
  }
  if (row.case_id == LargeValueCase::three) {
    if (!plan.s1_deep) {
      const double a = e2 / 4.0;
      const double b = s.theta * V * s.L3 / 8.0;
      const double c = s.theta / 20.0 * V * std::log(V);
      row.case3_chain = v1_sq >= a && a >= b && b >= c;
    } else {
      const double r = plan.r_s1;
      const double lhs = 0.5 * std::log(r) + r * (std::log(r * s.L2) - 1.0 - 2.0 * std::log(plan.V1));
      const double rhs = 0.5 * std::log(V) + r * (std::log(2.0 * s.L2) - 1.0 - std::log(V));
      row.deep_stirling_step = lhs <= rhs;
    }
  }
  return row;
}

inline std::vector<ProofChainRow> audit_proof_chain(const LogScale& s, std::span<const double> v_samples,
                                                    double mertens_cap = kMertensSieveCap) {
  std::vector<ProofChainRow> rows;
  rows.reserve(v_samples.size());
  for (const double V : v_samples) rows.push_back(audit_proof_chain_at(V, s, mertens_cap));
  return rows;
}

struct MeasureEstimate {
  double T = 0.0;
  double H = 0.0;
  double V = 0.0;
  double mu_hat = 0.0;
  double crossing_uncertainty = 0.0;
  std::size_t n_points = 0;
};

// mu-hat for each V from |zeta| samples on the grid, thresholding |zeta| >= e^V.
inline std::vector<MeasureEstimate> measure_mu_from_samples(std::span<const double> abs_zeta,
                                                            std::span<const double> v_grid,
                                                            const GridSpec& grid) {
  std::vector<MeasureEstimate> out;
  out.reserve(v_grid.size());
  for (const double V : v_grid) {
    const auto m = measure_fraction(abs_zeta, std::exp(V), grid);
    out.push_back({grid.T, grid.H, V, m.measure, m.uncertainty, grid.count});
  }
  return out;
}

template <class Engine>
std::vector<MeasureEstimate> measure_mu(std::span<const double> v_grid, const GridSpec& grid,
                                        const Engine& engine, int jobs = 1) {
  const auto abs_zeta = sample_grid(grid, [&](double t) { return engine.abs_zeta(t); }, jobs);
  return measure_mu_from_samples(abs_zeta, v_grid, grid);
}

}  // namespace zetalab
