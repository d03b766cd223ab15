#pragma once

// Upper bound for log|zeta(1/2 + it)| by a smoothed prime-power sum:
//
//   log|zeta(1/2+it)| <= Re sum_{2<=n<=x} Lambda(n) / (n^{1/2 + lambda/log x + it} log n)
//                              * log(x/n) / log x
//                        + (1 + lambda)/2 * log T / log x + O(1/log x),
//
// valid on RH for T <= t <= 2T, 2 <= x <= T^2 and lambda >= lambda0, where
// lambda0 solves e^{-l} = l + l^2/2. The O(1/log x) term has no explicit
// constant; audits add slack / log x with an empirically frozen slack.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <tuple>
#include <vector>

#include "zetalab/arith.hpp"
#include "zetalab/constants.hpp"
#include "zetalab/error.hpp"
#include "zetalab/grid.hpp"
#include "zetalab/summation.hpp"
#include "zetalab/zeta.hpp"

namespace zetalab {

// Unique positive root of e^{-l} - l - l^2/2 (strictly decreasing in l >= 0).
inline double solve_lambda0() {
  auto g = [](double l) { return std::exp(-l) - l - 0.5 * l * l; };
  double lo = 0.1, hi = 1.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  double l = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) l -= g(l) / (-std::exp(-l) - 1.0 - l);
  return l;
}

inline double lambda0() {
  static const double value = solve_lambda0();
  return value;
}

struct MajorantTerms {
  double prime_sum = 0.0;         // Re of the n = p part
  double prime_power_tail = 0.0;  // Re of the n = p^a, a >= 2 part
  double main_term = 0.0;         // (1 + lambda)/2 * log T / log x
  double total = 0.0;
  double x = 0.0;
  double lambda = 0.0;
  double t = 0.0;

  // slack / log x, the allowance for the unstated O(1/log x).
  double slack_budget(double slack) const { return slack / std::log(x); }
};

struct PrimePower {
  std::uint64_t n;
  std::uint32_t p;
  int exponent;
};

// n = p^a <= x with a >= 2, ascending in n.
inline std::vector<PrimePower> higher_prime_powers(double x, const PrimeTable& primes) {
  std::vector<PrimePower> out;
  for (const std::uint32_t p : primes.primes()) {
    if (static_cast<double>(p) * p > x) break;
    std::uint64_t n = static_cast<std::uint64_t>(p) * p;
    for (int a = 2; static_cast<double>(n) <= x; ++a) {
      out.push_back({n, p, a});
      if (n > std::numeric_limits<std::uint64_t>::max() / p) break;
      n *= p;
    }
  }
  std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) { return a.n < b.n; });
  return out;
}

namespace detail {

inline void require_cover(const PrimeTable& primes, double x, const char* who) {
  if (static_cast<double>(primes.limit()) < std::floor(x)) {
    throw DomainError(std::string(who) + ": prime table limit " + std::to_string(primes.limit()) +
                      " does not cover x");
  }
}

// log(x/n)/log x; exactly 0 at n == x.
inline double smoothing_weight(double x, double n, double log_x) { return std::log(x / n) / log_x; }

}  // namespace detail

inline MajorantTerms majorant_rhs(double t, double T, double x, double lambda,
                                  const PrimeTable& primes) {
  if (!(x >= 2.0 && x <= T * T)) throw DomainError("majorant_rhs: need 2 <= x <= T^2");
  if (!(t >= T && t <= 2.0 * T)) throw DomainError("majorant_rhs: need T <= t <= 2T");
  if (!(lambda >= lambda0() - 1e-12)) throw DomainError("majorant_rhs: need lambda >= lambda0");
  detail::require_cover(primes, x, "majorant_rhs");

  const double log_x = std::log(x);
  const double sigma = 0.5 + lambda / log_x;
  CompensatedSum prime_part;
  for (const std::uint32_t p : primes.primes()) {
    if (p > x) break;
    const double lp = std::log(static_cast<double>(p));
    prime_part.add(std::exp(-sigma * lp) * std::cos(t * lp) * detail::smoothing_weight(x, p, log_x));
  }
  CompensatedSum tail;
  for (const auto& pp : higher_prime_powers(x, primes)) {
    const double ln = std::log(static_cast<double>(pp.n));
    tail.add(std::exp(-sigma * ln) * std::cos(t * ln) *
             detail::smoothing_weight(x, static_cast<double>(pp.n), log_x) / pp.exponent);
  }
  MajorantTerms m;
  m.prime_sum = prime_part.value();
  m.prime_power_tail = tail.value();
  m.main_term = 0.5 * (1.0 + lambda) * std::log(T) / log_x;
  m.total = m.prime_sum + m.prime_power_tail + m.main_term;
  m.x = x;
  m.lambda = lambda;
  m.t = t;
  return m;
}

// |sum over n = p^a <= x, a >= 2 of Lambda(n) n^{-sigma-it} (log(x/n)/log x) / log n|.
inline double prime_power_tail(double t, double x, double sigma, const PrimeTable& primes) {
  if (!(sigma >= 0.5)) throw DomainError("prime_power_tail: sigma must be >= 1/2");
  if (!(x >= 2.0)) throw DomainError("prime_power_tail: x must be >= 2");
  detail::require_cover(primes, std::sqrt(x), "prime_power_tail");
  const double log_x = std::log(x);
  CompensatedComplexSum acc;
  for (const auto& pp : higher_prime_powers(x, primes)) {
    const double ln = std::log(static_cast<double>(pp.n));
    const double w = detail::smoothing_weight(x, static_cast<double>(pp.n), log_x);
    acc.add(std::polar(std::exp(-sigma * ln) * w / pp.exponent, -t * ln));
  }
  return std::abs(acc.value());
}

struct SplitSums {
  double s1 = 0.0;  // |sum over p <= z|
  double s2 = 0.0;  // |sum over z < p <= x|
  double z = 0.0;
};

// S1, S2 with weights p^{-1/2 - lambda/log x - it} log(x/p)/log x.
inline SplitSums split_s1_s2(double t, double x, double z, double lambda, const PrimeTable& primes) {
  if (!(z <= x)) throw DomainError("split_s1_s2: split point z exceeds x");
  if (!(x >= 2.0)) throw DomainError("split_s1_s2: x must be >= 2");
  detail::require_cover(primes, x, "split_s1_s2");
  const double log_x = std::log(x);
  const double sigma = 0.5 + lambda / log_x;
  CompensatedComplexSum low, high;
  for (const std::uint32_t p : primes.primes()) {
    if (p > x) break;
    const double lp = std::log(static_cast<double>(p));
    const cplx term = std::polar(std::exp(-sigma * lp) * detail::smoothing_weight(x, p, log_x), -t * lp);
    (p <= z ? low : high).add(term);
  }
  return {std::abs(low.value()), std::abs(high.value()), z};
}

struct MajorantAuditPoint {
  double t = 0.0;
  double log_abs_zeta = 0.0;
  MajorantTerms terms;
  double margin = 0.0;  // total + slack/log x - log|zeta|; +inf at zeros
};

struct Lemma1Audit {
  double T = 0.0;
  double x = 0.0;
  double lambda = 0.0;
  double slack = 0.0;
  std::size_t n_points = 0;
  std::size_t violations = 0;  // margin < 0
  std::size_t zeros = 0;       // margin = +inf
  double min_margin = std::numeric_limits<double>::infinity();
  double t_at_min = 0.0;
  // Margin histogram; bin i counts margins in [edges[i], edges[i+1]).
  std::vector<double> edges = {-std::numeric_limits<double>::infinity(), 0.0, 0.5, 1.0, 2.0, 4.0, 8.0,
                               std::numeric_limits<double>::infinity()};
  std::vector<std::size_t> histogram = std::vector<std::size_t>(7, 0);
  std::vector<MajorantAuditPoint> points;
};

// Pointwise comparison of the majorant against log|zeta| over a grid inside [T, 2T].
template <class Engine>
Lemma1Audit audit_lemma1(double T, double x, double lambda, const GridSpec& grid, double slack,
                         const Engine& engine, const PrimeTable& primes, int jobs = 1) {
  if (!(grid.T >= T && grid.T + grid.H <= 2.0 * T)) {
    throw DomainError("audit_lemma1: grid must lie inside [T, 2T]");
  }
  const auto abs_zeta = sample_grid(grid, [&](double t) { return engine.abs_zeta(t); }, jobs);
  Lemma1Audit audit;
  audit.T = T;
  audit.x = x;
  audit.lambda = lambda;
  audit.slack = slack;
  audit.n_points = grid.count;
  audit.points.reserve(grid.count);
  for (std::size_t i = 0; i < grid.count; ++i) {
    MajorantAuditPoint pt;
    pt.t = grid.point(i);
    pt.log_abs_zeta = log_abs_zeta(CriticalSample{pt.t, abs_zeta[i], abs_zeta[i]});
    pt.terms = majorant_rhs(pt.t, T, x, lambda, primes);
    pt.margin = pt.terms.total + pt.terms.slack_budget(slack) - pt.log_abs_zeta;
    if (std::isinf(pt.margin)) ++audit.zeros;
    if (pt.margin < 0.0) ++audit.violations;
    if (pt.margin < audit.min_margin) {
      audit.min_margin = pt.margin;
      audit.t_at_min = pt.t;
    }
    for (std::size_t b = 0; b + 1 < audit.edges.size(); ++b) {
      if (pt.margin >= audit.edges[b] && (pt.margin < audit.edges[b + 1] || b + 2 == audit.edges.size())) {
        ++audit.histogram[b];
        break;
      }
    }
    audit.points.push_back(pt);
  }
  return audit;
}

}  // namespace zetalab
