#pragma once

// Moments I_k(T,H) = int_T^{T+H} |zeta(1/2+it)|^{2k} dt: direct quadrature,
// the conditional upper bound H (log T)^{k^2 (1 + c/L3)}, the lower bound
// H (log H)^{k^2}, the Littlewood envelope, and the recombination of I_k from
// superlevel measures on the grid U_j = k L2 / 2 + j / L3.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "zetalab/arith.hpp"
#include "zetalab/constants.hpp"
#include "zetalab/error.hpp"
#include "zetalab/grid.hpp"
#include "zetalab/summation.hpp"

namespace zetalab {

struct MomentEstimate {
  double T = 0.0;
  double H = 0.0;
  double k = 0.0;
  double value = 0.0;
  double quad_error = 0.0;
  std::size_t n_points = 0;
  int m = 0;
};

namespace detail {

inline void require_grid_covers(const GridSpec& grid, double T, double H, const char* who) {
  const double tol = 1e-12 * std::max(1.0, T + H);
  if (std::abs(grid.T - T) > tol || std::abs(grid.H - H) > tol) {
    throw DomainError(std::string(who) + ": grid does not cover [T, T + H]");
  }
}

}  // namespace detail

inline MomentEstimate moment_from_samples(std::span<const double> abs_zeta, double k, const GridSpec& grid) {
  if (!(k > 0.0)) throw DomainError("moment_integral: k must be positive");
  std::vector<double> f(abs_zeta.size());
  std::transform(abs_zeta.begin(), abs_zeta.end(), f.begin(), [k](double a) { return std::pow(a, 2.0 * k); });
  const auto q = integrate_grid(f, grid);
  if (!std::isfinite(q.value)) {
    throw NumericalError("moment_integral: |zeta|^{2k} overflows double at k = " + std::to_string(k));
  }
  return {grid.T, grid.H, k, q.value, q.error, grid.count, grid.oversample};
}

template <class Engine>
MomentEstimate moment_integral(double T, double H, double k, const GridSpec& grid, const Engine& engine,
                               int jobs = 1) {
  if (!(k > 0.0)) throw DomainError("moment_integral: k must be positive");
  detail::require_grid_covers(grid, T, H, "moment_integral");
  const auto abs_zeta = sample_grid(grid, [&](double t) { return engine.abs_zeta(t); }, jobs);
  return moment_from_samples(abs_zeta, k, grid);
}

// Default surrogate for the O(1/L3) in the exponent: the case-1 factor 7/(2 theta).
inline double default_c_surrogate(double theta) { return 7.0 / (2.0 * theta); }

struct BoundValue {
  double log_value = 0.0;
  double value = 0.0;  // exp(log_value); +inf when not representable
};

// log H + k^2 (1 + c/L3) L2.
inline BoundValue theorem1_bound(const LogScale& s, double H, double k, double c_surrogate) {
  if (!(k > 0.0)) throw DomainError("theorem1_bound: k must be positive");
  if (!(H > 0.0)) throw DomainError("theorem1_bound: H must be positive");
  const double lv = std::log(H) + k * k * (1.0 + c_surrogate / s.L3) * s.L2;
  return {lv, std::exp(lv)};
}

// H (log H)^{k^2}.
inline double rb_lower_bound(double H, double k) {
  if (!(H > std::numbers::e)) throw DomainError("rb_lower_bound: H must exceed e");
  return H * std::pow(std::log(H), k * k);
}

// exp(C log t / log log t).
inline double littlewood_envelope(double t, double C = kLittlewoodC) {
  if (!(t > std::exp(std::numbers::e))) throw DomainError("littlewood_envelope: t must exceed e^e");
  const double lt = std::log(t);
  return std::exp(C * lt / std::log(lt));
}

struct GtFactor {
  double G = 0.0;  // (1 + c/L3) / L2
  // Maximiser of 2kU - U^2 G.
  double u_star(double k) const { return k / G; }
};

inline GtFactor gt_factor(const LogScale& s, double c_surrogate) {
  return {(1.0 + c_surrogate / s.L3) / s.L2};
}

struct DyadicAudit {
  double T = 0.0;
  double H = 0.0;
  double k = 0.0;
  double step = 0.0;             // 1 / L3
  std::vector<double> u_grid;    // U_j = k L2 / 2 + j step, up to the observed max of log|zeta|
  std::vector<MeasureResult> mu_at_u;
  double trivial_part = 0.0;     // H (log T)^{k^2}
  double exceedance = 0.0;       // sum_j (mu(U_j) - mu(U_{j+1})) e^{2k U_{j+1}}
  double recombined = 0.0;       // trivial_part + exceedance
  double sum_form = 0.0;         // trivial_part + sum_j mu(U_j) e^{2k (U_j + step)}
  double max_form = 0.0;         // trivial_part + L3 max_j mu(U_j) e^{2k (U_j + step)}
  double direct = 0.0;           // quadrature of |zeta|^{2k}
  double direct_error = 0.0;
};

// Recombination from |zeta| samples on the grid. Each sample with
// log|zeta| < U_0 contributes at most e^{2k U_0} = (log T)^{k^2}; a sample in
// [U_j, U_{j+1}) contributes at most e^{2k U_{j+1}}.
inline DyadicAudit dyadic_recombination(double T, double H, double k, std::span<const double> abs_zeta,
                                        const GridSpec& grid, const LogScale& s) {
  if (!(k > 0.0)) throw DomainError("dyadic_recombination: k must be positive");
  detail::require_grid_covers(grid, T, H, "dyadic_recombination");
  if (abs_zeta.size() != grid.count) throw DomainError("dyadic_recombination: sample count does not match the grid");

  DyadicAudit a;
  a.T = T;
  a.H = H;
  a.k = k;
  a.step = 1.0 / s.L3;
  const double u0 = 0.5 * k * s.L2;
  a.trivial_part = H * std::exp(k * k * s.L2);

  double max_abs = 0.0;
  for (const double v : abs_zeta) max_abs = std::max(max_abs, v);
  const double max_log = max_abs > 0.0 ? std::log(max_abs) : -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0;; ++j) {
    const double u = u0 + static_cast<double>(j) * a.step;
    if (u > max_log) break;
    a.u_grid.push_back(u);
    a.mu_at_u.push_back(measure_fraction(abs_zeta, std::exp(u), grid));
  }

  CompensatedSum cells, sum_form;
  double max_term = 0.0;
  for (std::size_t j = 0; j < a.u_grid.size(); ++j) {
    const double mu = a.mu_at_u[j].measure;
    const double mu_next = j + 1 < a.u_grid.size() ? a.mu_at_u[j + 1].measure : 0.0;
    const double w = std::exp(2.0 * k * (a.u_grid[j] + a.step));
    cells.add((mu - mu_next) * w);
    sum_form.add(mu * w);
    max_term = std::max(max_term, mu * w);
  }
  a.exceedance = cells.value();
  a.recombined = a.trivial_part + a.exceedance;
  a.sum_form = a.trivial_part + sum_form.value();
  a.max_form = a.trivial_part + s.L3 * max_term;

  const auto direct = moment_from_samples(abs_zeta, k, grid);
  a.direct = direct.value;
  a.direct_error = direct.quad_error;
  return a;
}

}  // namespace zetalab
