#pragma once

// Prime-supported Dirichlet polynomials P(t) = sum_{p<=x} a(p) p^{-1/2-it},
// their r-th powers P^r = sum_{n<=x^r} a_{r,x}(n) n^{-1/2-it}, and the
// mean-value identity
//   int_T^{T+H} |P|^{2r} dt = H sum |a_{r,x}(n)|^2 / n + O(sum |a_{r,x}(n)|^2)
// together with the factorial bound sum |a_{r,x}(n)|^2/n <= r! (sum |a(p)|^2/p)^r.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "zetalab/arith.hpp"
#include "zetalab/error.hpp"
#include "zetalab/grid.hpp"
#include "zetalab/summation.hpp"
#include "zetalab/zeta.hpp"

namespace zetalab {

inline constexpr std::size_t kDefaultTermCap = 10'000'000;

struct PrimePolynomial {
  double x = 0.0;
  std::vector<std::pair<std::uint64_t, cplx>> coefficients;  // ascending primes <= x

  static PrimePolynomial make(double x, std::vector<std::pair<std::uint64_t, cplx>> coefficients) {
    std::sort(coefficients.begin(), coefficients.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
      const auto p = coefficients[i].first;
      if (!is_prime_trial(p)) {
        throw DomainError("PrimePolynomial: key " + std::to_string(p) + " is not prime");
      }
      if (static_cast<double>(p) > x) {
        throw DomainError("PrimePolynomial: prime " + std::to_string(p) + " exceeds x");
      }
      if (i > 0 && coefficients[i - 1].first == p) {
        throw DomainError("PrimePolynomial: duplicate prime " + std::to_string(p));
      }
    }
    return {x, std::move(coefficients)};
  }

  // a(p) = value for every prime p <= x.
  static PrimePolynomial constant(double x, cplx value) {
    std::vector<std::pair<std::uint64_t, cplx>> c;
    for (std::uint64_t p = 2; static_cast<double>(p) <= x; ++p) {
      if (is_prime_trial(p)) c.emplace_back(p, value);
    }
    return {x, std::move(c)};
  }

  static bool is_prime_trial(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return true;
  }

  // sum |a(p)|^2 / p
  double weighted_norm() const {
    CompensatedSum s;
    for (const auto& [p, a] : coefficients) s.add(std::norm(a) / static_cast<double>(p));
    return s.value();
  }

  // P(t) = sum a(p) p^{-1/2 - it}, evaluated directly.
  cplx evaluate(double t) const {
    CompensatedComplexSum s;
    for (const auto& [p, a] : coefficients) {
      const double lp = std::log(static_cast<double>(p));
      s.add(a * std::polar(1.0 / std::sqrt(static_cast<double>(p)), -t * lp));
    }
    return s.value();
  }
};

struct ExpandedPolynomial {
  int r = 0;
  std::vector<std::pair<std::uint64_t, cplx>> terms;  // ascending n

  cplx evaluate(double t) const {
    CompensatedComplexSum s;
    for (const auto& [n, c] : terms) {
      const double ln = std::log(static_cast<double>(n));
      s.add(c * std::polar(1.0 / std::sqrt(static_cast<double>(n)), -t * ln));
    }
    return s.value();
  }
};

// Exact expansion of P^r by r-fold sparse convolution. Coefficients come out as
// multinomial(r; alpha) * prod a(p_i)^{alpha_i} because every ordered product of
// r primes is visited once.
inline ExpandedPolynomial expand_power(const PrimePolynomial& poly, int r,
                                       std::size_t term_cap = kDefaultTermCap) {
  if (r < 1) throw DomainError("expand_power: r must be >= 1");
  const std::size_t m = poly.coefficients.size();
  if (m > 0) {
    // Number of multisets of size r drawn from m primes.
    double bound = 1.0;
    for (int i = 1; i <= r; ++i) bound *= static_cast<double>(m - 1 + i) / i;
    if (bound > static_cast<double>(term_cap)) {
      throw CapacityError("expand_power: up to " + std::to_string(static_cast<long long>(bound)) +
                          " terms exceed the term cap " + std::to_string(term_cap));
    }
    const double pmax = static_cast<double>(poly.coefficients.back().first);
    if (r * std::log2(pmax) >= 63.0) {
      throw CapacityError("expand_power: x^r exceeds 2^63, keys would overflow 64 bits");
    }
  }
  std::vector<std::pair<std::uint64_t, cplx>> current = {{1, cplx(1.0, 0.0)}};
  if (m == 0) current.clear();
  for (int step = 0; step < r && !current.empty(); ++step) {
    std::unordered_map<std::uint64_t, cplx> next;
    next.reserve(current.size() * m);
    for (const auto& [n, c] : current) {
      for (const auto& [p, a] : poly.coefficients) next[n * p] += c * a;
    }
    current.assign(next.begin(), next.end());
    std::sort(current.begin(), current.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  return {r, std::move(current)};
}

// sum |a_{r,x}(n)|^2 / n, ascending n.
inline double coeff_l2_norm(const ExpandedPolynomial& e) {
  CompensatedSum s;
  for (const auto& [n, c] : e.terms) s.add(std::norm(c) / static_cast<double>(n));
  return s.value();
}

// sum |a_{r,x}(n)|^2, the budget for the off-diagonal part of the mean value.
inline double coeff_l2_plain(const ExpandedPolynomial& e) {
  CompensatedSum s;
  for (const auto& [n, c] : e.terms) s.add(std::norm(c));
  return s.value();
}

// log of H r! (sum |a(p)|^2/p)^r; -inf when the polynomial vanishes.
inline double log_lemma3_rhs(const PrimePolynomial& poly, int r, double H) {
  if (r < 1) throw DomainError("lemma3_rhs: r must be >= 1");
  if (!(H > 0.0)) throw DomainError("lemma3_rhs: H must be positive");
  const double s = poly.weighted_norm();
  if (s == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(H) + std::lgamma(r + 1.0) + r * std::log(s);
}

inline double lemma3_rhs(const PrimePolynomial& poly, int r, double H) {
  const double lv = log_lemma3_rhs(poly, r, H);
  const double v = std::exp(lv);
  if (std::isinf(v)) throw NumericalError("lemma3_rhs: value overflows double (log = " + std::to_string(lv) + ")");
  return v;
}

// Quadrature of |P(t)|^{2r} over the grid, P evaluated directly per point.
inline QuadratureResult poly_moment_numeric(const PrimePolynomial& poly, int r, const GridSpec& grid,
                                            int jobs = 1) {
  if (r < 1) throw DomainError("poly_moment_numeric: r must be >= 1");
  const auto values = sample_grid(
      grid, [&](double t) { return std::pow(std::norm(poly.evaluate(t)), r); }, jobs);
  return integrate_grid(values, grid);
}

struct Lemma3Audit {
  int r = 0;
  double T = 0.0;
  double H = 0.0;
  double numeric = 0.0;
  double numeric_error = 0.0;
  double main_term = 0.0;         // H sum |a_{r,x}(n)|^2 / n
  double off_diagonal = 0.0;      // numeric - main_term
  double off_diagonal_budget = 0.0;  // sum |a_{r,x}(n)|^2
  double factorial_bound = 0.0;   // H r! (sum |a(p)|^2/p)^r
  double ratio_to_main = 0.0;
  double ratio_to_bound = 0.0;
  double residual_to_budget = 0.0;
  bool length_condition = false;  // x^r <= H
};

inline Lemma3Audit audit_lemma3(const PrimePolynomial& poly, int r, const GridSpec& grid, int jobs = 1) {
  const auto expanded = expand_power(poly, r);
  const auto quad = poly_moment_numeric(poly, r, grid, jobs);
  Lemma3Audit a;
  a.r = r;
  a.T = grid.T;
  a.H = grid.H;
  a.numeric = quad.value;
  a.numeric_error = quad.error;
  a.main_term = grid.H * coeff_l2_norm(expanded);
  a.off_diagonal = a.numeric - a.main_term;
  a.off_diagonal_budget = coeff_l2_plain(expanded);
  a.factorial_bound = std::exp(log_lemma3_rhs(poly, r, grid.H));
  a.ratio_to_main = a.main_term > 0.0 ? a.numeric / a.main_term : 0.0;
  a.ratio_to_bound = a.factorial_bound > 0.0 ? a.numeric / a.factorial_bound : 0.0;
  a.residual_to_budget = a.off_diagonal_budget > 0.0 ? std::abs(a.off_diagonal) / a.off_diagonal_budget : 0.0;
  a.length_condition = r * std::log(poly.x) <= std::log(grid.H);
  return a;
}

// Coefficients a(p) = rho e^{i phi} with rho uniform in [0, max_abs] and phi
// uniform, for every prime p <= x. Deterministic for a given engine state.
inline PrimePolynomial random_prime_polynomial(std::mt19937_64& rng, double x, double max_abs = 1.0) {
  std::uniform_real_distribution<double> mod(0.0, max_abs);
  std::uniform_real_distribution<double> arg(0.0, 2.0 * std::numbers::pi);
  auto poly = PrimePolynomial::constant(x, 0.0);
  for (auto& [p, a] : poly.coefficients) {
    const double rho = mod(rng);
    a = std::polar(rho, arg(rng));
  }
  return poly;
}

}  // namespace zetalab
