#pragma once

// Uniform grids over [T, T + H] tied to the mean zero spacing of Z(t),
// composite Simpson quadrature with a half-resolution error estimate, and
// superlevel-set measures.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <numbers>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "zetalab/error.hpp"
#include "zetalab/summation.hpp"

namespace zetalab {

inline constexpr int kDefaultOversample = 8;
inline constexpr std::size_t kChunkPoints = std::size_t{1} << 16;

struct GridSpec {
  double T = 0.0;
  double H = 0.0;
  int oversample = 0;  // m; 0 for grids built by point count
  double step = 0.0;   // nominal step (2 pi / log(T / 2 pi)) / m
  std::size_t count = 0;

  // Actual spacing H / (count - 1) <= step, so the last point is T + H.
  double spacing() const noexcept { return H / static_cast<double>(count - 1); }

  double point(std::size_t i) const noexcept {
    return i + 1 == count ? T + H : T + static_cast<double>(i) * spacing();
  }

  // Uniform grid of `count` points on [a, a + H], no height restriction.
  static GridSpec uniform(double a, double H, std::size_t count) {
    if (!(H > 0.0)) throw DomainError("GridSpec::uniform: H must be positive");
    if (count < 2) throw DomainError("GridSpec::uniform: need at least 2 points");
    GridSpec g;
    g.T = a;
    g.H = H;
    g.count = count;
    g.step = g.spacing();
    return g;
  }
};

inline double mean_zero_gap(double T) { return 2.0 * std::numbers::pi / std::log(T / (2.0 * std::numbers::pi)); }

inline GridSpec build_grid(double T, double H, int m = kDefaultOversample) {
  if (!(T >= 100.0)) throw DomainError("build_grid: T must be >= 100");
  if (!(H > 0.0 && H <= T)) throw DomainError("build_grid: need 0 < H <= T");
  if (m < 1) throw DomainError("build_grid: oversample m must be >= 1");
  GridSpec g;
  g.T = T;
  g.H = H;
  g.oversample = m;
  g.step = mean_zero_gap(T) / m;
  g.count = static_cast<std::size_t>(std::ceil(H / g.step)) + 1;
  return g;
}

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

namespace detail {

// Composite rule over n intervals of v taken at the given stride, spacing h:
// Simpson on an even number of intervals, Simpson 3/8 on the final three when
// the count is odd, trapezoid for a single interval.
inline double composite_rule(std::span<const double> v, std::size_t stride, std::size_t n, double h) {
  auto at = [&](std::size_t i) { return v[i * stride]; };
  if (n == 0) return 0.0;
  if (n == 1) return 0.5 * h * (at(0) + at(1));
  const std::size_t simpson_n = (n % 2 == 0) ? n : n - 3;
  CompensatedSum s;
  if (simpson_n > 0) {
    s.add(at(0));
    s.add(at(simpson_n));
    for (std::size_t i = 1; i < simpson_n; ++i) s.add((i % 2 == 1 ? 4.0 : 2.0) * at(i));
  }
  double total = s.value() * h / 3.0;
  if (simpson_n != n) {
    const std::size_t j = simpson_n;
    total += 3.0 * h / 8.0 * (at(j) + 3.0 * at(j + 1) + 3.0 * at(j + 2) + at(j + 3));
  }
  return total;
}

}  // namespace detail

// Quadrature over a uniform sampling with spacing h. The error estimate is
// |fine - coarse| on the largest even prefix, coarse using every other point.
inline QuadratureResult integrate_uniform(std::span<const double> values, double h) {
  if (values.size() < 2) throw DomainError("integrate_uniform: need at least 2 samples");
  const std::size_t n = values.size() - 1;
  QuadratureResult out;
  out.value = detail::composite_rule(values, 1, n, h);
  const std::size_t n_even = n - n % 2;
  if (n_even >= 2) {
    const double fine = detail::composite_rule(values, 1, n_even, h);
    const double coarse = detail::composite_rule(values, 2, n_even / 2, 2.0 * h);
    out.error = std::abs(fine - coarse);
  }
  return out;
}

inline QuadratureResult integrate_grid(std::span<const double> values, const GridSpec& spec) {
  if (values.size() != spec.count) {
    throw DomainError("integrate_grid: " + std::to_string(values.size()) +
                      " values for a grid of " + std::to_string(spec.count) + " points");
  }
  return integrate_uniform(values, spec.spacing());
}

struct MeasureResult {
  double measure = 0.0;
  double uncertainty = 0.0;
};

// spacing * #{i : values[i] >= threshold}, with spacing * #crossings as the
// resolution indicator.
inline MeasureResult measure_fraction(std::span<const double> values, double threshold,
                                      const GridSpec& spec) {
  if (values.size() != spec.count) {
    throw DomainError("measure_fraction: value count does not match the grid");
  }
  std::size_t above = 0;
  std::size_t crossings = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const bool a = values[i] >= threshold;
    above += a;
    if (i > 0 && a != (values[i - 1] >= threshold)) ++crossings;
  }
  const double h = spec.spacing();
  return {h * static_cast<double>(above), h * static_cast<double>(crossings)};
}

// Evaluates f at every grid point. Chunks of at most kChunkPoints are handed to
// `jobs` worker threads; each point is written independently, so the result is
// identical for any job count.
template <class F>
std::vector<double> sample_grid(const GridSpec& spec, const F& f, int jobs = 1) {
  std::vector<double> out(spec.count);
  const std::size_t n_chunks = (spec.count + kChunkPoints - 1) / kChunkPoints;
  auto run_chunk = [&](std::size_t c) {
    const std::size_t lo = c * kChunkPoints;
    const std::size_t hi = std::min(spec.count, lo + kChunkPoints);
    for (std::size_t i = lo; i < hi; ++i) out[i] = f(spec.point(i));
  };
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || n_chunks == 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
    return out;
  }
  const std::size_t n_workers = std::min(workers, n_chunks);
  std::vector<std::exception_ptr> failures(n_workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < n_workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t c = w; c < n_chunks; c += n_workers) run_chunk(c);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : failures) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace zetalab
