#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "zetalab/grid.hpp"
#include "zetalab/zeta.hpp"

using namespace zetalab;

TEST(BuildGrid, StepFromMeanGap) {
  const auto g = build_grid(1e6, 1e3, 8);
  const double gap = 2.0 * std::numbers::pi / std::log(1e6 / (2.0 * std::numbers::pi));
  EXPECT_NEAR(g.step, gap / 8.0, 1e-15);
  EXPECT_NEAR(g.step, 0.065573, 1e-6);
  EXPECT_EQ(g.count, static_cast<std::size_t>(std::ceil(1e3 / g.step)) + 1);
  EXPECT_LE(g.spacing(), g.step);
  EXPECT_EQ(g.point(0), 1e6);
  EXPECT_EQ(g.point(g.count - 1), 1e6 + 1e3);
  EXPECT_NEAR(build_grid(1e6, 1e3, 1).step, gap, 1e-15);
}

TEST(BuildGrid, DegenerateAndErrors) {
  const auto g = build_grid(1e6, 1e-3, 8);
  EXPECT_EQ(g.count, 2u);
  EXPECT_THROW(build_grid(50.0, 1.0, 8), DomainError);
  EXPECT_THROW(build_grid(1e3, 0.0, 8), DomainError);
  EXPECT_THROW(build_grid(1e3, 2e3, 8), DomainError);
  EXPECT_THROW(build_grid(1e3, 1.0, 0), DomainError);
  EXPECT_THROW(GridSpec::uniform(0.0, 1.0, 1), DomainError);
}

TEST(Integrate, ConstantAndLinearExact) {
  for (double H : {1.0, 37.5, 1e3}) {
    const auto g = build_grid(1e4, H, 8);
    std::vector<double> ones(g.count, 1.0), lin(g.count);
    for (std::size_t i = 0; i < g.count; ++i) lin[i] = g.point(i) - g.T;
    EXPECT_NEAR(integrate_grid(ones, g).value, H, 1e-12 * H);
    EXPECT_NEAR(integrate_grid(lin, g).value, H * H / 2.0, 1e-12 * H * H);
  }
}

TEST(Integrate, OddAndEvenIntervalCounts) {
  // Cubic integrands are exact for both Simpson and the 3/8 tail.
  for (std::size_t n : {2u, 3u, 4u, 5u, 6u, 7u, 64u, 65u}) {
    const auto g = GridSpec::uniform(0.0, 2.0, n);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::pow(g.point(i), 3);
    const double exact = 4.0;
    const double got = integrate_grid(v, g).value;
    if (n == 2) {
      EXPECT_NEAR(got, 8.0, 1e-14);  // single interval: trapezoid
    } else {
      EXPECT_NEAR(got, exact, 1e-12) << n;
    }
  }
}

TEST(Integrate, SineOverPeriod) {
  const auto g = GridSpec::uniform(0.0, 2.0 * std::numbers::pi, 65);
  std::vector<double> v(g.count);
  for (std::size_t i = 0; i < g.count; ++i) v[i] = std::sin(g.point(i));
  EXPECT_NEAR(integrate_grid(v, g).value, 0.0, 1e-6);
  // Closed form for sin over [0, 1]: 1 - cos 1.
  const auto h = GridSpec::uniform(0.0, 1.0, 65);
  std::vector<double> w(h.count);
  for (std::size_t i = 0; i < h.count; ++i) w[i] = std::sin(h.point(i));
  const auto q = integrate_grid(w, h);
  EXPECT_NEAR(q.value, 1.0 - std::cos(1.0), 1e-9);
  EXPECT_GE(q.error, std::abs(q.value - (1.0 - std::cos(1.0))));
}

TEST(Integrate, Linearity) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n01;
  const auto g = GridSpec::uniform(0.0, 3.0, 101);
  std::vector<double> a(g.count), b(g.count), c(g.count);
  for (std::size_t i = 0; i < g.count; ++i) {
    a[i] = n01(rng);
    b[i] = n01(rng);
    c[i] = 2.5 * a[i] - 0.75 * b[i];
  }
  const double lhs = integrate_grid(c, g).value;
  const double rhs = 2.5 * integrate_grid(a, g).value - 0.75 * integrate_grid(b, g).value;
  EXPECT_NEAR(lhs, rhs, 1e-12);
}

TEST(Integrate, LengthMismatch) {
  const auto g = GridSpec::uniform(0.0, 1.0, 10);
  std::vector<double> v(9, 1.0);
  EXPECT_THROW(integrate_grid(v, g), DomainError);
  EXPECT_THROW(measure_fraction(v, 0.5, g), DomainError);
}

TEST(Measure, Examples) {
  const auto g = GridSpec::uniform(0.0, 1.0, 10'001);
  std::vector<double> t(g.count);
  for (std::size_t i = 0; i < g.count; ++i) t[i] = g.point(i);
  EXPECT_EQ(measure_fraction(t, 2.0, g).measure, 0.0);
  EXPECT_NEAR(measure_fraction(t, -1.0, g).measure, 1.0, g.spacing());
  const auto half = measure_fraction(t, 0.5, g);
  EXPECT_NEAR(half.measure, 0.5, g.spacing());
  EXPECT_NEAR(half.uncertainty, g.spacing(), 1e-15);
}

TEST(Measure, MonotoneInThreshold) {
  const auto g = build_grid(1e5, 200.0, 8);
  const RiemannSiegelEngine eng;
  const auto v = sample_grid(g, [&](double t) { return eng.abs_zeta(t); });
  double prev = 1e300;
  for (double th = 0.0; th < 10.0; th += 0.1) {
    const double m = measure_fraction(v, th, g).measure;
    ASSERT_LE(m, prev);
    prev = m;
  }
}

TEST(Sampling, IndependentOfJobCount) {
  const auto g = build_grid(1e6, 1e4, 8);  // > 2 chunks
  ASSERT_GT(g.count, 2 * kChunkPoints);
  const RiemannSiegelEngine eng;
  const auto f = [&](double t) { return eng.abs_zeta(t); };
  const auto a = sample_grid(g, f, 1);
  const auto b = sample_grid(g, f, 3);
  const auto c = sample_grid(g, f, 8);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
}

TEST(Sampling, PropagatesWorkerExceptions) {
  const auto g = GridSpec::uniform(0.0, 1.0, 3 * kChunkPoints);
  const auto f = [](double t) -> double {
    if (t > 0.9) throw NumericalError("boom");
    return t;
  };
  EXPECT_THROW(sample_grid(g, f, 4), NumericalError);
}

TEST(Quadrature, ErrorEstimateCoversRefinement) {
  // Doubling m moves the second moment by less than the reported estimate on
  // at least 95% of random intervals.
  std::mt19937_64 rng(20261015);
  std::uniform_real_distribution<double> u(1e4, 1e6);
  const RiemannSiegelEngine eng;
  int covered = 0;
  const int trials = 40;
  for (int i = 0; i < trials; ++i) {
    const double T = u(rng);
    const auto g8 = build_grid(T, 50.0, 8);
    const auto g16 = build_grid(T, 50.0, 16);
    auto sq = [&](double t) { return std::pow(eng.abs_zeta(t), 2); };
    const auto q8 = integrate_grid(sample_grid(g8, sq), g8);
    const auto q16 = integrate_grid(sample_grid(g16, sq), g16);
    covered += std::abs(q16.value - q8.value) < q8.error;
  }
  EXPECT_GE(covered, static_cast<int>(std::ceil(0.95 * trials)));
}
