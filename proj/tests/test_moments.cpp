#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "zetalab/moments.hpp"
#include "zetalab/zeta.hpp"

using namespace zetalab;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// |Z| scaled by a constant factor.
struct ScaledEngine {
  double factor;
  RiemannSiegelEngine base;
  double abs_zeta(double t) const { return factor * base.abs_zeta(t); }
};

// Smooth integrand bounded below by 1.
struct AboveOneEngine {
  double abs_zeta(double t) const { return 1.5 + std::sin(0.3 * t); }
};

}  // namespace

TEST(MomentIntegral, ConstantIntegrand) {
  const auto grid = build_grid(1e4, 250.0, 8);
  for (double k : {0.5, 1.0, 2.0, 3.7}) {
    const auto m = moment_integral(1e4, 250.0, k, grid, ConstantEngine{1.3});
    EXPECT_LT(rel(m.value, std::pow(1.3, 2.0 * k) * 250.0), 1e-12) << k;
    EXPECT_GE(m.quad_error, 0.0);
    EXPECT_EQ(m.n_points, grid.count);
    EXPECT_EQ(m.m, 8);
  }
}

TEST(MomentIntegral, Contracts) {
  const auto grid = build_grid(1e4, 250.0, 8);
  EXPECT_THROW(moment_integral(1e4, 250.0, 0.0, grid, ConstantEngine{}), DomainError);
  EXPECT_THROW(moment_integral(1e4, 200.0, 1.0, grid, ConstantEngine{}), DomainError);
  EXPECT_THROW(moment_integral(2e4, 250.0, 1.0, grid, ConstantEngine{}), DomainError);
}

TEST(MomentIntegral, HomogeneousAndMonotone) {
  const auto grid = build_grid(2e4, 100.0, 8);
  const auto base = moment_integral(2e4, 100.0, 1.0, grid, RiemannSiegelEngine{});
  const auto scaled = moment_integral(2e4, 100.0, 1.0, grid, ScaledEngine{3.0, {}});
  EXPECT_LT(rel(scaled.value, 9.0 * base.value), 1e-12);
  const auto b2 = moment_integral(2e4, 100.0, 1.5, grid, RiemannSiegelEngine{});
  const auto s2 = moment_integral(2e4, 100.0, 1.5, grid, ScaledEngine{0.5, {}});
  EXPECT_LT(rel(s2.value, std::pow(0.5, 3.0) * b2.value), 1e-12);

  double prev = 0.0;
  for (double k = 0.25; k <= 4.0; k += 0.25) {
    const double v = moment_integral(2e4, 100.0, k, grid, AboveOneEngine{}).value;
    EXPECT_GT(v, prev) << k;
    prev = v;
  }
}

TEST(MomentIntegral, RefinementWithinErrorEstimate) {
  const double T = 3e5, H = 200.0;
  const auto g8 = build_grid(T, H, 8), g16 = build_grid(T, H, 16);
  const auto a = moment_integral(T, H, 1.0, g8, RiemannSiegelEngine{}, 2);
  const auto b = moment_integral(T, H, 1.0, g16, RiemannSiegelEngine{}, 2);
  EXPECT_LT(std::abs(a.value - b.value), 3.0 * a.quad_error);
}

TEST(Theorem1, Bounds) {
  const auto s = LogScale::from_loglog(1000.0, 1.0);
  EXPECT_NEAR(theorem1_bound(s, 5.0, 1.3, 0.0).log_value, std::log(5.0) + 1.69 * 1000.0, 1e-9);
  // Oracle: log H + k^2 (1 + c/L3) L2 by hand with c = 7/2.
  const double oracle = 1000.0 * (1.0 + 3.5 / std::log(1000.0));
  const auto b = theorem1_bound(s, 1.0, 1.0, default_c_surrogate(1.0));
  EXPECT_LT(rel(b.log_value, oracle), 1e-12);
  EXPECT_LT(rel(b.log_value, 1506.6768955537939), 1e-12);
  EXPECT_NEAR(theorem1_bound(s, 2e3, 2.0, 1.0).log_value - theorem1_bound(s, 1e3, 2.0, 1.0).log_value,
              std::log(2.0), 1e-12);
  EXPECT_THROW(theorem1_bound(s, 1.0, 0.0, 1.0), DomainError);
}

TEST(Theorem1, EqualsLowerBoundWhenHEqualsT) {
  for (double T : {1e3, 1e6, 1e12}) {
    const auto s = LogScale::from_height(T, 1.0);
    for (double k : {0.5, 1.0, 2.0}) {
      const auto up = theorem1_bound(s, T, k, 0.0);
      EXPECT_NEAR(up.value / rb_lower_bound(T, k), 1.0, 1e-12);
    }
  }
}

TEST(LowerBound, Examples) {
  const double ee = std::exp(std::numbers::e);
  EXPECT_NEAR(rb_lower_bound(ee, 1.0), ee * std::numbers::e, 1e-12);
  EXPECT_NEAR(rb_lower_bound(1e3, 2.0), 2276920.0094854468, 1e-6);
  EXPECT_NEAR(rb_lower_bound(1e3, 2.0), 1e3 * std::pow(6.9078, 4), 0.01 * 2.277e6);
  double prev = 0.0;
  for (double k = 0.5; k < 4.0; k += 0.5) {
    ASSERT_GT(rb_lower_bound(1e3, k), prev);
    prev = rb_lower_bound(1e3, k);
  }
  EXPECT_THROW(rb_lower_bound(2.0, 1.0), DomainError);
}

TEST(Littlewood, Envelope) {
  EXPECT_EQ(littlewood_envelope(1e6, 0.0), 1.0);
  EXPECT_NEAR(littlewood_envelope(1e6), 7.193, 1e-3);
  EXPECT_NEAR(littlewood_envelope(1e6), 7.1925741993149108, 1e-12);
  double prev = 0.0;
  for (double t = 20.0; t < 1e12; t *= 1.7) {
    const double v = littlewood_envelope(t);
    ASSERT_GT(v, prev);
    prev = v;
  }
  EXPECT_THROW(littlewood_envelope(10.0), DomainError);
}

TEST(GtFactor, Values) {
  const auto s = LogScale::from_loglog(1000.0, 1.0);
  const auto g0 = gt_factor(s, 0.0);
  EXPECT_DOUBLE_EQ(g0.G, 1.0 / 1000.0);
  EXPECT_NEAR(g0.u_star(2.0), 2000.0, 1e-9);
  const auto g = gt_factor(s, 3.5);
  EXPECT_LT(rel(g.G, 0.0015066768955537939), 1e-12);
  const double k = 1.7, u = g.u_star(k);
  auto f = [&](double U) { return 2.0 * k * U - U * U * g.G; };
  for (double d : {1e-3, 1.0, 50.0}) {
    EXPECT_GT(f(u), f(u + d));
    EXPECT_GT(f(u), f(u - d));
  }
}

TEST(Dyadic, ConstantBelowThreshold) {
  const double T = 1e6, H = 100.0, k = 1.0;
  const auto s = LogScale::from_height(T, 0.5);
  const auto grid = build_grid(T, H, 8);
  const double c = 0.9 * std::sqrt(s.L1);  // below (log T)^{k/2}
  const std::vector<double> v(grid.count, c);
  const auto a = dyadic_recombination(T, H, k, v, grid, s);
  EXPECT_TRUE(a.u_grid.empty());
  EXPECT_EQ(a.recombined, a.trivial_part);
  EXPECT_NEAR(a.trivial_part, H * s.L1, 1e-9 * H * s.L1);
  EXPECT_LT(rel(a.direct, c * c * H), 1e-12);
  EXPECT_LE(a.direct, a.trivial_part);
}

TEST(Dyadic, OneBinReproducesConstant) {
  const double T = 1e6, H = 100.0;
  const auto s = LogScale::from_height(T, 0.5);
  const auto grid = build_grid(T, H, 8);
  const double step = 1.0 / s.L3;
  for (double k : {0.5, 1.0, 2.0}) {
    const double c = std::exp(0.5 * k * s.L2 + 2.3 * step);  // strictly inside a cell
    const std::vector<double> v(grid.count, c);
    const auto a = dyadic_recombination(T, H, k, v, grid, s);
    ASSERT_EQ(a.u_grid.size(), 3u);
    const double target = std::pow(c, 2.0 * k) * H;
    EXPECT_GE(a.exceedance, target);
    EXPECT_LE(a.exceedance, target * std::exp(2.0 * k * step) * (1.0 + grid.spacing() / H));
    EXPECT_GE(a.recombined, a.trivial_part);
    EXPECT_LE(a.direct, a.recombined);
    EXPECT_LE(a.recombined, a.sum_form);
  }
}

TEST(Dyadic, Contracts) {
  const auto s = LogScale::from_height(1e6, 0.5);
  const auto grid = build_grid(1e6, 100.0, 8);
  const std::vector<double> short_v(grid.count - 1, 1.0);
  EXPECT_THROW(dyadic_recombination(1e6, 100.0, 1.0, short_v, grid, s), DomainError);
  const std::vector<double> v(grid.count, 1.0);
  EXPECT_THROW(dyadic_recombination(1e6, 90.0, 1.0, v, grid, s), DomainError);
}
