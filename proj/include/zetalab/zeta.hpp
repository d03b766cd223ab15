#pragma once

// Z(t) and |zeta(1/2 + it)| on the critical line.
//
// Fast path: the Riemann-Siegel formula with up to five remainder terms
// C0..C4. The C_k are polynomials in u = p - 1/2 (p the fractional part of
// sqrt(t / 2 pi)) obtained from the Taylor series of
//   Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p),
// which is entire, so its series about p = 1/2 converges on all of [0, 1].
//
// Oracle: Euler-Maclaurin summation for zeta(s) with the phase theta(t) taken
// from a complex log-gamma, sharing no code with the fast path.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "zetalab/error.hpp"
#include "zetalab/summation.hpp"

namespace zetalab {

using cplx = std::complex<double>;

struct RsConfig {
  // C0..C{n-1}, 0..5. Max |Z_RS - Z_EM| on [50, 5000] is ~2e-4 with 2 terms,
  // ~1.3e-6 with 4 and ~2.2e-7 with 5.
  int n_correction_terms = 5;
  int em_terms = 100;          // minimum Euler-Maclaurin cutoff N for the oracle
  int em_bernoulli_terms = 10; // B_2 .. B_{2m}, m <= 15

  void validate() const {
    if (n_correction_terms < 0 || n_correction_terms > 5) {
      throw DomainError("RsConfig: n_correction_terms must lie in 0..5");
    }
    if (em_terms < 10) throw DomainError("RsConfig: em_terms must be >= 10");
    if (em_bernoulli_terms < 0 || em_bernoulli_terms > 15) {
      throw DomainError("RsConfig: em_bernoulli_terms must lie in 0..15");
    }
  }
};

enum class ZetaMethod { riemann_siegel, euler_maclaurin };

inline const char* to_string(ZetaMethod m) {
  return m == ZetaMethod::riemann_siegel ? "riemann_siegel" : "euler_maclaurin";
}

struct CriticalSample {
  double t = 0.0;
  double z_value = 0.0;
  double abs_zeta = 0.0;
  ZetaMethod method = ZetaMethod::riemann_siegel;
};

// Below this height z_function() answers from the oracle.
inline constexpr double kRsMinHeight = 50.0;
// Phase error of theta(t) - t log n grows like t * ulp; at 1e12 it is ~1e-4.
inline constexpr double kRsMaxHeight = 1e12;
// Euler-Maclaurin costs O(t) per point.
inline constexpr double kEmMaxHeight = 1e5;

// Riemann-Siegel theta by its asymptotic series; |error| < 1e-8 for t >= 50
// (the first omitted term is 31 / (80640 t^5)).
inline double rs_theta(double t) {
  if (!(t >= 1.0)) throw DomainError("rs_theta: t must be >= 1");
  const double pi = std::numbers::pi;
  const double t2 = t * t;
  return 0.5 * t * std::log(t / (2.0 * pi)) - 0.5 * t - pi / 8.0 + 1.0 / (48.0 * t) +
         7.0 / (5760.0 * t * t2);
}

namespace detail {

// B_2, B_4, ..., B_30.
inline constexpr std::array<double, 15> kBernoulliEven = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

// Stirling series for log Gamma after shifting Re z above 20. The principal
// logs of the shift keep the result continuous along vertical lines.
inline cplx log_gamma(cplx z) {
  cplx shift = 0.0;
  while (z.real() < 20.0) {
    shift += std::log(z);
    z += 1.0;
  }
  const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
  cplx acc = (z - 0.5) * std::log(z) - z + half_log_2pi;
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx pw = inv;
  for (int j = 1; j <= 10; ++j) {
    acc += kBernoulliEven[j - 1] / (2.0 * j * (2.0 * j - 1.0)) * pw;
    pw *= inv2;
  }
  return acc - shift;
}

// Coefficients (ascending powers of u) of C_0..C_4 as polynomials in u = p - 1/2.
struct RsRemainderPolys {
  static constexpr int kDegree = 90;
  std::array<std::array<double, kDegree + 1>, 5> coef{};

  RsRemainderPolys() {
    const double pi = std::numbers::pi;
    // Taylor coefficients of Psi in u by a Cauchy integral on |u| = 1.
    constexpr int kNodes = 256;
    constexpr int kTerms = kDegree + 13;
    std::array<double, kTerms + 1> psi{};
    std::vector<cplx> samples(kNodes);
    for (int j = 0; j < kNodes; ++j) {
      const cplx u = std::polar(1.0, 2.0 * pi * j / kNodes);
      samples[j] = -std::cos(2.0 * pi * u * u - 5.0 * pi / 8.0) / std::cos(2.0 * pi * u);
    }
    for (int n = 0; n <= kTerms; ++n) {
      cplx acc = 0.0;
      for (int j = 0; j < kNodes; ++j) acc += samples[j] * std::polar(1.0, -2.0 * pi * j * n / kNodes);
      psi[n] = acc.real() / kNodes;
    }
    // k-th derivative as a polynomial in u.
    auto deriv = [&](int k) {
      std::array<double, kDegree + 1> d{};
      for (int m = 0; m <= kDegree; ++m) {
        double f = 1.0;
        for (int i = 1; i <= k; ++i) f *= static_cast<double>(m + i);
        d[m] = psi[m + k] * f;
      }
      return d;
    };
    const double p2 = pi * pi, p4 = p2 * p2, p6 = p4 * p2;
    const double p8 = p4 * p4;
    const auto d0 = deriv(0), d1 = deriv(1), d2 = deriv(2), d3 = deriv(3), d4 = deriv(4),
               d5 = deriv(5), d6 = deriv(6), d8 = deriv(8), d9 = deriv(9), d12 = deriv(12);
    for (int m = 0; m <= kDegree; ++m) {
      coef[0][m] = d0[m];
      coef[1][m] = -d3[m] / (96.0 * p2);
      coef[2][m] = d2[m] / (64.0 * p2) + d6[m] / (18432.0 * p4);
      coef[3][m] = -d1[m] / (64.0 * p2) - d5[m] / (3840.0 * p4) - d9[m] / (5308416.0 * p6);
      coef[4][m] = d0[m] / (128.0 * p2) + 19.0 * d4[m] / (24576.0 * p4) +
                   11.0 * d8[m] / (5898240.0 * p6) + d12[m] / (2038431744.0 * p8);
    }
  }

  double eval(int k, double u) const {
    double acc = 0.0;
    for (int m = kDegree; m >= 0; --m) acc = acc * u + coef[k][m];
    return acc;
  }
};

inline const RsRemainderPolys& rs_remainder_polys() {
  static const RsRemainderPolys polys;
  return polys;
}

}  // namespace detail

// Riemann-Siegel remainder coefficient C_k(p), k = 0..4, p in [0, 1).
inline double rs_coefficient(int k, double p) {
  if (k < 0 || k > 4) throw DomainError("rs_coefficient: k must lie in 0..4");
  return detail::rs_remainder_polys().eval(k, p - 0.5);
}

// Raw Riemann-Siegel evaluation of Z(t) with `terms` remainder terms. Defined
// for t >= 2 pi (at least one main-sum term); accuracy is the caller's concern.
inline double riemann_siegel_z(double t, int terms) {
  if (!(t >= 2.0 * std::numbers::pi)) throw DomainError("riemann_siegel_z: t must be >= 2 pi");
  if (t > kRsMaxHeight) {
    throw CapacityError("riemann_siegel_z: t exceeds the precision cap 1e12");
  }
  if (terms < 0 || terms > 5) throw DomainError("riemann_siegel_z: terms must lie in 0..5");
  const double tau = t / (2.0 * std::numbers::pi);
  const double a = std::sqrt(tau);
  const auto n_terms = static_cast<std::int64_t>(std::floor(a));
  const double theta = rs_theta(t);

  CompensatedSum main;
  for (std::int64_t n = 1; n <= n_terms; ++n) {
    const double ln = std::log(static_cast<double>(n));
    main.add(std::cos(theta - t * ln) / std::sqrt(static_cast<double>(n)));
  }
  double z = 2.0 * main.value();
  if (terms > 0) {
    const double p = a - static_cast<double>(n_terms);
    const double inv_a = 1.0 / a;
    double rem = 0.0;
    double scale = 1.0;
    for (int k = 0; k < terms; ++k) {
      rem += rs_coefficient(k, p) * scale;
      scale *= inv_a;
    }
    const double sign = (n_terms % 2 == 1) ? 1.0 : -1.0;  // (-1)^(N-1)
    z += sign * rem / std::sqrt(a);
  }
  return z;
}

// zeta(s) by Euler-Maclaurin with cutoff N and m Bernoulli corrections.
inline cplx zeta_euler_maclaurin(cplx s, int N, int m) {
  if (N < 1) throw DomainError("zeta_euler_maclaurin: N must be >= 1");
  if (m < 0 || m > 15) throw DomainError("zeta_euler_maclaurin: m must lie in 0..15");
  CompensatedComplexSum acc;
  for (int n = 1; n < N; ++n) acc.add(std::exp(-s * std::log(static_cast<double>(n))));
  const double lnN = std::log(static_cast<double>(N));
  const cplx n_pow = std::exp(-s * lnN);  // N^{-s}
  acc.add(n_pow * static_cast<double>(N) / (s - 1.0));
  acc.add(0.5 * n_pow);
  // B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}
  cplx rising = s;
  cplx pw = n_pow / static_cast<double>(N);
  double fact = 2.0;
  for (int j = 1; j <= m; ++j) {
    acc.add(detail::kBernoulliEven[j - 1] / fact * rising * pw);
    rising *= (s + static_cast<double>(2 * j - 1)) * (s + static_cast<double>(2 * j));
    pw /= static_cast<double>(N) * N;
    fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
  }
  return acc.value();
}

// Riemann-Siegel theta from the complex log-gamma:
// theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi.
inline double oracle_theta(double t) {
  return detail::log_gamma(cplx(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(std::numbers::pi);
}

// zeta(1/2 + it) from the oracle, as a complex number. Negative t allowed.
inline cplx zeta_critical_em(double t, const RsConfig& cfg = {}) {
  cfg.validate();
  if (std::abs(t) > kEmMaxHeight) {
    throw CapacityError("zeta_em_oracle: |t| exceeds the oracle cap 1e5");
  }
  const int N = std::max(cfg.em_terms, static_cast<int>(std::ceil(10.0 + 2.0 * std::abs(t))));
  return zeta_euler_maclaurin(cplx(0.5, t), N, cfg.em_bernoulli_terms);
}

inline CriticalSample zeta_em_oracle(double t, const RsConfig& cfg = {}) {
  const cplx zeta = zeta_critical_em(t, cfg);
  const double z = (std::polar(1.0, oracle_theta(t)) * zeta).real();
  return {t, z, std::abs(zeta), ZetaMethod::euler_maclaurin};
}

// Z(t) via Riemann-Siegel for t >= 50, else via the oracle (tagged as such).
inline CriticalSample z_function(double t, const RsConfig& cfg = {}) {
  cfg.validate();
  if (t < kRsMinHeight) return zeta_em_oracle(t, cfg);
  const double z = riemann_siegel_z(t, cfg.n_correction_terms);
  return {t, z, std::abs(z), ZetaMethod::riemann_siegel};
}

// log |zeta|; -infinity when |zeta| is zero to machine precision.
inline double log_abs_zeta(const CriticalSample& sample) {
  if (!(sample.abs_zeta > std::numeric_limits<double>::min())) {
    return -std::numeric_limits<double>::infinity();
  }
  return std::log(sample.abs_zeta);
}

// Engines: anything exposing z(t) and abs_zeta(t). Grids and moment code are
// templated on this so tests can substitute synthetic integrands.
struct RiemannSiegelEngine {
  RsConfig cfg;
  double z(double t) const { return z_function(t, cfg).z_value; }
  double abs_zeta(double t) const { return std::abs(z(t)); }
};

// |zeta| replaced by a constant.
struct ConstantEngine {
  double c = 1.0;
  double z(double) const { return c; }
  double abs_zeta(double) const { return std::abs(c); }
};

// Bisection on a sign change of f in [lo, hi] down to width tol.
template <class F>
double bisect_root(const F& f, double lo, double hi, double tol = 1e-12) {
  double flo = f(lo);
  const double fhi = f(hi);
  if ((flo < 0) == (fhi < 0)) throw DomainError("bisect_root: no sign change in bracket");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Zeros of f on [lo, hi] from sign changes on a uniform scan with step h,
// each refined by bisection. Double zeros are invisible to this, as expected.
template <class F>
std::vector<double> scan_zeros(const F& f, double lo, double hi, double h, double tol = 1e-12) {
  std::vector<double> out;
  double a = lo;
  double fa = f(a);
  while (a < hi) {
    const double b = std::min(hi, a + h);
    const double fb = f(b);
    if ((fa < 0) != (fb < 0)) out.push_back(bisect_root(f, a, b, tol));
    a = b;
    fa = fb;
  }
  return out;
}

}  // namespace zetalab
