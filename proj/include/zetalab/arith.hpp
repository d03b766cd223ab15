#pragma once

// Prime tables, the von Mangoldt function, iterated logarithms and the
// logarithmic scale (log T, log log T, log log log T) used by every bound.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "zetalab/error.hpp"
#include "zetalab/summation.hpp"

namespace zetalab {

// Up to this bound the sieve also keeps a least-prime-factor table, which
// makes von_mangoldt() O(log n). Above it a segmented sieve keeps primes only.
inline constexpr std::uint64_t kFlatSieveLimit = 10'000'000;

// Stored primes are 32-bit; pi(2e9) ~ 9.8e7 primes ~ 393 MB.
inline constexpr std::uint64_t kMaxSieveLimit = 2'000'000'000;

class PrimeTable {
 public:
  PrimeTable() = default;

  std::uint64_t limit() const noexcept { return limit_; }
  const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }
  std::size_t size() const noexcept { return primes_.size(); }
  bool has_factor_table() const noexcept { return !lpf_.empty(); }

  // 0 for n < 2 or when n is beyond the factor table.
  std::uint32_t smallest_factor(std::uint64_t n) const noexcept {
    return n < lpf_.size() ? lpf_[n] : 0;
  }

  bool is_prime(std::uint64_t n) const {
    if (n < 2 || n > limit_) return false;
    if (has_factor_table()) return lpf_[n] == n;
    return std::binary_search(primes_.begin(), primes_.end(), static_cast<std::uint32_t>(n));
  }

  // Number of primes <= y, for y <= limit().
  std::size_t count_upto(std::uint64_t y) const noexcept {
    return static_cast<std::size_t>(
        std::upper_bound(primes_.begin(), primes_.end(), y,
                         [](std::uint64_t v, std::uint32_t p) { return v < p; }) -
        primes_.begin());
  }

  double von_mangoldt(std::uint64_t n) const;

 private:
  friend PrimeTable sieve_primes(std::uint64_t x);

  std::uint64_t limit_ = 0;
  std::vector<std::uint32_t> primes_;
  std::vector<std::uint32_t> lpf_;
};

namespace detail {

inline std::vector<std::uint32_t> simple_sieve(std::uint64_t n) {
  std::vector<bool> composite(n + 1, false);
  std::vector<std::uint32_t> out;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace detail

// Calls visit(p) for every prime lo <= p <= hi in ascending order, using a
// segmented sieve with O(sqrt(hi) + segment) memory. No upper cap besides
// running time.
inline void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                           const std::function<void(std::uint64_t)>& visit) {
  if (hi < 2 || lo > hi) return;
  lo = std::max<std::uint64_t>(lo, 2);
  const auto base = detail::simple_sieve(detail::isqrt(hi));
  constexpr std::uint64_t kSegment = 1u << 18;
  std::vector<char> composite(kSegment);
  for (std::uint64_t seg = lo; seg <= hi; seg += kSegment) {
    const std::uint64_t seg_hi = std::min(hi, seg + kSegment - 1);
    std::fill(composite.begin(), composite.end(), 0);
    for (const std::uint64_t p : base) {
      if (p * p > seg_hi) break;
      std::uint64_t start = std::max(p * p, (seg + p - 1) / p * p);
      for (std::uint64_t m = start; m <= seg_hi; m += p) composite[m - seg] = 1;
    }
    for (std::uint64_t n = seg; n <= seg_hi; ++n) {
      if (!composite[n - seg]) visit(n);
    }
    if (seg_hi == hi) break;
  }
}

inline PrimeTable sieve_primes(std::uint64_t x) {
  if (x < 2) {
    throw DomainError("sieve_primes: limit " + std::to_string(x) + " < 2 gives an empty table");
  }
  if (x > kMaxSieveLimit) {
    throw CapacityError("sieve_primes: limit " + std::to_string(x) + " exceeds the cap " +
                        std::to_string(kMaxSieveLimit));
  }
  PrimeTable table;
  table.limit_ = x;
  if (x <= kFlatSieveLimit) {
    // Linear sieve: every composite is struck exactly once by its least factor.
    table.lpf_.assign(x + 1, 0);
    for (std::uint64_t i = 2; i <= x; ++i) {
      if (table.lpf_[i] == 0) {
        table.lpf_[i] = static_cast<std::uint32_t>(i);
        table.primes_.push_back(static_cast<std::uint32_t>(i));
      }
      for (const std::uint32_t p : table.primes_) {
        if (p > table.lpf_[i] || i * p > x) break;
        table.lpf_[i * p] = p;
      }
    }
  } else {
    table.primes_.reserve(static_cast<std::size_t>(1.1 * x / std::log(static_cast<double>(x))));
    for_each_prime(2, x, [&](std::uint64_t p) {
      table.primes_.push_back(static_cast<std::uint32_t>(p));
    });
  }
  return table;
}

// Lambda(n) by trial division; independent of any table.
inline double von_mangoldt(std::uint64_t n) {
  if (n == 0) throw DomainError("von_mangoldt: n must be >= 1");
  if (n == 1) return 0.0;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    while (n % d == 0) n /= d;
    return n == 1 ? std::log(static_cast<double>(d)) : 0.0;
  }
  return std::log(static_cast<double>(n));
}

inline double PrimeTable::von_mangoldt(std::uint64_t n) const {
  if (n >= lpf_.size()) return zetalab::von_mangoldt(n);
  if (n == 0) throw DomainError("von_mangoldt: n must be >= 1");
  if (n == 1) return 0.0;
  const std::uint64_t p = lpf_[n];
  std::uint64_t m = n;
  while (m % p == 0) m /= p;
  return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

// j-fold natural logarithm; j = 0 returns T.
inline double iterated_log(double T, int j) {
  if (j < 0) throw DomainError("iterated_log: j must be >= 0");
  double v = T;
  for (int i = 0; i < j; ++i) {
    if (!(v > 0.0)) {
      throw DomainError("iterated_log: iterate " + std::to_string(i) + " is not positive");
    }
    v = std::log(v);
  }
  return v;
}

// Exact finite sum of 1/p over p <= x, ascending, compensated.
inline double mertens_sum(std::uint64_t x, const PrimeTable& table) {
  if (table.limit() < x) {
    throw DomainError("mertens_sum: table limit " + std::to_string(table.limit()) +
                      " is below x = " + std::to_string(x));
  }
  CompensatedSum s;
  for (const std::uint32_t p : table.primes()) {
    if (p > x) break;
    s.add(1.0 / p);
  }
  return s.value();
}

// Same sum without materialising a table (segmented, O(sqrt x) memory).
inline double mertens_sum_streaming(std::uint64_t x) {
  CompensatedSum s;
  for_each_prime(2, x, [&](std::uint64_t p) { s.add(1.0 / static_cast<double>(p)); });
  return s.value();
}

// The tower (log T, log2 T, log3 T) plus theta with H = T^theta.
// Built from a concrete height, from log T, or from log log T when T is far
// beyond double range (L1 and logH may then be +inf).
struct LogScale {
  enum class Origin { height, log_height, loglog_height };

  double L1 = 0.0;
  double L2 = 0.0;
  double L3 = 0.0;
  double theta = 1.0;
  double logH = 0.0;
  Origin origin = Origin::height;

  static LogScale from_height(double T, double theta) {
    if (!(T > std::exp(std::numbers::e))) {
      throw DomainError("LogScale: T must exceed e^e so that log3 T > 0");
    }
    LogScale s = from_log(std::log(T), theta);
    s.origin = Origin::height;
    return s;
  }

  static LogScale from_log(double L1, double theta) {
    if (!(L1 > std::numbers::e)) throw DomainError("LogScale: log T must exceed e");
    LogScale s = from_loglog(std::log(L1), theta);
    s.L1 = L1;
    s.logH = theta * L1;
    s.origin = Origin::log_height;
    return s;
  }

  static LogScale from_loglog(double L2, double theta) {
    if (!(L2 > 1.0) || !std::isfinite(L2)) {
      throw DomainError("LogScale: log log T must be finite and exceed 1");
    }
    if (!(theta > 0.0 && theta <= 1.0)) throw DomainError("LogScale: theta must lie in (0, 1]");
    LogScale s;
    s.L2 = L2;
    s.L3 = std::log(L2);
    s.L1 = std::exp(L2);
    s.theta = theta;
    s.logH = theta * s.L1;
    s.origin = Origin::loglog_height;
    return s;
  }

  // log log(2T), stable when L1 overflows.
  double loglog_2T() const noexcept {
    return std::isfinite(L1) ? L2 + std::log1p(std::numbers::ln2 / L1) : L2;
  }

  // log of the largest admissible V, (3 log 2T) / (8 log log 2T).
  double log_v_ceiling() const noexcept {
    const double ll2t = loglog_2T();
    return std::log(3.0 / 8.0) + ll2t - std::log(ll2t);
  }

  double v_ceiling() const noexcept { return std::exp(log_v_ceiling()); }
};

}  // namespace zetalab
