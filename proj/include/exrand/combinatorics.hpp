#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "exrand/count_vector.hpp"
#include "exrand/log_real.hpp"

namespace exrand {

// Alphabet size standing for |Z| = infinity (any K >= N behaves the same).
inline constexpr std::uint64_t infinite_alphabet = std::numeric_limits<std::uint64_t>::max();

namespace detail {

inline constexpr std::uint64_t exact_factorial_limit = 10'000;

// ln(n!) for n <= exact_factorial_limit, accumulated in extended precision.
inline const std::vector<double>& log_factorial_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(exact_factorial_limit + 1);
    long double acc = 0.0L;
    t[0] = 0.0;
    for (std::uint64_t i = 1; i <= exact_factorial_limit; ++i) {
      acc += std::log(static_cast<long double>(i));
      t[i] = static_cast<double>(acc);
    }
    return t;
  }();
  return table;
}

// Tail of the Stirling series: ln n! - [(n + 1/2) ln n - n + ln sqrt(2 pi)].
// Truncation error below 1/(1680 n^7), negligible for n > 10^4.
inline double stirling_correction(double n) {
  const double inv = 1.0 / n;
  const double inv2 = inv * inv;
  return inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0));
}

inline constexpr double ln_sqrt_two_pi = 0.91893853320467274178032973640562;

}  // namespace detail

// ln(n!). Exact summation of ln i up to n = 10^4, Stirling series above.
inline LogReal log_factorial(std::uint64_t n) {
  if (n <= detail::exact_factorial_limit) {
    return LogReal::from_log(detail::log_factorial_table()[n]);
  }
  const double x = static_cast<double>(n);
  return LogReal::from_log((x + 0.5) * std::log(x) - x + detail::ln_sqrt_two_pi +
                           detail::stirling_correction(x));
}

// ln(n^n / n!) with 0^0 = 0! = 1. Evaluated without forming n ln n - ln n!
// for large n, where the two terms nearly cancel.
inline double log_power_over_factorial(std::uint64_t n) {
  if (n <= 1) return 0.0;
  const double x = static_cast<double>(n);
  if (n <= detail::exact_factorial_limit) {
    return x * std::log(x) - detail::log_factorial_table()[n];
  }
  return x - 0.5 * std::log(x) - detail::ln_sqrt_two_pi - detail::stirling_correction(x);
}

// ln(N! / (n_1! ... n_K!)), N the total of the counts.
inline LogReal log_multinomial(const CountVector& counts) {
  double acc = log_factorial(counts.total()).log();
  for (std::uint64_t c : counts) acc -= log_factorial(c).log();
  return LogReal::from_log(acc < 0.0 ? 0.0 : acc);
}

// Balanced split of n into parts: `ceil_parts` parts equal to base + 1
// followed by the rest equal to base. Kept compact because the figure sweeps
// K up to 10^6 at N = 10^6.
struct BalancedSplit {
  std::uint64_t n = 0;
  std::uint64_t parts = 0;
  std::uint64_t base = 0;
  std::uint64_t ceil_parts = 0;

  CountVector counts() const {
    std::vector<std::uint64_t> c(parts, base);
    for (std::uint64_t i = 0; i < ceil_parts; ++i) c[i] = base + 1;
    return CountVector(std::move(c));
  }

  friend bool operator==(const BalancedSplit&, const BalancedSplit&) = default;
};

inline BalancedSplit make_balanced_split(std::uint64_t n, std::uint64_t k) {
  if (n == 0 || k == 0) throw std::invalid_argument("balanced_split: n and k must be positive");
  const std::uint64_t parts = k < n ? k : n;
  return BalancedSplit{n, parts, n / parts, n % parts};
}

// Counts of length min(k, n), each floor(n/k) or ceil(n/k), ceiling parts first.
inline CountVector balanced_split(std::uint64_t n, std::uint64_t k) {
  return make_balanced_split(n, k).counts();
}

// The smallest C with UXE(F) <= C * URE(F) for every payoff F on a K-letter
// alphabet and sequences of length N:
//   C = (N^N / N!) * prod_k n_k! / n_k^{n_k}  over the balanced split.
struct TightConstant {
  std::uint64_t n = 0;
  std::uint64_t k = 0;  // infinite_alphabet for |Z| = infinity
  double log_c = 0.0;
  double log10_c = 0.0;
  BalancedSplit split;

  LogReal value() const { return LogReal::from_log(log_c); }
  bool unbounded_alphabet() const noexcept { return k == infinite_alphabet; }
};

inline TightConstant tight_constant(std::uint64_t n, std::uint64_t k) {
  if (n == 0) throw std::invalid_argument("tight_constant: n must be positive");
  if (k == 0) throw std::invalid_argument("tight_constant: k must be positive");
  TightConstant tc;
  tc.n = n;
  tc.k = k;
  tc.split = make_balanced_split(n, k);
  double log_c = log_power_over_factorial(n);
  if (k < n) {
    const auto& s = tc.split;
    log_c -= static_cast<double>(s.ceil_parts) * log_power_over_factorial(s.base + 1) +
             static_cast<double>(s.parts - s.ceil_parts) * log_power_over_factorial(s.base);
  }
  tc.log_c = log_c < 0.0 ? 0.0 : log_c;
  tc.log10_c = tc.log_c / std::numbers::ln10;
  return tc;
}

// Robbins' form of Stirling: URP of the all-distinct event, N!/N^N, lies
// strictly below 3 sqrt(N) e^{-N}.
struct RobbinsBound {
  std::uint64_t n = 0;
  LogReal bound;             // 3 sqrt(n) e^{-n}
  LogReal all_distinct_urp;  // n! / n^n
  bool holds = false;        // all_distinct_urp < bound
};

inline LogReal robbins_level(std::uint64_t n) {
  const double x = static_cast<double>(n);
  return LogReal::from_log(std::log(3.0) + 0.5 * std::log(x) - x);
}

inline RobbinsBound robbins_bound(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("robbins_bound: n must be positive");
  RobbinsBound r;
  r.n = n;
  r.bound = robbins_level(n);
  r.all_distinct_urp = LogReal::from_log(-log_power_over_factorial(n));
  r.holds = r.all_distinct_urp < r.bound;
  return r;
}

// Two-sided Robbins bracket for n!:
//   sqrt(2 pi n)(n/e)^n e^{1/(12n+1)} <= n! <= sqrt(2 pi n)(n/e)^n e^{1/(12n)}.
struct FactorialBracket {
  LogReal lower;
  LogReal upper;
};

inline FactorialBracket robbins_factorial_bracket(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("robbins_factorial_bracket: n must be positive");
  const double x = static_cast<double>(n);
  const double core = detail::ln_sqrt_two_pi + 0.5 * std::log(x) + x * std::log(x) - x;
  return {LogReal::from_log(core + 1.0 / (12.0 * x + 1.0)),
          LogReal::from_log(core + 1.0 / (12.0 * x))};
}

struct LevelThreshold {
  std::uint64_t minimal_n = 0;
  // 3k + 1 when the level is 10^{-k} with integer k >= 2.
  std::optional<std::uint64_t> sufficient_n;
};

// Smallest N with 3 sqrt(N) e^{-N} <= epsilon.
inline LevelThreshold min_n_for_level(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("min_n_for_level: epsilon must lie in (0, 1)");
  }
  const double log_eps = std::log(epsilon);
  LevelThreshold t;
  for (std::uint64_t n = 1;; ++n) {
    if (robbins_level(n).log() <= log_eps) {
      t.minimal_n = n;
      break;
    }
  }
  const double k = std::round(-std::log10(epsilon));
  if (k >= 2.0 && std::abs(std::pow(10.0, -k) - epsilon) <= 1e-9 * epsilon) {
    const auto kk = static_cast<std::uint64_t>(k);
    t.sufficient_n = 3 * kk + 1;
    if (t.minimal_n > *t.sufficient_n) {
      throw std::logic_error("min_n_for_level: minimal N exceeds 3k+1 for k = " +
                             std::to_string(kk));
    }
  }
  return t;
}

inline LevelThreshold min_n_for_decimal_level(unsigned k) {
  if (k == 0) throw std::invalid_argument("min_n_for_decimal_level: k must be positive");
  return min_n_for_level(std::pow(10.0, -static_cast<double>(k)));
}

// log10 of the factor by which C grows when K increases by one inside the
// segment (N/(j+1), N/j]: a block of j parts equal to j+1 becomes j+1 parts
// equal to j, so C is multiplied by (j!/j^j)^{j+1} ((j+1)^{j+1}/(j+1)!)^j.
inline double slope_multiplier(std::uint64_t j) {
  if (j == 0) throw std::invalid_argument("slope_multiplier: j must be positive");
  const double jj = static_cast<double>(j);
  return (jj * log_power_over_factorial(j + 1) - (jj + 1.0) * log_power_over_factorial(j)) /
         std::numbers::ln10;
}

// C(n, k) / n^{(k-1)/2}; bounded away from 0 and infinity as n grows.
inline double asymptotic_ratio(std::uint64_t n, std::uint64_t k) {
  if (k == 0 || n < k) throw std::invalid_argument("asymptotic_ratio: need 1 <= k <= n");
  const double log_c = tight_constant(n, k).log_c;
  return std::exp(log_c - 0.5 * static_cast<double>(k - 1) * std::log(static_cast<double>(n)));
}

// Forward difference of n ln n - ln n!:  f(n) = n ln(1 + 1/n), f(0) = 0.
inline double convexity_increment(std::uint64_t n) {
  if (n == 0) return 0.0;
  const double x = static_cast<double>(n);
  return x * std::log1p(1.0 / x);
}

}  // namespace exrand
