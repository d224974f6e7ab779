#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "brute_force.hpp"
#include "exrand/combinatorics.hpp"

using namespace exrand;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

// ln(N^N / N! * prod n_k! / n_k^{n_k}) with exact big integers.
double exact_log_c(unsigned n, const CountVector& split) {
  using brute::cpp_int;
  cpp_int num = boost::multiprecision::pow(cpp_int(n), n);
  cpp_int den = brute::factorial(n);
  for (auto c : split) {
    num *= brute::factorial(static_cast<unsigned>(c));
    den *= boost::multiprecision::pow(cpp_int(c), static_cast<unsigned>(c));
  }
  return brute::log(num) - brute::log(den);
}

}  // namespace

TEST(LogFactorial, SmallValues) {
  EXPECT_EQ(log_factorial(0).log(), 0.0);
  EXPECT_EQ(log_factorial(1).log(), 0.0);
  EXPECT_NEAR(log_factorial(7).log(), std::log(5040.0), 1e-14);
  EXPECT_NEAR(log_factorial(7).log(), 8.52516136, 1e-8);
}

TEST(LogFactorial, MatchesBigIntegerOracle) {
  for (unsigned n : {20u, 171u, 1000u, 9999u, 10000u, 10001u, 20000u}) {
    const double want = brute::log(brute::factorial(n));
    EXPECT_LE(rel_err(log_factorial(n).log(), want), 1e-12) << n;
  }
}

TEST(LogFactorial, ContinuousAcrossTheStirlingSwitch) {
  const double step = log_factorial(10001).log() - log_factorial(10000).log();
  EXPECT_NEAR(step, std::log(10001.0), 1e-10);
}

TEST(LogMultinomial, Examples) {
  EXPECT_NEAR(log_multinomial({2, 2}).log(), std::log(6.0), 1e-14);
  EXPECT_EQ(log_multinomial({17}).log(), 0.0);
  EXPECT_EQ(log_multinomial({0, 5, 0}).log(), 0.0);
  const double want = brute::log(brute::binomial(1000, 500));
  EXPECT_LE(rel_err(log_multinomial({500, 500}).log(), want), 1e-12);
}

TEST(BalancedSplit, Examples) {
  EXPECT_EQ(balanced_split(7, 3), (CountVector{3, 2, 2}));
  EXPECT_EQ(balanced_split(6, 3), (CountVector{2, 2, 2}));
  EXPECT_EQ(balanced_split(4, 9), (CountVector{1, 1, 1, 1}));
  EXPECT_EQ(balanced_split(5, 1), (CountVector{5}));
  EXPECT_THROW(balanced_split(0, 3), std::invalid_argument);
  EXPECT_THROW(balanced_split(3, 0), std::invalid_argument);
}

TEST(BalancedSplit, PartsDifferByAtMostOneAndCeilingsComeFirst) {
  for (std::uint64_t n = 1; n <= 60; ++n) {
    for (std::uint64_t k = 1; k <= 70; ++k) {
      const auto s = balanced_split(n, k);
      ASSERT_EQ(s.size(), std::min(n, k));
      ASSERT_EQ(s.total(), n);
      const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
      ASSERT_LE(*hi - *lo, 1u);
      ASSERT_TRUE(std::is_sorted(s.begin(), s.end(), std::greater<>()));
      if (k <= n) {
        ASSERT_EQ(std::count(s.begin(), s.end(), n / k + 1), static_cast<long>(n % k));
      }
    }
  }
}

TEST(TightConstant, FourTwoIsEightThirds) {
  const auto tc = tight_constant(4, 2);
  EXPECT_NEAR(tc.log10_c, std::log10(8.0 / 3.0), 1e-12);
  EXPECT_NEAR(tc.log10_c, 0.42597, 1e-5);
  EXPECT_EQ(tc.split.counts(), (CountVector{2, 2}));
}

// Brute force: the largest UXP/URP over orbit events of {1,2}^4. UXP of an
// orbit is 1; its URP is found on a lattice containing every n_k/N.
TEST(TightConstant, FourTwoMatchesBruteForceEventRatio) {
  const auto seqs = brute::all_sequences(2, 4);
  double best = 0.0;
  for (int heads = 0; heads <= 4; ++heads) {
    brute::Table f(seqs.size(), 0.0);
    for (std::size_t i = 0; i < seqs.size(); ++i) {
      f[i] = std::count(seqs[i].begin(), seqs[i].end(), 1) == heads ? 1.0 : 0.0;
    }
    best = std::max(best, brute::uxe(seqs, f) / brute::ure_grid(seqs, f, 2, 400));
  }
  EXPECT_NEAR(best, 8.0 / 3.0, 1e-12);
  EXPECT_NEAR(tight_constant(4, 2).value().value(), best, 1e-12);
}

TEST(TightConstant, SingleLetterAlphabet) {
  for (std::uint64_t n : {1u, 2u, 1000u, 1000000u}) EXPECT_EQ(tight_constant(n, 1).log10_c, 0.0);
}

TEST(TightConstant, CoinExample) {
  const auto tc = tight_constant(1000, 2);
  EXPECT_NEAR(1.0 / tc.value().value(), 0.0252, 5e-5);
  EXPECT_NEAR(tc.value().value(), 39.64, 0.01);
}

TEST(TightConstant, UnboundedAlphabetIsNPowerNOverNFactorial) {
  EXPECT_NEAR(tight_constant(7, infinite_alphabet).log10_c, std::log10(823543.0 / 5040.0), 1e-12);
  EXPECT_NEAR(tight_constant(7, infinite_alphabet).log10_c, 2.2132, 1e-4);
  for (unsigned n : {1u, 5u, 50u, 400u}) {
    const double want = (brute::log(boost::multiprecision::pow(brute::cpp_int(n), n)) -
                         brute::log(brute::factorial(n))) / std::numbers::ln10;
    for (std::uint64_t k : {std::uint64_t{n}, std::uint64_t{n} + 1, 10 * std::uint64_t{n},
                            infinite_alphabet}) {
      EXPECT_NEAR(tight_constant(n, k).log10_c, want, 1e-9 * std::max(1.0, want)) << n << " " << k;
    }
  }
}

TEST(TightConstant, MatchesExactRationalArithmetic) {
  for (auto [n, k] : std::vector<std::pair<unsigned, unsigned>>{
           {10, 3}, {100, 33}, {997, 10}, {1000, 7}, {1000, 400}, {1000, 999}}) {
    const auto tc = tight_constant(n, k);
    const double want = exact_log_c(n, tc.split.counts());
    EXPECT_LE(rel_err(tc.log_c, want), 1e-9) << n << " " << k;
  }
}

TEST(TightConstant, NondecreasingInKAndFlatBeyondN) {
  for (std::uint64_t n = 1; n <= 150; ++n) {
    double prev = 0.0;
    for (std::uint64_t k = 1; k <= n + 5; ++k) {
      const auto tc = tight_constant(n, k);
      ASSERT_GE(tc.log10_c, prev) << n << " " << k;
      ASSERT_EQ(tc.log10_c == 0.0, k == 1 || n == 1) << n << " " << k;
      if (k >= n) ASSERT_EQ(tc.log10_c, tight_constant(n, infinite_alphabet).log10_c);
      prev = tc.log10_c;
    }
  }
}

TEST(TightConstant, RejectsZeroLength) {
  EXPECT_THROW(tight_constant(0, 3), std::invalid_argument);
}

// Closed form of the extremal orbit probability, N!/prod n_k! prod (n_k/N)^{n_k},
// is the reciprocal of C.
TEST(TightConstant, ReciprocalOfExtremalOrbitProbability) {
  for (auto [n, k] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
           {4, 2}, {7, 3}, {100, 7}, {1000, 2}, {1000, 300}, {1000000, 17}}) {
    const auto split = balanced_split(n, k);
    double log_p = log_multinomial(split).log();
    for (auto c : split) {
      log_p += static_cast<double>(c) * std::log(static_cast<double>(c) / static_cast<double>(n));
    }
    EXPECT_NEAR(-log_p, tight_constant(n, k).log_c, 1e-9 * std::max(1.0, -log_p)) << n << " " << k;
  }
}

TEST(RobbinsBound, SevenLetters) {
  const auto r = robbins_bound(7);
  const double direct = 3.0 * std::sqrt(7.0) * std::exp(-7.0);
  EXPECT_NEAR(r.bound.value(), direct, 1e-15);
  EXPECT_NEAR(r.bound.value(), 7.237e-3, 1e-6);
  EXPECT_NEAR(r.all_distinct_urp.value(), 5040.0 / 823543.0, 1e-15);
  EXPECT_NEAR(r.all_distinct_urp.value(), 6.120e-3, 1e-6);
  EXPECT_TRUE(r.holds);
}

TEST(RobbinsBound, OneLetterBoundExceedsOne) {
  const auto r = robbins_bound(1);
  EXPECT_NEAR(r.bound.value(), 3.0 / std::numbers::e, 1e-15);
  EXPECT_GT(r.bound.value(), 1.0);
  EXPECT_TRUE(r.holds);
}

TEST(RobbinsBound, TwentyTwoLettersBeatFiveSigma) {
  const double b = robbins_bound(22).bound.value();
  EXPECT_NEAR(b, 3.0 * std::sqrt(22.0) * std::exp(-22.0), 1e-20);
  EXPECT_LT(b, 1.0 / 3e6);
}

TEST(RobbinsBound, InequalityHoldsUpToAMillion) {
  for (std::uint64_t n = 2; n <= 1'000'000; ++n) ASSERT_TRUE(robbins_bound(n).holds) << n;
}

TEST(RobbinsBracket, BracketsTheFactorial) {
  for (unsigned n : {1u, 2u, 10u, 170u, 1000u}) {
    const auto b = robbins_factorial_bracket(n);
    const double lf = brute::log(brute::factorial(n));
    EXPECT_LE(b.lower.log(), lf + 1e-12) << n;
    EXPECT_GE(b.upper.log(), lf - 1e-12) << n;
  }
}

namespace {
std::uint64_t scan_oracle(double eps) {
  for (std::uint64_t n = 1;; ++n) {
    if (3.0 * std::sqrt(double(n)) * std::exp(-double(n)) <= eps) return n;
  }
}
}  // namespace

TEST(MinNForLevel, Examples) {
  const auto one_percent = min_n_for_level(1e-2);
  EXPECT_EQ(one_percent.minimal_n, 7u);
  ASSERT_TRUE(one_percent.sufficient_n);
  EXPECT_EQ(*one_percent.sufficient_n, 7u);

  const auto seven = min_n_for_level(1e-7);
  ASSERT_TRUE(seven.sufficient_n);
  EXPECT_EQ(*seven.sufficient_n, 22u);
  EXPECT_EQ(seven.minimal_n, scan_oracle(1e-7));

  const auto five_sigma = min_n_for_level(1.0 / 3e6);
  EXPECT_EQ(five_sigma.minimal_n, 18u);
  EXPECT_EQ(five_sigma.minimal_n, scan_oracle(1.0 / 3e6));
  EXPECT_FALSE(five_sigma.sufficient_n);
}

TEST(MinNForLevel, SufficientRuleNeverBelowMinimal) {
  for (unsigned k = 2; k <= 300; ++k) {
    const auto t = min_n_for_decimal_level(k);
    ASSERT_TRUE(t.sufficient_n);
    ASSERT_LE(t.minimal_n, *t.sufficient_n) << k;
  }
}

TEST(MinNForLevel, RejectsLevelsOutsideUnitInterval) {
  EXPECT_THROW(min_n_for_level(0.0), std::invalid_argument);
  EXPECT_THROW(min_n_for_level(1.0), std::invalid_argument);
  EXPECT_THROW(min_n_for_level(-0.5), std::invalid_argument);
}

TEST(SlopeMultiplier, FirstThreeSegments) {
  EXPECT_NEAR(slope_multiplier(1), std::log10(2.0), 1e-13);
  EXPECT_NEAR(slope_multiplier(2), std::log10(81.0 / 32.0), 1e-13);
  EXPECT_NEAR(slope_multiplier(3), 19 * std::log10(2.0) - 11 * std::log10(3.0), 1e-13);
  EXPECT_NEAR(slope_multiplier(1), 0.301, 5e-4);
  EXPECT_NEAR(slope_multiplier(2), 0.403, 5e-4);
  EXPECT_NEAR(slope_multiplier(3), 0.471, 5e-4);
}

TEST(SlopeMultiplier, StrictlyIncreasing) {
  for (std::uint64_t j = 1; j < 200; ++j) ASSERT_LT(slope_multiplier(j), slope_multiplier(j + 1));
}

TEST(SlopeMultiplier, EqualsFiniteDifferencesOfTightConstant) {
  const std::uint64_t n = 1000;
  std::size_t checked = 0;
  for (std::uint64_t k = 1; k < n; ++k) {
    const std::uint64_t j = n / k;
    if (j * (k + 1) > n || (j + 1) * k <= n) continue;  // k, k+1 not in one segment
    const double diff = tight_constant(n, k + 1).log10_c - tight_constant(n, k).log10_c;
    ASSERT_NEAR(diff, slope_multiplier(j), 1e-9) << k;
    ++checked;
  }
  EXPECT_GT(checked, 900u);
}

TEST(AsymptoticRatio, BinaryAlphabetApproachesSqrtHalfPi) {
  EXPECT_NEAR(asymptotic_ratio(10'000, 2), std::sqrt(std::numbers::pi / 2), 0.01);
  EXPECT_EQ(asymptotic_ratio(123, 1), 1.0);
  const double a = asymptotic_ratio(1'000, 2);
  const double b = asymptotic_ratio(1'000'000, 2);
  EXPECT_LT(std::abs(a - b) / b, 0.02);
  EXPECT_THROW(asymptotic_ratio(3, 4), std::invalid_argument);
}

TEST(ConvexityIncrement, Examples) {
  EXPECT_EQ(convexity_increment(0), 0.0);
  EXPECT_NEAR(convexity_increment(1), std::numbers::ln2, 1e-15);
  const double n = 1e6;
  EXPECT_NEAR(convexity_increment(1'000'000), 1.0 - 1.0 / (2 * n) + 1.0 / (3 * n * n), 1e-15);
  EXPECT_GT(convexity_increment(1'000'000), convexity_increment(999'999));
}

TEST(ConvexityIncrement, StrictlyIncreasingAndBelowOne) {
  double prev = convexity_increment(0);
  for (std::uint64_t n = 1; n <= 1'000'000; ++n) {
    const double cur = convexity_increment(n);
    ASSERT_GT(cur, prev) << n;
    ASSERT_LT(cur, 1.0) << n;
    prev = cur;
  }
}

// f(n) is the forward difference of ln(n^n/n!).
TEST(ConvexityIncrement, IsForwardDifferenceOfLogPowerOverFactorial) {
  for (std::uint64_t n = 1; n <= 20'000; n += 37) {
    EXPECT_NEAR(log_power_over_factorial(n + 1) - log_power_over_factorial(n),
                convexity_increment(n), 1e-9)
        << n;
  }
}
