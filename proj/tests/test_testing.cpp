#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "exrand/bounds.hpp"
#include "exrand/random_instances.hpp"
#include "exrand/testing.hpp"

using namespace exrand;
namespace ri = exrand::random_instances;

namespace {

Sequence seq(const SequenceSpace& s, std::vector<Symbol> x) { return Sequence(s, std::move(x)); }

// P = URP of the orbit on the orbit, 1 elsewhere.
PVariable orbit_p_variable(const SequenceSpace& s, const CountVector& c) {
  const double level = log_orbit_urp(c).value();
  std::vector<double> v(s.size(), 1.0);
  for (std::uint64_t i = 0; i < s.size(); ++i) {
    if (count_vector(s, i) == c) v[i] = level;
  }
  return PVariable(s, std::move(v));
}

}  // namespace

TEST(PVariable, RejectsBadValues) {
  const SequenceSpace s(2, 2);
  EXPECT_THROW(PVariable(s, {0.1, 0.2}), std::invalid_argument);
  EXPECT_THROW(PVariable(s, {0.1, 0.2, 1.5, 0.0}), std::invalid_argument);
  EXPECT_THROW(PVariable(SequenceSpace(2, 30), {}), guard_error);
}

TEST(PVariable, TrivialCases) {
  const SequenceSpace s(2, 3);
  for (auto a : {Assumption::exchangeability, Assumption::randomness}) {
    EXPECT_TRUE(validate_p_variable(PVariable(s, std::vector<double>(8, 1.0)), a).valid);
    const auto zero = validate_p_variable(PVariable(s, std::vector<double>(8, 0.0)), a);
    EXPECT_FALSE(zero.valid);
    EXPECT_EQ(zero.worst_epsilon, 0.0);
    EXPECT_DOUBLE_EQ(zero.violation, 1.0);
  }
}

TEST(PVariable, OrbitConstructionSeparatesTheAssumptions) {
  const SequenceSpace s(2, 4);
  const auto p = orbit_p_variable(s, {2, 2});
  const auto rand = validate_p_variable(p, Assumption::randomness);
  EXPECT_TRUE(rand.valid) << rand.violation;
  const auto exch = validate_p_variable(p, Assumption::exchangeability);
  EXPECT_FALSE(exch.valid);
  EXPECT_NEAR(*exch.worst_epsilon, 0.375, 1e-15);
  EXPECT_NEAR(exch.violation, 0.625, 1e-12);
}

TEST(PVariable, ExchangeabilityConstructionIsValidUnderBoth) {
  ri::Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const SequenceSpace s(2 + ri::below(rng, 2), 1 + ri::below(rng, 4));
    const auto p = ri::exchangeability_p_variable(rng, s);
    ASSERT_TRUE(validate_p_variable(p, Assumption::exchangeability).valid);
    ASSERT_TRUE(validate_p_variable(p, Assumption::randomness).valid);
  }
}

TEST(EVariable, Examples) {
  const SequenceSpace s(2, 4);
  EXPECT_TRUE(validate_e_variable(Payoff::constant(s, 1.0), Assumption::exchangeability).valid);
  EXPECT_FALSE(validate_e_variable(Payoff::constant(s, 1.5), Assumption::randomness).valid);

  // (8/3) * 1{orbit (2,2)}: an e-variable under randomness only.
  const auto a = extremal_event(4, 2);
  const auto f = Payoff::indicator(to_event(a)).scaled(8.0 / 3.0);
  EXPECT_TRUE(validate_e_variable(f, Assumption::randomness).valid);
  EXPECT_FALSE(validate_e_variable(f, Assumption::exchangeability).valid);
  EXPECT_TRUE(validate_e_variable(a, 8.0 / 3.0, Assumption::randomness).valid);
  EXPECT_FALSE(validate_e_variable(a, 8.0 / 3.0, Assumption::exchangeability).valid);
  EXPECT_THROW(validate_e_variable(a, -1.0, Assumption::randomness), std::invalid_argument);
}

TEST(EVariable, LargeOrbitWithoutListing) {
  const auto a = half_heads_event(1000);
  const double c = tight_constant(1000, 2).value().value();
  EXPECT_TRUE(validate_e_variable(a, c * (1 - 1e-12), Assumption::randomness).valid);
  EXPECT_FALSE(validate_e_variable(a, c * 1.01, Assumption::randomness).valid);
}

TEST(Conversion, TightOnExtremalOrbit) {
  for (auto [n, k] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
           {2, 2}, {4, 2}, {5, 2}, {4, 3}, {5, 3}}) {
    const auto a = extremal_event(n, k);
    const auto e = Payoff::indicator(to_event(a)).scaled(1.0 / urp(a).value);
    ASSERT_NEAR(ure(e).value, 1.0, 1e-9);
    const auto converted = exch_e_from_rand_e(e);
    EXPECT_NEAR(uxe(converted).value, 1.0, 1e-9) << n << " " << k;
  }
}

TEST(Conversion, AlwaysYieldsExchangeabilityEVariables) {
  ri::Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const SequenceSpace s(2 + ri::below(rng, 2), 1 + ri::below(rng, 4));
    const auto f = ri::payoff(rng, s);
    const double r = ure(f).value;
    if (r <= 0.0) continue;
    const auto e = f.scaled(1.0 / r);
    ASSERT_LE(uxe(exch_e_from_rand_e(e)).value, 1.0 + 1e-6);
  }
}

TEST(PredictionSet, Examples) {
  const SequenceSpace s(3, 2);
  const auto a = Event::of(s, {seq(s, {1, 2}), seq(s, {1, 3})});
  EXPECT_EQ(prediction_set(a, {1}), (std::vector<Symbol>{1}));
  EXPECT_EQ(prediction_set(a, {2}), (std::vector<Symbol>{1, 2, 3}));
  EXPECT_EQ(prediction_set(Event::empty(s), {3}), (std::vector<Symbol>{1, 2, 3}));
  const auto ext = to_event(extremal_event(2, 2));
  EXPECT_EQ(prediction_set(ext, {1}), (std::vector<Symbol>{1}));
  EXPECT_EQ(prediction_set(ext, {2}), (std::vector<Symbol>{2}));
}

TEST(PredictionSet, Errors) {
  const SequenceSpace s(3, 3);
  EXPECT_THROW(prediction_set(Event::empty(s), {1}), std::invalid_argument);
  EXPECT_THROW(prediction_set(Event::empty(s), {1, 4}), std::invalid_argument);
}

TEST(Coverage, Examples) {
  const auto a = to_event(extremal_event(4, 2));
  const auto r = coverage_check(a, 0.375, Assumption::randomness);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.worst_coverage, 0.625, 1e-12);  // Q = (1/2, 1/2) is on the grid
  EXPECT_EQ(r.laws_checked, 101u);
  EXPECT_DOUBLE_EQ(r.grid_step, 0.01);
  EXPECT_THROW(coverage_check(a, 0.375, Assumption::exchangeability), std::invalid_argument);

  const auto whole = coverage_check(a, 1.0, Assumption::exchangeability);
  EXPECT_TRUE(whole.passed);
  EXPECT_DOUBLE_EQ(whole.worst_coverage, 0.0);
  EXPECT_EQ(whole.laws_checked, 5u);
}

TEST(Coverage, Errors) {
  const SequenceSpace one(2, 1);
  EXPECT_THROW(coverage_check(Event::empty(one), 0.1, Assumption::randomness),
               std::invalid_argument);
  const SequenceSpace four(4, 2);
  EXPECT_THROW(coverage_check(Event::empty(four), 0.1, Assumption::randomness), unsupported_method);
  EXPECT_TRUE(coverage_check(Event::empty(four), 0.1, Assumption::exchangeability).passed);
}

// A level-eps critical region gives prediction sets with coverage >= 1 - eps.
TEST(Coverage, CriticalRegionsCover) {
  ri::Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const SequenceSpace s(2 + ri::below(rng, 2), 2 + ri::below(rng, 3));
    const auto a = ri::event(rng, s);
    const double er = urp(a).value;
    ASSERT_TRUE(coverage_check(a, er, Assumption::randomness).passed);
    const double ex = uxp(a).value;
    ASSERT_TRUE(coverage_check(a, ex, Assumption::exchangeability).passed);
  }
}

TEST(Examples, AllDistinctAndHalfHeads) {
  const auto d = all_distinct_event(7);
  EXPECT_DOUBLE_EQ(uxp(d).value, 1.0);
  EXPECT_NEAR(urp(d).value, 5040.0 / 823543.0, 1e-15);
  EXPECT_NEAR(urp(half_heads_event(2)).value, 0.5, 1e-15);
  EXPECT_NEAR(urp(half_heads_event(4)).value, 0.375, 1e-15);
  EXPECT_NEAR(urp(half_heads_event(1000)).value, 0.0252, 5e-5);
  EXPECT_THROW(half_heads_event(3), std::invalid_argument);
  EXPECT_THROW(all_distinct_event(0), std::invalid_argument);
}
