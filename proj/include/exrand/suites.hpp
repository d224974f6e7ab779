#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "exrand/bounds.hpp"
#include "exrand/combinatorics.hpp"
#include "exrand/format.hpp"
#include "exrand/random_instances.hpp"
#include "exrand/reference_values.hpp"
#include "exrand/testing.hpp"

// Reference-number table and property suites shared by the CLI `examples`
// and `verify` commands and by the acceptance binary.
namespace exrand::suites {

struct CheckLine {
  std::string name;
  std::string measured;
  std::string expected;
  bool passed = false;
};

inline std::vector<CheckLine> reference_checks(const reference::Expectations& e) {
  std::vector<CheckLine> out;
  auto add = [&](std::string name, std::string measured, std::string expected, bool ok) {
    out.push_back({std::move(name), std::move(measured), std::move(expected), ok});
  };

  {
    const double p = urp(all_distinct_event(e.distinct_n)).value;
    add("URP(all distinct), N=" + std::to_string(e.distinct_n), format::probability(p),
        "< " + format::probability(e.distinct_level), p < e.distinct_level);
    const auto rb = robbins_bound(e.distinct_n);
    const double b = rb.bound.value();
    add("3 sqrt(N) e^-N, N=" + std::to_string(e.distinct_n), format::probability(b),
        "~ " + format::probability(e.distinct_robbins_bound) + " and > URP",
        std::abs(b - e.distinct_robbins_bound) <= e.robbins_rel_tol * e.distinct_robbins_bound &&
            rb.holds);
  }
  {
    const auto t = min_n_for_decimal_level(e.percent_k);
    const bool ok = t.minimal_n == e.percent_minimal_n && t.sufficient_n &&
                    *t.sufficient_n == e.percent_sufficient_n;
    add("N for level 1e-" + std::to_string(e.percent_k),
        "minimal " + std::to_string(t.minimal_n) + ", 3k+1 = " +
            (t.sufficient_n ? std::to_string(*t.sufficient_n) : std::string("-")),
        "minimal " + std::to_string(e.percent_minimal_n) + ", 3k+1 = " +
            std::to_string(e.percent_sufficient_n),
        ok);
  }
  {
    const double b = robbins_level(e.five_sigma_n).value();
    add("3 sqrt(N) e^-N at N=" + std::to_string(e.five_sigma_n), format::probability(b),
        "< " + format::probability(e.five_sigma_level), b < e.five_sigma_level);
    const auto t = min_n_for_decimal_level(e.five_sigma_k);
    add("3k+1 for level 1e-" + std::to_string(e.five_sigma_k),
        t.sufficient_n ? std::to_string(*t.sufficient_n) : std::string("-"),
        std::to_string(e.five_sigma_n), t.sufficient_n && *t.sufficient_n == e.five_sigma_n);
  }
  {
    const double p = urp(half_heads_event(e.coin_n)).value;
    add("URP(half heads), N=" + std::to_string(e.coin_n), format::probability(p),
        format::probability(e.coin_urp) + " +- " + format::probability(e.coin_tol),
        std::abs(p - e.coin_urp) <= e.coin_tol);
  }
  for (std::size_t j = 0; j < e.slopes.size(); ++j) {
    const double s = slope_multiplier(j + 1);
    add("slope of log10 C, segment j=" + std::to_string(j + 1), format::fixed(s, 4),
        format::fixed(e.slopes[j], 4) + " +- " + format::significant(e.slope_tol, 2),
        std::abs(s - e.slopes[j]) <= e.slope_tol);
  }
  {
    const auto c = tight_constant(e.endpoint_n, e.endpoint_n);
    const auto br = robbins_factorial_bracket(e.endpoint_n);
    const double nlog = static_cast<double>(e.endpoint_n) *
                        std::log10(static_cast<double>(e.endpoint_n));
    const double lo = nlog - br.upper.log10();
    const double hi = nlog - br.lower.log10();
    const bool ok = c.log10_c >= lo - e.bracket_tol && c.log10_c <= hi + e.bracket_tol &&
                    std::abs(c.log10_c - e.endpoint_log10) <= e.endpoint_tol;
    add("log10 C(N, K>=N), N=" + std::to_string(e.endpoint_n), format::log10_value(c.log10_c),
        format::log10_value(e.endpoint_log10) + ", within Robbins bracket", ok);
  }
  return out;
}

struct SuiteResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t total = 0;
  std::vector<std::string> failures;

  bool ok() const noexcept { return passed == total; }

  void record(bool ok, const std::string& what) {
    ++total;
    if (ok) {
      ++passed;
    } else if (failures.size() < 5) {
      failures.push_back(what);
    }
  }
};

using random_instances::Rng;

inline SuiteResult reference_suite(const reference::Expectations& e) {
  SuiteResult r{"reference numbers"};
  for (const auto& line : reference_checks(e)) {
    r.record(line.passed, line.name + ": got " + line.measured + ", want " + line.expected);
  }
  return r;
}

// max over orbit events of UXP/URP = 1/min URP equals C(n, k).
inline SuiteResult tightness_suite(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& nk) {
  SuiteResult r{"tight constant attained by an orbit"};
  for (auto [n, k] : nk) {
    double best = -1.0;
    for (const auto& c : enumerate_orbits(SequenceSpace(k, n))) {
      best = std::max(best, -log_orbit_urp(c).log());
    }
    const double want = tight_constant(n, k).log_c;
    r.record(std::abs(best - want) <= 1e-9, "(n,k)=(" + std::to_string(n) + "," +
                                                std::to_string(k) + "): max ln ratio " +
                                                format::exact(best) + " vs ln C " +
                                                format::exact(want));
  }
  return r;
}

inline double oracle_grid_step(std::uint64_t k) { return k <= 2 ? 1.0 / 200 : 1.0 / 60; }

// URE estimate used by the property suites: the better of the lattice
// oracle and the multistart optimizer (both are lower bounds on the sup).
inline double ure_oracle(const Payoff& f) {
  const double num = ure_numeric(f).value;
  const double grid = ure_grid_oracle(f, oracle_grid_step(f.space().k()));
  return std::max(num, grid);
}

struct SpaceFamily {
  std::uint64_t k;
  std::uint64_t n_max;
};

// UXE <= (N^N/N!) URE and UXE <= C(N,K) URE, plus URE <= UXE and
// URP <= UXP, on random payoffs and events.
struct BoundSuites {
  SuiteResult infinite_bound{"UXE <= (N^N/N!) URE"};
  SuiteResult finite_bound{"UXE <= C(N,K) URE"};
  SuiteResult dominance{"URE <= UXE and URP <= UXP"};
};

inline BoundSuites bound_suites(const std::vector<SpaceFamily>& families, std::size_t per_family,
                                std::uint64_t seed) {
  BoundSuites s;
  Rng rng(seed);
  for (const auto& fam : families) {
    for (std::size_t i = 0; i < per_family; ++i) {
      const std::uint64_t n = 1 + random_instances::below(rng, fam.n_max);
      const SequenceSpace space(fam.k, n);
      const auto f = random_instances::payoff(rng, space);
      const double ux = uxe(f).value;
      const double ur = ure_oracle(f);
      const auto tag = "k=" + std::to_string(fam.k) + " n=" + std::to_string(n) + " #" +
                       std::to_string(i);
      const double big = std::exp(log_power_over_factorial(n));
      const double c = tight_constant(n, fam.k).value().value();
      s.infinite_bound.record(ux <= big * ur + 1e-6, tag + ": UXE " + format::exact(ux) +
                                                          " URE " + format::exact(ur));
      s.finite_bound.record(ux <= c * ur + 1e-6, tag + ": UXE " + format::exact(ux) + " URE " +
                                                     format::exact(ur));
      s.dominance.record(ur <= ux + 1e-12, tag + ": URE " + format::exact(ur) + " > UXE " +
                                               format::exact(ux));
      const auto a = random_instances::event(rng, space);
      const double xp = uxp(a).value;
      const double rp = urp(a).value;
      s.dominance.record(rp <= xp + 1e-12, tag + ": URP " + format::exact(rp) + " > UXP " +
                                               format::exact(xp));
    }
  }
  return s;
}

inline SuiteResult convexity_suite(std::uint64_t n_max) {
  SuiteResult r{"convexity increment strictly increasing"};
  double prev = convexity_increment(0);
  std::size_t bad = 0;
  std::uint64_t first_bad = 0;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const double cur = convexity_increment(n);
    if (!(cur > prev) || cur >= 1.0) {
      if (bad++ == 0) first_bad = n;
    }
    prev = cur;
  }
  r.record(bad == 0, std::to_string(bad) + " violations, first at n=" + std::to_string(first_bad));
  return r;
}

inline SuiteResult robbins_suite(std::uint64_t n_max) {
  SuiteResult r{"N!/N^N < 3 sqrt(N) e^-N"};
  std::size_t bad = 0;
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    if (!robbins_bound(n).holds) ++bad;
  }
  r.record(bad == 0, std::to_string(bad) + " violations up to N=" + std::to_string(n_max));
  return r;
}

// Finite differences of log10 C against slope_multiplier(j) wherever K and
// K+1 share the segment (n/(j+1), n/j].
inline SuiteResult slope_suite(std::uint64_t n) {
  SuiteResult r{"segment slopes match finite differences, N=" + std::to_string(n)};
  double prev = tight_constant(n, 1).log10_c;
  for (std::uint64_t k = 1; k < n; ++k) {
    const double next = tight_constant(n, k + 1).log10_c;
    const std::uint64_t j = n / k;
    if (j >= 1 && n / (k + 1) == j && j * (k + 1) <= n && (j + 1) * k > n) {
      const double want = slope_multiplier(j);
      r.record(std::abs((next - prev) - want) <= 1e-9,
               "K=" + std::to_string(k) + ": diff " + format::exact(next - prev) + " vs " +
                   format::exact(want));
    }
    r.record(next >= prev, "K=" + std::to_string(k) + ": log10 C decreased");
    prev = next;
  }
  return r;
}

inline SuiteResult optimizer_suite(std::size_t count, std::uint64_t seed, double tol = 1e-8) {
  SuiteResult r{"multistart optimizer vs closed form"};
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t k = 2 + random_instances::below(rng, 2);
    const std::uint64_t n = 1 + random_instances::below(rng, 6);
    const SequenceSpace space(k, n);
    const auto f = random_instances::orbit_payoff(rng, space);
    const auto orbit = count_vector(space, f.table().begin()->first);
    const double exact = ure_closed_form(f, orbit);
    const double num = ure_numeric(f).value;
    r.record(std::abs(num - exact) <= tol, "k=" + std::to_string(k) + " n=" + std::to_string(n) +
                                               ": numeric " + format::exact(num) +
                                               " closed form " + format::exact(exact));
  }
  return r;
}

inline SuiteResult mixture_suite(std::size_t count, std::uint64_t seed) {
  SuiteResult r{"orbit mixtures never beat the best orbit"};
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const SequenceSpace space(2 + random_instances::below(rng, 2),
                              1 + random_instances::below(rng, 4));
    const auto f = random_instances::payoff(rng, space);
    const auto m = random_instances::mixture(rng, space);
    const double mix = mixture_expectation(m, f);
    const double best = uxe(f).value;
    r.record(mix <= best + 1e-12, "mixture " + format::exact(mix) + " > UXE " + format::exact(best));
  }
  return r;
}

inline SuiteResult conversion_suite() {
  SuiteResult r{"e-variable conversion is valid and tight"};
  for (auto [n, k] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
           {2, 2}, {4, 2}, {5, 2}, {4, 3}, {5, 3}, {6, 3}}) {
    const auto a = extremal_event(n, k);
    const double c = tight_constant(n, k).value().value();
    const auto f = Payoff::indicator(to_event(a)).scaled(c);
    const auto rand_ok = validate_e_variable(f, Assumption::randomness);
    const auto g = exch_e_from_rand_e(f);
    const double ux = uxe(g).value;
    const auto tag = "(n,k)=(" + std::to_string(n) + "," + std::to_string(k) + ")";
    r.record(rand_ok.valid && std::abs(rand_ok.violation) <= 1e-9,
             tag + ": C * extremal indicator is not a tight randomness e-variable");
    r.record(std::abs(ux - 1.0) <= 1e-9, tag + ": UXE(f/C) = " + format::exact(ux));
  }
  return r;
}

inline SuiteResult p_variable_suite(std::size_t count, std::uint64_t seed) {
  SuiteResult r{"exchangeability p-variables are randomness p-variables"};
  Rng rng(seed);
  const SequenceSpace space(2, 3);
  for (std::size_t i = 0; i < count; ++i) {
    const auto p = random_instances::exchangeability_p_variable(rng, space);
    const auto x = validate_p_variable(p, Assumption::exchangeability);
    const auto y = validate_p_variable(p, Assumption::randomness);
    r.record(x.valid && y.valid, "trial " + std::to_string(i) + ": exch violation " +
                                     format::exact(x.violation) + ", rand violation " +
                                     format::exact(y.violation));
  }
  return r;
}

inline SuiteResult coverage_suite() {
  SuiteResult r{"prediction sets keep their coverage"};
  {
    const auto a = to_event(extremal_event(4, 2));
    const auto rep = coverage_check(a, 0.375, Assumption::randomness);
    r.record(rep.passed, "extremal (4,2) at 0.375: worst " + format::exact(rep.worst_coverage));
  }
  {
    const auto a = to_event(all_distinct_event(3));
    const auto rep = coverage_check(a, 2.0 / 9.0, Assumption::randomness);
    r.record(rep.passed, "all-distinct N=3 at 2/9: worst " + format::exact(rep.worst_coverage));
  }
  {
    const SequenceSpace space(2, 4);
    const auto rep = coverage_check(Event::empty(space), 0.05, Assumption::exchangeability);
    r.record(rep.passed && rep.worst_coverage == 1.0, "empty region under exchangeability");
  }
  return r;
}

struct VerifyOptions {
  bool deep = false;
  reference::Expectations expectations;
};

inline std::vector<SuiteResult> run_verification(const VerifyOptions& opt) {
  std::vector<SuiteResult> out;
  out.push_back(reference_suite(opt.expectations));

  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs = {
      {3, 2}, {4, 2}, {5, 2}, {4, 3}, {5, 3}};
  if (opt.deep) pairs.insert(pairs.end(), {{6, 3}, {7, 3}, {8, 2}, {6, 4}, {7, 4}});
  out.push_back(tightness_suite(pairs));

  const std::size_t per_family = opt.deep ? 500 : 60;
  auto b = bound_suites({{2, 5}, {3, 4}}, per_family, 0xb0b0);
  out.push_back(std::move(b.infinite_bound));
  out.push_back(std::move(b.finite_bound));
  out.push_back(std::move(b.dominance));

  out.push_back(convexity_suite(opt.deep ? 1'000'000 : 100'000));
  out.push_back(robbins_suite(opt.deep ? 1'000'000 : 100'000));
  out.push_back(slope_suite(1000));
  out.push_back(optimizer_suite(opt.deep ? 100 : 30, 0x0971));
  out.push_back(mixture_suite(opt.deep ? 1000 : 200, 0x313));
  out.push_back(conversion_suite());
  out.push_back(p_variable_suite(opt.deep ? 200 : 40, 0x9a1));
  out.push_back(coverage_suite());
  return out;
}

}  // namespace exrand::suites
