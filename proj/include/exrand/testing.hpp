#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "exrand/bounds.hpp"
#include "exrand/combinatorics.hpp"
#include "exrand/spaces.hpp"

namespace exrand {

enum class Assumption { exchangeability, randomness };

inline std::string_view to_string(Assumption a) {
  return a == Assumption::exchangeability ? "exchangeability" : "randomness";
}

inline constexpr double validity_slack = 1e-9;

// A statistic P : Z^N -> [0, 1], stored densely by sequence index.
class PVariable {
 public:
  PVariable(const SequenceSpace& space, std::vector<double> values)
      : space_(space), values_(std::move(values)) {
    space.require_enumerable();
    if (values_.size() != space.size()) {
      throw std::invalid_argument("PVariable: need one value per sequence");
    }
    for (double v : values_) {
      if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("PVariable: values must lie in [0, 1]");
    }
  }

  const SequenceSpace& space() const noexcept { return space_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double operator()(std::uint64_t index) const { return values_.at(index); }

  // {P <= epsilon}
  Event sublevel(double epsilon) const {
    std::vector<std::uint64_t> idx;
    for (std::uint64_t i = 0; i < values_.size(); ++i) {
      if (values_[i] <= epsilon) idx.push_back(i);
    }
    return Event(space_, std::move(idx));
  }

 private:
  SequenceSpace space_;
  std::vector<double> values_;
};

struct ValidationReport {
  bool valid = true;
  std::optional<double> worst_epsilon;  // p-variables only
  double violation = 0.0;
};

inline BoundReport upper_probability(const Event& a, Assumption assumption,
                                     const UreOptions& opt = {}) {
  return assumption == Assumption::exchangeability ? uxp(a) : urp(a, opt);
}

inline BoundReport upper_expectation(const Payoff& f, Assumption assumption,
                                     const UreOptions& opt = {}) {
  return assumption == Assumption::exchangeability ? uxe(f) : ure(f, opt);
}

// Checks sup_law law(P <= eps) <= eps. The sublevel sets only change at
// achieved values of P, so those are the only levels that need checking.
inline ValidationReport validate_p_variable(const PVariable& p, Assumption assumption,
                                            const UreOptions& opt = {}) {
  std::set<double> levels(p.values().begin(), p.values().end());
  ValidationReport r;
  r.violation = -std::numeric_limits<double>::infinity();
  for (double eps : levels) {
    const double v = upper_probability(p.sublevel(eps), assumption, opt).value - eps;
    if (v > r.violation) {
      r.violation = v;
      r.worst_epsilon = eps;
    }
  }
  r.valid = r.violation <= validity_slack;
  return r;
}

inline ValidationReport validate_e_variable(const Payoff& f, Assumption assumption,
                                            const UreOptions& opt = {}) {
  ValidationReport r;
  r.violation = upper_expectation(f, assumption, opt).value - 1.0;
  r.valid = r.violation <= validity_slack;
  return r;
}

// e-variable `scale` times the indicator of a whole orbit, too large to list.
inline ValidationReport validate_e_variable(const OrbitEvent& a, double scale,
                                            Assumption assumption) {
  if (!(scale >= 0.0) || std::isinf(scale)) {
    throw std::invalid_argument("validate_e_variable: scale must be finite and nonnegative");
  }
  const double upper =
      assumption == Assumption::exchangeability ? scale : scale * log_orbit_urp(a.counts).value();
  ValidationReport r;
  r.violation = upper - 1.0;
  r.valid = r.violation <= validity_slack;
  return r;
}

// Randomness e-variable -> exchangeability e-variable: divide by C(N, K).
// No smaller universal divisor exists.
inline Payoff exch_e_from_rand_e(const Payoff& f) {
  const auto c = tight_constant(f.space().n(), f.space().k());
  return f.scaled(std::exp(-c.log_c));
}

// Gamma = {z : prefix + z is outside the critical region A}.
inline std::vector<Symbol> prediction_set(const Event& a, const std::vector<Symbol>& prefix) {
  const auto& space = a.space();
  if (prefix.size() + 1 != space.n()) {
    throw std::invalid_argument("prediction_set: prefix must have length n - 1");
  }
  std::uint64_t base = 0;
  for (Symbol s : prefix) {
    if (s < 1 || s > space.k()) throw std::invalid_argument("prediction_set: symbol out of range");
    base = base * space.k() + (s - 1);
  }
  base *= space.k();
  std::vector<Symbol> gamma;
  for (std::uint64_t z = 0; z < space.k(); ++z) {
    if (!a.contains(base + z)) gamma.push_back(static_cast<Symbol>(z + 1));
  }
  return gamma;
}

struct CoverageReport {
  bool passed = false;
  double worst_coverage = 1.0;
  std::size_t laws_checked = 0;
  double grid_step = 0.0;  // randomness only
};

namespace detail {

inline std::vector<Symbol> digits(const SequenceSpace& space, std::uint64_t index,
                                  std::size_t length) {
  std::vector<Symbol> out(length);
  for (std::size_t i = length; i-- > 0;) {
    out[i] = static_cast<Symbol>(index % space.k()) + 1;
    index /= space.k();
  }
  return out;
}

inline double coverage_grid_step(std::size_t k) { return k <= 2 ? 0.01 : 0.02; }

}  // namespace detail

// Worst-case probability that z_N falls in Gamma(z_1..z_{N-1}): over a Q
// grid (step 0.01 for two letters, 0.02 for three) under randomness, over
// all orbit-uniform laws under exchangeability (mixtures are never worse).
inline CoverageReport coverage_check(const Event& a, double epsilon, Assumption assumption,
                                     const UreOptions& opt = {}) {
  const auto& space = a.space();
  space.require_enumerable();
  if (space.n() < 2) throw std::invalid_argument("coverage_check: need n >= 2");
  const double level = upper_probability(a, assumption, opt).value;
  if (level > epsilon + validity_slack) {
    throw std::invalid_argument("coverage_check: event is not a critical region at this level");
  }
  const std::size_t k = space.k();
  const std::uint64_t prefixes = space.size() / k;
  std::vector<std::vector<Symbol>> gammas(prefixes);
  for (std::uint64_t p = 0; p < prefixes; ++p) {
    gammas[p] = prediction_set(a, detail::digits(space, p, space.n() - 1));
  }

  CoverageReport r;
  if (assumption == Assumption::randomness) {
    if (k > 3) throw unsupported_method("coverage_check under randomness supports K <= 3");
    r.grid_step = detail::coverage_grid_step(k);
    const auto m = static_cast<std::uint32_t>(std::round(1.0 / r.grid_step));
    const SequenceSpace prefix_space(k, space.n() - 1);
    auto check = [&](const std::vector<double>& qv) {
      const auto q = SimplexPoint::normalized(qv);
      double cover = 0.0;
      for (std::uint64_t p = 0; p < prefixes; ++p) {
        double in = 0.0;
        for (Symbol z : gammas[p]) in += q[z - 1];
        cover += sequence_probability(q, prefix_space, p) * in;
      }
      r.worst_coverage = std::min(r.worst_coverage, cover);
      ++r.laws_checked;
    };
    const double md = m;
    if (k == 1) {
      check({1.0});
    } else if (k == 2) {
      for (std::uint32_t i = 0; i <= m; ++i) check({i / md, (m - i) / md});
    } else {
      for (std::uint32_t i = 0; i <= m; ++i) {
        for (std::uint32_t j = 0; i + j <= m; ++j) check({i / md, j / md, (m - i - j) / md});
      }
    }
  } else {
    for (const auto& orbit : enumerate_orbits(space)) {
      const auto members = orbit_members(space, orbit);
      std::size_t covered = 0;
      for (const auto& x : members) {
        const auto& s = x.symbols();
        const std::vector<Symbol> prefix(s.begin(), s.end() - 1);
        std::uint64_t p = 0;
        for (Symbol c : prefix) p = p * k + (c - 1);
        const auto& g = gammas[p];
        if (std::binary_search(g.begin(), g.end(), s.back())) ++covered;
      }
      r.worst_coverage = std::min(
          r.worst_coverage, static_cast<double>(covered) / static_cast<double>(members.size()));
      ++r.laws_checked;
    }
  }
  r.passed = r.worst_coverage >= 1.0 - epsilon - validity_slack;
  return r;
}

// Z = {1..N}, all N observations different: UXP = 1, URP = N!/N^N.
inline OrbitEvent all_distinct_event(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("all_distinct_event: n must be positive");
  return OrbitEvent(SequenceSpace(n, n), CountVector(std::vector<std::uint64_t>(n, 1)));
}

// N coin tosses with exactly N/2 heads: URP = N!/((N/2)!)^2 2^{-N}.
inline OrbitEvent half_heads_event(std::uint64_t n) {
  if (n == 0 || n % 2 != 0) throw std::invalid_argument("half_heads_event: n must be even and positive");
  return OrbitEvent(SequenceSpace(2, n), CountVector{n / 2, n / 2});
}

}  // namespace exrand
