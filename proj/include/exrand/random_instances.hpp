#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "exrand/bounds.hpp"
#include "exrand/spaces.hpp"
#include "exrand/testing.hpp"

// Seeded generators for the property suites. Only raw mt19937_64 output is
// used (no std distributions) so instances are identical on every platform.
namespace exrand::random_instances {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

inline std::uint64_t below(Rng& rng, std::uint64_t bound) {
  return static_cast<std::uint64_t>(uniform(rng) * static_cast<double>(bound)) % bound;
}

// Each sequence listed with probability `density`, values in [0, 1); one
// payoff in four also gets a positive default.
inline Payoff payoff(Rng& rng, const SequenceSpace& space, double density = 0.5) {
  std::map<std::uint64_t, double> table;
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    if (uniform(rng) < density) table.emplace(i, uniform(rng));
  }
  const double d = below(rng, 4) == 0 ? 0.5 * uniform(rng) : 0.0;
  return Payoff(space, std::move(table), d);
}

inline Event event(Rng& rng, const SequenceSpace& space, double density = 0.3) {
  std::vector<std::uint64_t> idx;
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    if (uniform(rng) < density) idx.push_back(i);
  }
  return Event(space, std::move(idx));
}

inline CountVector orbit(Rng& rng, const SequenceSpace& space) {
  const auto all = enumerate_orbits(space);
  return all[below(rng, all.size())];
}

// Payoff vanishing off one random orbit, random nonnegative values on it.
inline Payoff orbit_payoff(Rng& rng, const SequenceSpace& space) {
  const auto c = orbit(rng, space);
  std::map<std::uint64_t, double> table;
  for (const auto& s : orbit_members(space, c)) {
    const double v = uniform(rng) < 0.8 ? 0.1 + uniform(rng) : 0.0;
    table.emplace(encode(s), v);
  }
  if (std::all_of(table.begin(), table.end(), [](const auto& e) { return e.second == 0.0; })) {
    table.begin()->second = 1.0;
  }
  return Payoff(space, std::move(table), 0.0);
}

inline OrbitMixture mixture(Rng& rng, const SequenceSpace& space) {
  const auto all = enumerate_orbits(space);
  std::vector<std::pair<CountVector, double>> w;
  double sum = 0.0;
  for (const auto& c : all) {
    const double x = uniform(rng) < 0.5 ? uniform(rng) : 0.0;
    w.emplace_back(c, x);
    sum += x;
  }
  if (sum == 0.0) {
    w.front().second = 1.0;
    sum = 1.0;
  }
  double acc = 0.0;
  for (auto& [c, x] : w) {
    x /= sum;
    acc += x;
  }
  w.back().second += 1.0 - acc;
  if (w.back().second < 0.0) w.back().second = 0.0;
  return OrbitMixture(space, std::move(w));
}

// P(x) = UXP{y : T(y) >= T(x)} for a random statistic T with ties: a
// p-variable under exchangeability by construction.
inline PVariable exchangeability_p_variable(Rng& rng, const SequenceSpace& space) {
  const std::uint64_t size = space.size();
  std::vector<std::uint64_t> t(size);
  const std::uint64_t levels = 2 + below(rng, size);
  for (auto& x : t) x = below(rng, levels);
  std::map<std::uint64_t, double> tail_uxp;
  for (std::uint64_t level : t) {
    if (tail_uxp.contains(level)) continue;
    std::vector<std::uint64_t> idx;
    for (std::uint64_t i = 0; i < size; ++i) {
      if (t[i] >= level) idx.push_back(i);
    }
    tail_uxp[level] = uxp(Event(space, std::move(idx))).value;
  }
  std::vector<double> p(size);
  for (std::uint64_t i = 0; i < size; ++i) p[i] = std::min(1.0, tail_uxp[t[i]]);
  return PVariable(space, std::move(p));
}

}  // namespace exrand::random_instances
