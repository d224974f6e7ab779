#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string_view>
#include <variant>
#include <vector>

#include "exrand/combinatorics.hpp"
#include "exrand/errors.hpp"
#include "exrand/spaces.hpp"

namespace exrand {

enum class Quantity { uxp, urp, uxe, ure };
enum class Method { orbit_exact, closed_form, multistart_gradient, grid_oracle };

inline std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::uxp: return "UXP";
    case Quantity::urp: return "URP";
    case Quantity::uxe: return "UXE";
    case Quantity::ure: return "URE";
  }
  return "?";
}

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::orbit_exact: return "orbit-exact";
    case Method::closed_form: return "closed-form";
    case Method::multistart_gradient: return "multistart-gradient";
    case Method::grid_oracle: return "grid-oracle";
  }
  return "?";
}

using Witness = std::variant<CountVector, SimplexPoint>;

struct BoundReport {
  Quantity quantity = Quantity::uxe;
  double value = 0.0;
  Method method = Method::orbit_exact;
  Witness witness;
  double tolerance = 0.0;
};

// ---------------------------------------------------------------------------
// Orbit decomposition of a payoff

namespace detail {

// F = d + sum over orbits o of (W_o summed over the listed members of o).
// Under Q^N every member of o has probability prod_c q_c^{n_c}, so
//   E_{Q^N} F = d + sum_o W_o prod_c q_c^{n_c}.
struct OrbitTerm {
  CountVector counts;
  double weight = 0.0;
};

inline std::vector<OrbitTerm> orbit_terms(const Payoff& f) {
  std::map<CountVector, double> acc;
  const double d = f.default_value();
  for (const auto& [idx, v] : f.table()) {
    if (v == d) continue;
    acc[count_vector(f.space(), idx)] += v - d;
  }
  std::vector<OrbitTerm> out;
  out.reserve(acc.size());
  for (auto& [c, w] : acc) out.push_back({c, w});
  return out;
}

inline double monomial(const std::vector<double>& q, const CountVector& c) {
  double p = 1.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    if (q[i] == 0.0) return 0.0;
    p *= std::pow(q[i], static_cast<double>(c[i]));
  }
  return p;
}

class ProductPolynomial {
 public:
  explicit ProductPolynomial(const Payoff& f)
      : n_(static_cast<double>(f.space().n())),
        k_(f.space().k()),
        default_(f.default_value()),
        terms_(orbit_terms(f)) {}

  double operator()(const std::vector<double>& q) const {
    double acc = default_;
    for (const auto& t : terms_) acc += t.weight * monomial(q, t.counts);
    return std::max(0.0, acc);
  }

  // Gradient of the homogeneous extension sum_x F(x) prod_i q_{x_i}; all its
  // coefficients are nonnegative, so every component is >= 0.
  std::vector<double> gradient(const std::vector<double>& q) const {
    std::vector<double> g(k_, n_ * default_);
    for (const auto& t : terms_) {
      for (std::size_t c = 0; c < k_; ++c) {
        if (t.counts[c] == 0) continue;
        double p = t.weight * static_cast<double>(t.counts[c]);
        for (std::size_t j = 0; j < k_ && p != 0.0; ++j) {
          const std::uint64_t e = t.counts[j] - (j == c ? 1 : 0);
          if (e == 0) continue;
          if (q[j] == 0.0) {
            p = 0.0;
            break;
          }
          p *= std::pow(q[j], static_cast<double>(e));
        }
        g[c] += p;
      }
    }
    for (double& x : g) x = std::max(0.0, x);
    return g;
  }

  const std::vector<OrbitTerm>& terms() const noexcept { return terms_; }
  double default_value() const noexcept { return default_; }

 private:
  double n_;
  std::size_t k_;
  double default_;
  std::vector<OrbitTerm> terms_;
};

// ln of the largest probability Q^N assigns to a single orbit member:
//   sum_k n_k ln(n_k / N), attained at Q = empirical_mle.
inline double log_member_max_probability(const CountVector& counts) {
  const double n = static_cast<double>(counts.total());
  double acc = 0.0;
  for (std::uint64_t c : counts) {
    if (c != 0) acc += static_cast<double>(c) * std::log(static_cast<double>(c) / n);
  }
  return acc;
}

inline void require_orbit_shape(const SequenceSpace& space, const CountVector& counts) {
  if (counts.size() != space.k() || counts.total() != space.n()) {
    throw std::invalid_argument("count vector does not match the space");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exchangeability side

// UXE(F) = max over orbits of the orbit average of F. Orbits not touched by
// the payoff table average to the default value.
inline BoundReport uxe(const Payoff& f) {
  const auto& space = f.space();
  const double d = f.default_value();
  const auto terms = detail::orbit_terms(f);

  BoundReport r;
  r.quantity = Quantity::uxe;
  r.method = Method::orbit_exact;
  r.tolerance = 0.0;

  std::optional<CountVector> best;
  double best_value = -1.0;
  // Ties go to the orbit that comes first in descending lexicographic order.
  auto consider = [&](const CountVector& c, double v) {
    if (v > best_value || (v == best_value && best && c > *best)) {
      best_value = v;
      best = c;
    }
  };
  for (const auto& t : terms) {
    consider(t.counts, std::max(0.0, d + t.weight / orbit_size(t.counts)));
  }
  if (terms.size() < orbit_count(space)) {
    std::map<CountVector, bool> touched;
    for (const auto& t : terms) touched.emplace(t.counts, true);
    CountVector c = detail::first_orbit(space);
    while (touched.contains(c)) {
      if (!detail::next_orbit(c)) break;
    }
    consider(c, d);
  }
  r.value = best_value;
  r.witness = *best;
  return r;
}

inline BoundReport uxp(const Event& a) {
  auto r = uxe(Payoff::indicator(a));
  r.quantity = Quantity::uxp;
  return r;
}

inline BoundReport uxp(const OrbitEvent& a) {
  return BoundReport{Quantity::uxp, 1.0, Method::closed_form, a.counts, 0.0};
}

// ---------------------------------------------------------------------------
// Randomness side: closed form for payoffs living on one orbit

// URE(F) = Fbar * N!/prod n_k! * prod (n_k/N)^{n_k} for F vanishing off the
// orbit of `counts`.
inline double ure_closed_form(const Payoff& f, const CountVector& counts) {
  detail::require_orbit_shape(f.space(), counts);
  if (f.default_value() != 0.0) {
    throw std::invalid_argument("ure_closed_form: payoff has a nonzero default value");
  }
  for (const auto& [idx, v] : f.table()) {
    if (v != 0.0 && count_vector(f.space(), idx) != counts) {
      throw std::invalid_argument("ure_closed_form: payoff is nonzero off the orbit");
    }
  }
  const double avg = orbit_average(f, counts);
  if (avg == 0.0) return 0.0;
  return avg * std::exp(log_multinomial(counts).log() + detail::log_member_max_probability(counts));
}

// Largest Q^N probability of a whole orbit, in log domain.
inline LogReal log_orbit_urp(const CountVector& counts) {
  return LogReal::from_log(log_multinomial(counts).log() +
                           detail::log_member_max_probability(counts));
}

inline BoundReport urp(const OrbitEvent& a) {
  return BoundReport{Quantity::urp, log_orbit_urp(a.counts).value(), Method::closed_form,
                     empirical_mle(a.counts), 1e-12};
}

// ---------------------------------------------------------------------------
// Randomness side: numeric optimization over the simplex

struct OptimizerOptions {
  int restarts = 8;
  double tol = 1e-12;
  int max_iterations = 10'000;
  std::uint64_t seed = 0x5eed'1d5e'ed00'2024ULL;
};

namespace detail {

// Uniform point of the simplex from normalized exponentials.
inline std::vector<double> random_simplex_point(std::mt19937_64& rng, std::size_t k) {
  std::vector<double> w(k);
  double sum = 0.0;
  for (double& x : w) {
    const double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
    x = -std::log(u);
    sum += x;
  }
  for (double& x : w) x /= sum;
  return w;
}

struct ClimbResult {
  std::vector<double> q;
  double value = 0.0;
};

// Growth-transform ascent q_c <- q_c dG/dq_c / sum_j q_j dG/dq_j, which never
// decreases a polynomial with nonnegative coefficients. The step toward the
// transform is halved whenever rounding makes the objective drop.
inline ClimbResult climb(const ProductPolynomial& g, std::vector<double> q,
                         const OptimizerOptions& opt) {
  double value = g(q);
  double alpha = 1.0;
  for (int it = 0; it < opt.max_iterations; ++it) {
    const auto grad = g.gradient(q);
    double s = 0.0;
    for (std::size_t c = 0; c < q.size(); ++c) s += q[c] * grad[c];
    if (!(s > 0.0)) break;
    std::vector<double> cand(q.size());
    double total = 0.0;
    for (std::size_t c = 0; c < q.size(); ++c) {
      cand[c] = (1.0 - alpha) * q[c] + alpha * q[c] * grad[c] / s;
      total += cand[c];
    }
    for (double& x : cand) x /= total;
    const double cv = g(cand);
    if (cv < value) {
      alpha *= 0.5;
      if (alpha < 1e-6) break;
      continue;
    }
    const double improvement = cv - value;
    q = std::move(cand);
    value = cv;
    if (improvement < opt.tol) break;
  }
  return {std::move(q), value};
}

}  // namespace detail

// Multistart lower bound on URE(F) = sup_Q E_{Q^N} F. Starts: uniform, the
// perturbed empirical MLE of every orbit where F averages above zero, then
// `restarts` seeded random simplex points. Ties keep the earliest start.
inline BoundReport ure_numeric(const Payoff& f, const OptimizerOptions& opt = {}) {
  f.space().require_enumerable();
  if (opt.restarts < 1) throw std::invalid_argument("ure_numeric: restarts must be >= 1");
  const std::size_t k = f.space().k();
  const detail::ProductPolynomial g(f);

  std::vector<std::vector<double>> starts;
  starts.push_back(std::vector<double>(k, 1.0 / static_cast<double>(k)));
  constexpr double perturbation = 1e-6;
  for (const auto& t : g.terms()) {
    if (g.default_value() + t.weight / orbit_size(t.counts) <= 0.0) continue;
    const auto mle = empirical_mle(t.counts);
    std::vector<double> q(k);
    for (std::size_t c = 0; c < k; ++c) {
      q[c] = (1.0 - perturbation) * mle[c] + perturbation / static_cast<double>(k);
    }
    starts.push_back(std::move(q));
  }
  std::mt19937_64 rng(opt.seed);
  for (int i = 0; i < opt.restarts; ++i) starts.push_back(detail::random_simplex_point(rng, k));

  detail::ClimbResult best;
  best.value = -1.0;
  for (const auto& s : starts) {
    auto res = detail::climb(g, s, opt);
    if (res.value > best.value) best = std::move(res);
  }
  auto q = SimplexPoint::normalized(best.q);
  return BoundReport{Quantity::ure, product_expectation(q, f), Method::multistart_gradient,
                     std::move(q), opt.tol};
}

namespace detail {

inline std::uint32_t grid_divisions(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw std::invalid_argument("grid step must lie in (0, 1]");
  const double m = std::round(1.0 / step);
  if (m > 2000.0 || std::abs(1.0 / m - step) > 1e-12) {
    throw std::invalid_argument("grid step must be 1/m for an integer m <= 2000");
  }
  return static_cast<std::uint32_t>(m);
}

}  // namespace detail

// Max of E_{Q^N} F over the lattice {Q : m Q integral}, step = 1/m, K <= 3.
inline BoundReport ure_grid_report(const Payoff& f, double step) {
  const std::size_t k = f.space().k();
  if (k > 3) throw unsupported_method("grid oracle supports alphabets of at most 3 letters");
  const std::uint32_t m = detail::grid_divisions(step);
  const detail::ProductPolynomial g(f);
  const double md = static_cast<double>(m);

  std::vector<double> best_q;
  double best = -1.0;
  auto visit = [&](std::vector<double> q) {
    const double v = g(q);
    if (v > best) {
      best = v;
      best_q = std::move(q);
    }
  };
  if (k == 1) {
    visit({1.0});
  } else if (k == 2) {
    for (std::uint32_t i = 0; i <= m; ++i) visit({i / md, (m - i) / md});
  } else {
    for (std::uint32_t i = 0; i <= m; ++i) {
      for (std::uint32_t j = 0; i + j <= m; ++j) visit({i / md, j / md, (m - i - j) / md});
    }
  }
  return BoundReport{Quantity::ure, best, Method::grid_oracle,
                     SimplexPoint::normalized(std::move(best_q)), step};
}

inline double ure_grid_oracle(const Payoff& f, double step) {
  return ure_grid_report(f, step).value;
}

// Default lattice for cross-checks: 1/2000 on two letters, 1/200 on three.
inline double default_grid_step(std::size_t k) { return k <= 2 ? 1.0 / 2000 : 1.0 / 200; }

// ---------------------------------------------------------------------------
// Dispatch

enum class Strategy { automatic, exact, numeric, oracle };

struct UreOptions {
  Strategy strategy = Strategy::automatic;
  OptimizerOptions optimizer;
  std::optional<double> grid_step;
};

namespace detail {

// The single orbit carrying F when F vanishes off it; an empty count vector
// when F is identically zero.
inline std::optional<CountVector> single_orbit_support(const Payoff& f) {
  if (f.default_value() != 0.0) return std::nullopt;
  std::optional<CountVector> orbit;
  for (const auto& [idx, v] : f.table()) {
    if (v == 0.0) continue;
    auto c = count_vector(f.space(), idx);
    if (!orbit) {
      orbit = std::move(c);
    } else if (*orbit != c) {
      return std::nullopt;
    }
  }
  if (!orbit) return CountVector{};
  return orbit;
}

inline bool is_constant(const Payoff& f) {
  return std::all_of(f.table().begin(), f.table().end(),
                     [&](const auto& e) { return e.second == f.default_value(); });
}

}  // namespace detail

inline BoundReport ure(const Payoff& f, const UreOptions& opt = {}) {
  const std::size_t k = f.space().k();
  if (opt.strategy == Strategy::automatic || opt.strategy == Strategy::exact) {
    if (detail::is_constant(f)) {
      return BoundReport{Quantity::ure, f.default_value(), Method::closed_form,
                         SimplexPoint::uniform(k), 0.0};
    }
    if (auto orbit = detail::single_orbit_support(f)) {
      if (orbit->size() == 0) {
        return BoundReport{Quantity::ure, 0.0, Method::closed_form, SimplexPoint::uniform(k), 0.0};
      }
      return BoundReport{Quantity::ure, ure_closed_form(f, *orbit), Method::closed_form,
                         empirical_mle(*orbit), 1e-12};
    }
    if (opt.strategy == Strategy::exact) {
      throw unsupported_method("exact URE needs a payoff supported on a single orbit");
    }
  }
  if (opt.strategy == Strategy::oracle) {
    return ure_grid_report(f, opt.grid_step.value_or(default_grid_step(k)));
  }
  auto numeric = ure_numeric(f, opt.optimizer);
  if (opt.strategy == Strategy::automatic && k <= 3) {
    auto grid = ure_grid_report(f, opt.grid_step.value_or(default_grid_step(k)));
    if (grid.value > numeric.value) return grid;
  }
  return numeric;
}

inline BoundReport urp(const Event& a, const UreOptions& opt = {}) {
  auto r = ure(Payoff::indicator(a), opt);
  r.quantity = Quantity::urp;
  return r;
}

// ---------------------------------------------------------------------------
// Extremal events and the gap

// Orbit of the balanced split of n into k parts (zero counts for the unused
// letters when k > n): UXP = 1 and URP = 1/C(n, k).
inline OrbitEvent extremal_event(std::uint64_t n, std::uint64_t k) {
  const auto split = balanced_split(n, k);
  std::vector<std::uint64_t> counts(k, 0);
  std::copy(split.begin(), split.end(), counts.begin());
  return OrbitEvent(SequenceSpace(k, n), CountVector(std::move(counts)));
}

inline Event to_event(const OrbitEvent& a) {
  std::vector<std::uint64_t> idx;
  for (const auto& s : orbit_members(a.space, a.counts)) idx.push_back(encode(s));
  return Event(a.space, std::move(idx));
}

struct GapRatio {
  std::optional<double> value;  // empty when UXE = URE = 0
  BoundReport uxe;
  BoundReport ure;
  TightConstant constant;
  bool certified = false;         // URE came from a closed form
  bool within_constant = true;    // value <= C (1 + 1e-6)
};

inline GapRatio gap_ratio(const Payoff& f, const UreOptions& opt = {}) {
  GapRatio g{std::nullopt, uxe(f), ure(f, opt), tight_constant(f.space().n(), f.space().k())};
  g.certified = g.ure.method == Method::closed_form;
  if (g.ure.value == 0.0) {
    if (g.uxe.value > 0.0) {
      throw std::logic_error("gap_ratio: URE = 0 while UXE > 0");
    }
    return g;
  }
  g.value = g.uxe.value / g.ure.value;
  g.within_constant = *g.value <= g.constant.value().value() * (1.0 + 1e-6);
  if (g.certified && !g.within_constant) {
    throw std::logic_error("gap_ratio: closed-form ratio exceeds the tight constant");
  }
  return g;
}

}  // namespace exrand
