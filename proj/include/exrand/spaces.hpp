#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exrand/combinatorics.hpp"
#include "exrand/count_vector.hpp"
#include "exrand/errors.hpp"

namespace exrand {

inline constexpr std::uint64_t max_enumerable_space = std::uint64_t{1} << 24;
inline constexpr std::uint64_t max_orbit_size = 1'000'000;
inline constexpr std::uint64_t max_orbit_count = 10'000'000;

// Z^N with Z = {1, ..., K}. A sequence is indexed by reading its symbols as
// base-K digits (symbol 1 is digit 0), first observation most significant.
class SequenceSpace {
 public:
  SequenceSpace(std::uint64_t k, std::uint64_t n) : k_(k), n_(n) {
    if (k == 0 || n == 0) throw std::invalid_argument("SequenceSpace: k and n must be positive");
    // k^n saturated at 2^63 + 1 so indexable() can reject it.
    constexpr std::uint64_t cap = (std::uint64_t{1} << 63);
    std::uint64_t size = 1;
    for (std::uint64_t i = 0; i < n && size <= cap; ++i) {
      size = (size > cap / k) ? cap + 1 : size * k;
    }
    size_ = size;
  }

  std::uint64_t k() const noexcept { return k_; }
  std::uint64_t n() const noexcept { return n_; }

  // Sequences can be addressed by a 64-bit index.
  bool indexable() const noexcept { return size_ <= (std::uint64_t{1} << 63); }
  bool enumerable() const noexcept { return size_ <= max_enumerable_space; }

  std::uint64_t size() const {
    require_indexable();
    return size_;
  }

  void require_indexable() const {
    if (!indexable()) {
      throw guard_error("sequence space K^N = " + describe() + " does not fit a 64-bit index",
                        std::pow(static_cast<long double>(k_), static_cast<long double>(n_)));
    }
  }

  void require_enumerable() const {
    if (!enumerable()) {
      throw guard_error("sequence space " + describe() + " exceeds the enumeration limit 2^24",
                        std::pow(static_cast<long double>(k_), static_cast<long double>(n_)));
    }
  }

  std::string describe() const { return std::to_string(k_) + "^" + std::to_string(n_); }

  friend bool operator==(const SequenceSpace&, const SequenceSpace&) = default;

 private:
  std::uint64_t k_;
  std::uint64_t n_;
  std::uint64_t size_ = 0;
};

using Symbol = std::uint32_t;

class Sequence {
 public:
  Sequence(const SequenceSpace& space, std::vector<Symbol> symbols)
      : space_(space), symbols_(std::move(symbols)) {
    if (symbols_.size() != space.n()) {
      throw std::invalid_argument("Sequence: length " + std::to_string(symbols_.size()) +
                                  " does not match n = " + std::to_string(space.n()));
    }
    for (Symbol s : symbols_) {
      if (s < 1 || s > space.k()) {
        throw std::invalid_argument("Sequence: symbol " + std::to_string(s) +
                                    " outside 1.." + std::to_string(space.k()));
      }
    }
  }

  const SequenceSpace& space() const noexcept { return space_; }
  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }

  friend bool operator==(const Sequence& a, const Sequence& b) {
    return a.space_ == b.space_ && a.symbols_ == b.symbols_;
  }

 private:
  SequenceSpace space_;
  std::vector<Symbol> symbols_;
};

inline std::uint64_t encode(const Sequence& seq) {
  const auto& space = seq.space();
  space.require_indexable();
  std::uint64_t idx = 0;
  for (Symbol s : seq.symbols()) idx = idx * space.k() + (s - 1);
  return idx;
}

inline Sequence decode(const SequenceSpace& space, std::uint64_t index) {
  if (index >= space.size()) throw std::out_of_range("decode: index outside the space");
  std::vector<Symbol> symbols(space.n());
  for (std::size_t i = symbols.size(); i-- > 0;) {
    symbols[i] = static_cast<Symbol>(index % space.k()) + 1;
    index /= space.k();
  }
  return Sequence(space, std::move(symbols));
}

inline CountVector count_vector(const Sequence& seq) {
  std::vector<std::uint64_t> counts(seq.space().k(), 0);
  for (Symbol s : seq.symbols()) ++counts[s - 1];
  return CountVector(std::move(counts));
}

// Count vector straight from an index, without materializing the sequence.
inline CountVector count_vector(const SequenceSpace& space, std::uint64_t index) {
  std::vector<std::uint64_t> counts(space.k(), 0);
  for (std::uint64_t i = 0; i < space.n(); ++i) {
    ++counts[index % space.k()];
    index /= space.k();
  }
  return CountVector(std::move(counts));
}

// A subset of Z^N held as sorted, deduplicated sequence indices.
class Event {
 public:
  Event(const SequenceSpace& space, std::vector<std::uint64_t> members)
      : space_(space), members_(std::move(members)) {
    const std::uint64_t size = space.size();
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!members_.empty() && members_.back() >= size) {
      throw std::invalid_argument("Event: member index outside the space");
    }
  }

  static Event empty(const SequenceSpace& space) { return Event(space, {}); }

  static Event full(const SequenceSpace& space) {
    space.require_enumerable();
    std::vector<std::uint64_t> all(space.size());
    for (std::uint64_t i = 0; i < all.size(); ++i) all[i] = i;
    return Event(space, std::move(all));
  }

  static Event of(const SequenceSpace& space, const std::vector<Sequence>& seqs) {
    std::vector<std::uint64_t> idx;
    idx.reserve(seqs.size());
    for (const auto& s : seqs) {
      if (!(s.space() == space)) throw std::invalid_argument("Event: sequence from another space");
      idx.push_back(encode(s));
    }
    return Event(space, std::move(idx));
  }

  const SequenceSpace& space() const noexcept { return space_; }
  const std::vector<std::uint64_t>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }

  bool contains(std::uint64_t index) const {
    return std::binary_search(members_.begin(), members_.end(), index);
  }
  bool contains(const Sequence& seq) const { return contains(encode(seq)); }

 private:
  SequenceSpace space_;
  std::vector<std::uint64_t> members_;
};

// Nonnegative payoff F on Z^N: sparse table plus a default for every
// sequence not listed.
class Payoff {
 public:
  Payoff(const SequenceSpace& space, std::map<std::uint64_t, double> table,
         double default_value = 0.0)
      : space_(space), table_(std::move(table)), default_(default_value) {
    check_value(default_);
    const std::uint64_t size = space.size();
    for (const auto& [idx, v] : table_) {
      if (idx >= size) throw std::invalid_argument("Payoff: index outside the space");
      check_value(v);
    }
  }

  static Payoff constant(const SequenceSpace& space, double c) { return Payoff(space, {}, c); }

  static Payoff indicator(const Event& event) {
    std::map<std::uint64_t, double> table;
    for (auto idx : event.members()) table.emplace_hint(table.end(), idx, 1.0);
    return Payoff(event.space(), std::move(table), 0.0);
  }

  const SequenceSpace& space() const noexcept { return space_; }
  const std::map<std::uint64_t, double>& table() const noexcept { return table_; }
  double default_value() const noexcept { return default_; }

  double operator()(std::uint64_t index) const {
    auto it = table_.find(index);
    return it == table_.end() ? default_ : it->second;
  }
  double operator()(const Sequence& seq) const { return (*this)(encode(seq)); }

  Payoff scaled(double factor) const {
    if (!(factor >= 0.0) || std::isinf(factor)) {
      throw std::invalid_argument("Payoff::scaled: factor must be finite and nonnegative");
    }
    auto table = table_;
    for (auto& [idx, v] : table) v *= factor;
    return Payoff(space_, std::move(table), default_ * factor);
  }

 private:
  static void check_value(double v) {
    if (!(v >= 0.0) || std::isinf(v)) {
      throw std::invalid_argument("Payoff: values must be finite and nonnegative");
    }
  }

  SequenceSpace space_;
  std::map<std::uint64_t, double> table_;
  double default_;
};

// Probability vector Q on {1, ..., K}.
class SimplexPoint {
 public:
  explicit SimplexPoint(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw std::invalid_argument("SimplexPoint: empty");
    double sum = 0.0;
    for (double p : probs_) {
      if (!(p >= 0.0) || std::isinf(p)) {
        throw std::invalid_argument("SimplexPoint: probabilities must be finite and nonnegative");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw std::invalid_argument("SimplexPoint: probabilities must sum to 1");
    }
  }

  static SimplexPoint uniform(std::size_t k) {
    return SimplexPoint(std::vector<double>(k, 1.0 / static_cast<double>(k)), unchecked{});
  }

  // Renormalizes instead of validating; for optimizer iterates.
  static SimplexPoint normalized(std::vector<double> weights) {
    double sum = 0.0;
    for (double w : weights) sum += w;
    if (!(sum > 0.0)) throw std::invalid_argument("SimplexPoint::normalized: zero total weight");
    for (double& w : weights) w /= sum;
    return SimplexPoint(std::move(weights), unchecked{});
  }

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const noexcept { return probs_; }

  friend bool operator==(const SimplexPoint&, const SimplexPoint&) = default;

 private:
  struct unchecked {};
  SimplexPoint(std::vector<double> probs, unchecked) : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

// Exchangeable law on Z^N written as a mixture of orbit-uniform measures
// (the extreme points of the exchangeable laws on a finite alphabet).
class OrbitMixture {
 public:
  OrbitMixture(const SequenceSpace& space, std::vector<std::pair<CountVector, double>> weights)
      : space_(space), weights_(std::move(weights)) {
    double sum = 0.0;
    for (const auto& [c, w] : weights_) {
      if (c.size() != space.k() || c.total() != space.n()) {
        throw std::invalid_argument("OrbitMixture: count vector does not match the space");
      }
      if (!(w >= 0.0) || std::isinf(w)) {
        throw std::invalid_argument("OrbitMixture: weights must be finite and nonnegative");
      }
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw std::invalid_argument("OrbitMixture: weights must sum to 1");
    }
  }

  const SequenceSpace& space() const noexcept { return space_; }
  const std::vector<std::pair<CountVector, double>>& weights() const noexcept { return weights_; }

 private:
  SequenceSpace space_;
  std::vector<std::pair<CountVector, double>> weights_;
};

// The whole orbit of a count vector, described analytically so that orbits
// far too large to list (22! members) still carry closed-form bounds.
struct OrbitEvent {
  SequenceSpace space;
  CountVector counts;

  OrbitEvent(const SequenceSpace& s, CountVector c) : space(s), counts(std::move(c)) {
    if (counts.size() != s.k() || counts.total() != s.n()) {
      throw std::invalid_argument("OrbitEvent: count vector does not match the space");
    }
  }
};

// ---------------------------------------------------------------------------
// Orbits

namespace detail {

inline long double orbit_count_estimate(const SequenceSpace& space) {
  // C(n + k - 1, k - 1)
  const long double n = static_cast<long double>(space.n());
  const long double k = static_cast<long double>(space.k());
  return std::exp(std::lgamma(n + k) - std::lgamma(n + 1) - std::lgamma(k));
}

inline CountVector first_orbit(const SequenceSpace& space) {
  std::vector<std::uint64_t> c(space.k(), 0);
  c[0] = space.n();
  return CountVector(std::move(c));
}

// Next weak composition in lexicographically descending order; false after
// the last one, (0, ..., 0, n).
inline bool next_orbit(CountVector& c) {
  const std::size_t k = c.size();
  if (k < 2) return false;
  // Rightmost nonzero position before the last slot.
  std::size_t i = k - 1;
  while (i-- > 0) {
    if (c[i] != 0) break;
    if (i == 0) return false;
  }
  if (c[i] == 0) return false;
  --c[i];
  const std::uint64_t tail = c[k - 1] + 1;
  c[k - 1] = 0;
  c[i + 1] = tail;
  return true;
}

}  // namespace detail

// Number of orbits, C(n + k - 1, k - 1), saturating at uint64 max.
inline std::uint64_t orbit_count(const SequenceSpace& space) {
  const std::uint64_t top = space.n() + space.k() - 1;
  std::uint64_t r = std::min(space.k() - 1, space.n());
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    acc = acc * (top - r + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(acc);
}

inline std::vector<CountVector> enumerate_orbits(const SequenceSpace& space) {
  const std::uint64_t count = orbit_count(space);
  if (count > max_orbit_count) {
    throw guard_error("enumerate_orbits: " + std::to_string(count) +
                          " orbits exceed the limit 10^7",
                      static_cast<long double>(count));
  }
  std::vector<CountVector> out;
  out.reserve(count);
  CountVector c = detail::first_orbit(space);
  do {
    out.push_back(c);
  } while (detail::next_orbit(c));
  return out;
}

// Exact orbit size N!/prod n_k! when it fits in a double mantissa.
inline double orbit_size(const CountVector& counts) {
  const double s = std::exp(log_multinomial(counts).log());
  return s < 9.0e15 ? std::round(s) : s;
}

// Distinct rearrangements of the orbit, in ascending index order.
inline std::vector<Sequence> orbit_members(const SequenceSpace& space, const CountVector& counts) {
  if (counts.size() != space.k() || counts.total() != space.n()) {
    throw std::invalid_argument("orbit_members: count vector does not match the space");
  }
  const double size = orbit_size(counts);
  if (size > static_cast<double>(max_orbit_size)) {
    throw guard_error("orbit_members: orbit size exceeds the limit 10^6",
                      static_cast<long double>(size));
  }
  std::vector<Symbol> seq;
  seq.reserve(space.n());
  for (std::size_t c = 0; c < counts.size(); ++c) {
    seq.insert(seq.end(), counts[c], static_cast<Symbol>(c + 1));
  }
  std::vector<Sequence> out;
  out.reserve(static_cast<std::size_t>(size));
  do {
    out.emplace_back(space, seq);
  } while (std::next_permutation(seq.begin(), seq.end()));
  return out;
}

inline std::vector<Sequence> orbit_members(const CountVector& counts) {
  return orbit_members(SequenceSpace(counts.size(), counts.total()), counts);
}

// ---------------------------------------------------------------------------
// Expectations

// Q^N(x) for one sequence index.
inline double sequence_probability(const SimplexPoint& q, const SequenceSpace& space,
                                   std::uint64_t index) {
  double p = 1.0;
  for (std::uint64_t i = 0; i < space.n(); ++i) {
    p *= q[index % space.k()];
    index /= space.k();
  }
  return p;
}

// E_{Q^N} F = default + sum over the table of (F(x) - default) Q^N(x).
inline double product_expectation(const SimplexPoint& q, const Payoff& f) {
  if (q.size() != f.space().k()) {
    throw std::invalid_argument("product_expectation: Q has the wrong alphabet size");
  }
  const double d = f.default_value();
  double acc = 0.0;
  for (const auto& [idx, v] : f.table()) {
    acc += (v - d) * sequence_probability(q, f.space(), idx);
  }
  return std::max(0.0, d + acc);
}

// Average of F over the orbit of `counts`; equals the average over all N!
// permutations because each distinct member repeats equally often.
inline double orbit_average(const Payoff& f, const CountVector& counts) {
  const auto& space = f.space();
  if (counts.size() != space.k() || counts.total() != space.n()) {
    throw std::invalid_argument("orbit_average: count vector does not match the space");
  }
  const double d = f.default_value();
  double acc = 0.0;
  for (const auto& [idx, v] : f.table()) {
    if (v != d && count_vector(space, idx) == counts) acc += v - d;
  }
  return std::max(0.0, d + acc / orbit_size(counts));
}

inline double mixture_expectation(const OrbitMixture& m, const Payoff& f) {
  if (!(m.space() == f.space())) {
    throw std::invalid_argument("mixture_expectation: mixture and payoff live on different spaces");
  }
  double acc = 0.0;
  for (const auto& [c, w] : m.weights()) {
    if (w != 0.0) acc += w * orbit_average(f, c);
  }
  return acc;
}

// q_c = n_c / N: the Q maximizing the probability of any single orbit member.
inline SimplexPoint empirical_mle(const CountVector& counts) {
  const std::uint64_t n = counts.total();
  if (n == 0) throw std::invalid_argument("empirical_mle: counts must not all be zero");
  std::vector<double> q(counts.size());
  for (std::size_t c = 0; c < q.size(); ++c) {
    q[c] = static_cast<double>(counts[c]) / static_cast<double>(n);
  }
  return SimplexPoint::normalized(std::move(q));
}

}  // namespace exrand
