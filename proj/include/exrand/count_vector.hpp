#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <vector>

namespace exrand {

// Multiplicities n_1..n_K of the symbols in a sequence; identifies an orbit
// (the set of all rearrangements of that sequence).
class CountVector {
 public:
  CountVector() = default;
  CountVector(std::initializer_list<std::uint64_t> counts) : counts_(counts) {}
  explicit CountVector(std::vector<std::uint64_t> counts) : counts_(std::move(counts)) {}

  std::size_t size() const noexcept { return counts_.size(); }
  std::uint64_t operator[](std::size_t i) const { return counts_[i]; }
  std::uint64_t& operator[](std::size_t i) { return counts_[i]; }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  const std::vector<std::uint64_t>& vector() const noexcept { return counts_; }

  std::uint64_t total() const noexcept {
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
  }

  // Number of symbols that actually occur.
  std::size_t distinct() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(counts_.begin(), counts_.end(), [](std::uint64_t c) { return c != 0; }));
  }

  auto begin() const noexcept { return counts_.begin(); }
  auto end() const noexcept { return counts_.end(); }

  friend bool operator==(const CountVector&, const CountVector&) = default;
  friend auto operator<=>(const CountVector&, const CountVector&) = default;

 private:
  std::vector<std::uint64_t> counts_;
};

}  // namespace exrand
