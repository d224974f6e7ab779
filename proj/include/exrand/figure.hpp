#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include "exrand/combinatorics.hpp"
#include "exrand/format.hpp"

namespace exrand {

inline constexpr std::uint64_t max_figure_n = 10'000'000;
inline constexpr int figure_decimals = 10;

struct FigureOptions {
  std::uint64_t n = 1000;
  std::uint64_t k_max = 0;  // 0 means n
  std::uint64_t step = 1;
};

// CSV of log10 C(n, K) for K = 1, 1 + step, ... <= k_max. Header `K,log10_C`,
// LF line endings.
inline void write_figure(std::ostream& out, const FigureOptions& opt) {
  if (opt.n < 1 || opt.n > max_figure_n) {
    throw std::invalid_argument("figure: n must lie in [1, 10^7]");
  }
  if (opt.step < 1) throw std::invalid_argument("figure: step must be positive");
  const std::uint64_t k_max = opt.k_max == 0 ? opt.n : opt.k_max;
  std::string buf = "K,log10_C\n";
  buf.reserve(1 << 16);
  for (std::uint64_t k = 1; k <= k_max; k += opt.step) {
    buf += std::to_string(k);
    buf += ',';
    buf += format::fixed(tight_constant(opt.n, k).log10_c, figure_decimals);
    buf += '\n';
    if (buf.size() > (1 << 16) - 64) {
      out << buf;
      buf.clear();
    }
  }
  out << buf;
}

}  // namespace exrand
