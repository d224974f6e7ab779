#pragma once

#include <array>
#include <cstdint>

// Published numbers the library must reproduce. This is the only place they
// are written down; the CLI and the test suites read them from here.
namespace exrand::reference {

struct Expectations {
  // All-distinct event on N = 7 letters is significant at 1%.
  std::uint64_t distinct_n = 7;
  double distinct_level = 1e-2;
  double distinct_robbins_bound = 7.237e-3;
  double robbins_rel_tol = 1e-3;

  // 1% needs N >= 3k + 1 = 7 with k = 2.
  unsigned percent_k = 2;
  std::uint64_t percent_sufficient_n = 7;
  std::uint64_t percent_minimal_n = 7;

  // "5 sigma" ~ 1/(3 x 10^6) is met from N = 22 (k = 7 rule).
  double five_sigma_level = 1.0 / 3e6;
  std::uint64_t five_sigma_n = 22;
  unsigned five_sigma_k = 7;

  // Exactly half heads in 1000 tosses.
  std::uint64_t coin_n = 1000;
  double coin_urp = 0.0252;
  double coin_tol = 5e-5;

  // log10 growth of C per unit K on the first three segments left of N.
  std::array<double, 3> slopes = {0.3010, 0.4030, 0.4709};
  double slope_tol = 5e-4;

  // log10 C(N, K >= N) = log10(N^N / N!) at N = 1000.
  std::uint64_t endpoint_n = 1000;
  double endpoint_log10 = 432.3954;
  double endpoint_tol = 1e-4;
  double bracket_tol = 1e-6;
};

}  // namespace exrand::reference
