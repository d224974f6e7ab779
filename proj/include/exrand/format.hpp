#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

// Locale-independent decimal rendering.
namespace exrand::format {

inline std::string fixed(double x, int decimals) {
  char buf[512];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, decimals);
  if (ec != std::errc{}) return std::to_string(x);
  return std::string(buf, end);
}

inline std::string significant(double x, int digits) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, digits);
  if (ec != std::errc{}) return std::to_string(x);
  return std::string(buf, end);
}

// Shortest representation that round-trips.
inline std::string exact(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) return std::to_string(x);
  return std::string(buf, end);
}

// Probabilities: 6 significant digits.
inline std::string probability(double p) { return significant(p, 6); }

// log10 values: 4 decimals.
inline std::string log10_value(double v) { return fixed(v, 4); }

}  // namespace exrand::format
