#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace exrand {

// A nonnegative real stored as its natural logarithm. Zero is negative
// infinity. Used for everything that overflows a double once N reaches a few
// hundred (N^N / N! at N = 10^6 has about 434 000 decimal digits).
class LogReal {
 public:
  constexpr LogReal() = default;

  static LogReal from_log(double log_value) {
    if (std::isnan(log_value) || log_value == std::numeric_limits<double>::infinity()) {
      throw std::invalid_argument("LogReal: log value must be finite or -inf");
    }
    LogReal r;
    r.log_ = log_value;
    return r;
  }

  static LogReal from_value(double x) {
    if (!(x >= 0.0) || std::isinf(x)) {
      throw std::invalid_argument("LogReal: value must be finite and nonnegative");
    }
    return from_log(std::log(x));
  }

  static constexpr LogReal zero() { return LogReal{}; }
  static LogReal one() { return from_log(0.0); }

  double log() const noexcept { return log_; }
  double log10() const noexcept { return log_ / std::numbers::ln10; }
  double value() const noexcept { return std::exp(log_); }
  bool is_zero() const noexcept { return log_ == -std::numeric_limits<double>::infinity(); }

  LogReal pow(double exponent) const {
    if (is_zero()) return exponent == 0.0 ? one() : zero();
    return from_log(log_ * exponent);
  }

  friend LogReal operator*(LogReal a, LogReal b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return from_log(a.log_ + b.log_);
  }

  friend LogReal operator/(LogReal a, LogReal b) {
    if (b.is_zero()) throw std::domain_error("LogReal: division by zero");
    if (a.is_zero()) return zero();
    return from_log(a.log_ - b.log_);
  }

  friend bool operator==(LogReal a, LogReal b) noexcept { return a.log_ == b.log_; }
  friend std::partial_ordering operator<=>(LogReal a, LogReal b) noexcept {
    return a.log_ <=> b.log_;
  }

 private:
  double log_ = -std::numeric_limits<double>::infinity();
};

}  // namespace exrand
