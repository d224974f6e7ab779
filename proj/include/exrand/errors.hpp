#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace exrand {

// Raised when an exhaustive path would exceed its size limit. Carries the
// offending count so callers can report it.
class guard_error : public std::runtime_error {
 public:
  guard_error(const std::string& what, long double count)
      : std::runtime_error(what), count_(count) {}

  long double count() const noexcept { return count_; }

 private:
  long double count_;
};

// The requested computation route does not apply to this input (for
// example the grid oracle on an alphabet with more than three letters).
class unsupported_method : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace exrand
