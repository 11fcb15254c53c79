#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tdlc {

// Invalid input (unknown label, bad generator, singular matrix, ...) is
// reported with std::invalid_argument. The two types below mark the
// "computation is well posed but cannot be carried out here" cases.

/// An enumeration would exceed its configured size cap.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite truncation is too shallow to certify the requested claim.
class DepthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hard cap on the number of objects an enumeration may produce.
struct Guard {
  std::size_t max_objects = 1'000'000;

  void check(std::size_t count, const std::string& what) const {
    if (count > max_objects) {
      throw InfeasibleError(what + ": " + std::to_string(count) +
                            " objects exceed guard of " +
                            std::to_string(max_objects));
    }
  }
};

}  // namespace tdlc
