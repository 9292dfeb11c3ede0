#pragma once

#include <stdexcept>
#include <string>

namespace tailored {

/// Raised for every rejected input: malformed files, out-of-range values,
/// violated preconditions. The message carries the location (row/column,
/// field name) where one is known.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tailored
