#pragma once

#include <stdexcept>
#include <string>

namespace fastlight {

// Bad inputs: malformed files, invalid config values, violated preconditions.
// The CLI maps these to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Failures of the numerics themselves: window wraparound, diverging fits,
// poles.  The CLI maps these to exit code 2.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fastlight
