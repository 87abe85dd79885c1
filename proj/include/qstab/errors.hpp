#pragma once

#include <stdexcept>
#include <string>

namespace qstab {

// Invalid configuration, file format, unknown key, or bad argument.
// Maps to CLI exit code 2.
class SpecError : public std::runtime_error {
 public:
  explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure at runtime (solver breakdown, violated contract).
// Maps to CLI exit code 1.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qstab
