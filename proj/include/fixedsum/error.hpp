#pragma once

#include <stdexcept>
#include <string>

namespace fixedsum {

// Bad input: dimension mismatches, malformed files, infeasible constraint sets.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical breakdown: degenerate pivots, geometry that lost its invariants.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// A sampler exhausted its iteration or restart budget.
class SamplingError : public std::runtime_error {
 public:
  explicit SamplingError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fixedsum
