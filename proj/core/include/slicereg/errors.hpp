#pragma once

#include <stdexcept>
#include <string>

namespace slicereg {

// Malformed files, dimension mismatches, invalid values. CLI exit code 3.
class DataError : public std::runtime_error {
public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite cost or parameters during optimization. CLI exit code 4.
class DivergenceError : public std::runtime_error {
public:
  DivergenceError(const std::string& what, long iteration)
      : std::runtime_error(what), iteration(iteration) {}
  long iteration;
};

// Fewer than 4 points or all coplanar; callers fall back or skip.
class DegenerateHullError : public std::runtime_error {
public:
  explicit DegenerateHullError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace slicereg
