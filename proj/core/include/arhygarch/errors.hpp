#pragma once

#include <stdexcept>
#include <string>

namespace arhyg {

/// Bad user input: malformed config, unknown key, value outside its legal interval.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad data: malformed CSV, non-finite observation, nonpositive realized measure.
class data_error : public std::runtime_error {
 public:
  explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure: explosive recursion, divergent inversion, precondition breach.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace arhyg
