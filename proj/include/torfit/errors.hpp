#pragma once

#include <stdexcept>
#include <string>

namespace torfit {

// Bad caller input: malformed data, out-of-range parameters, duplicate sites.
class input_error : public std::invalid_argument {
 public:
  explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// A computation started but could not finish reliably: failed factorization,
// truncation tolerance unreachable, iteration stagnated.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// A schedule whose feasibility margin is non-positive.
class infeasible_error : public std::runtime_error {
 public:
  explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace torfit
