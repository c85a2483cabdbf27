#pragma once

#include <stdexcept>
#include <string>

namespace polydisk {

/// Malformed input: wrong dimensions, points outside the polydisk, bad parameters.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A theorem's hypothesis does not hold for the given map, so no report is produced.
class HypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Non-finite value met inside a quadrature sum.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polydisk
