#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gfun {

/// Point outside the region where an operation is defined (|z| >= 1, u = -xi, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Parameter outside its admissible range (c <= -1, gamma == 1, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Coefficient data rejected at construction.
class CoefficientError : public std::invalid_argument {
 public:
  CoefficientError(const std::string& what, std::size_t index)
      : std::invalid_argument(what + " (coefficient " + std::to_string(index) + ")"),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Series division with a vanishing leading denominator coefficient.
class DivisionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Every sample point of a grid was skipped.
class DegenerateEvaluation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The witness g of a K-class check is not a verified member of its B class.
class WitnessNotInClass : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown class or zoo name.
class DispatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace gfun
