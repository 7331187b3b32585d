#pragma once

#include <stdexcept>
#include <string>

namespace loopwalk {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroConstantTerm : public Error {
 public:
  ZeroConstantTerm() : Error("series has zero constant term") {}
};

class NonzeroLowCoefficient : public Error {
 public:
  explicit NonzeroLowCoefficient(std::size_t index)
      : Error("coefficient " + std::to_string(index) + " is nonzero") {}
};

class IndexOutOfOrder : public Error {
 public:
  IndexOutOfOrder(std::size_t index, std::size_t order)
      : Error("index " + std::to_string(index) + " exceeds truncation order " +
              std::to_string(order)) {}
};

class OrderMismatch : public Error {
 public:
  using Error::Error;
};

class DegenerateSites : public Error {
 public:
  using Error::Error;
};

class InvalidSites : public Error {
 public:
  using Error::Error;
};

class ContractionViolated : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace loopwalk
