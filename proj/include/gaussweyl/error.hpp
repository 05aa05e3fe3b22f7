#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gaussweyl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter outside the domain of the operation (h <= 0, nu <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Quadrature order, tensor size or matrix size above the configured cap.
class BudgetError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// A numerical identity the library guarantees did not hold.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t column)
      : Error(what + " (column " + std::to_string(column) + ")"), column_(column) {}

  // 1-based column of the offending character.
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

}  // namespace gaussweyl
