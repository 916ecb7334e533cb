#pragma once

#include <stdexcept>
#include <string>

namespace mdn {

enum class ErrorCode {
  DivisionByZero,
  NegativeOperand,
  IndexOutOfRange,
  OrderMismatch,
  PrecisionMismatch,
  LastCoefficientZero,
  DimensionMismatch,
  DuplicateVariable,
  EmptyMonomial,
  SingularDiagonal,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised by back substitution; carries the offending row.
class SingularDiagonalError : public Error {
 public:
  explicit SingularDiagonalError(std::size_t index)
      : Error(ErrorCode::SingularDiagonal, "zero diagonal at row " + std::to_string(index)),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NegativeOperand: return "NegativeOperand";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::PrecisionMismatch: return "PrecisionMismatch";
    case ErrorCode::LastCoefficientZero: return "LastCoefficientZero";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DuplicateVariable: return "DuplicateVariable";
    case ErrorCode::EmptyMonomial: return "EmptyMonomial";
    case ErrorCode::SingularDiagonal: return "SingularDiagonal";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace mdn
