#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gridhfl {

enum class ErrorKind {
  // Input validation.
  SyntaxError,
  NotAPermutation,
  BadIndex,
  IndexOutOfRange,
  SizeLimit,
  ParityViolation,
  ProductNotOne,
  GridMismatch,
  // Internal contract violations.
  StructureViolation,
  Infeasible,
  ProjectionViolation,
  DSquaredNonzero,
};

std::string_view to_string(ErrorKind kind);

/// True for kinds that indicate a bug rather than bad input.
constexpr bool is_internal(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::StructureViolation:
    case ErrorKind::Infeasible:
    case ErrorKind::ProjectionViolation:
    case ErrorKind::DSquaredNonzero:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gridhfl
