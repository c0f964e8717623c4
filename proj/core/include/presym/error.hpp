#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace presym {

enum class ErrorCode {
  ChartMismatch,
  PoleAtPoint,
  ArityMismatch,
  InhomogeneousInput,
  WrongDegree,
  DegreeCapExceeded,
  DivisionByZero,
  DimensionMismatch,
  NotInIZ,
  DegenerateRestriction,
  NotAComplement,
  NonHorizontalInput,
  NotComplementary,
  NotTransverse,
  NotSkew,
  NotLagrangian,
  GenericallySingular,
  CannotCertify,
  NotClosed,
  NotASubbundle,
  NotHorizontal,
  InvalidConfig,
  IoError,
  ParseError,
  SchemaError,
  InvalidKind,
};

/// Stable kebab-case name used in reports and CLI output.
std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace presym
