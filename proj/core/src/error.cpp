#include "presym/error.hpp"

namespace presym {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ChartMismatch: return "chart-mismatch";
    case ErrorCode::PoleAtPoint: return "pole-at-point";
    case ErrorCode::ArityMismatch: return "arity-mismatch";
    case ErrorCode::InhomogeneousInput: return "inhomogeneous-input";
    case ErrorCode::WrongDegree: return "wrong-degree";
    case ErrorCode::DegreeCapExceeded: return "degree-cap-exceeded";
    case ErrorCode::DivisionByZero: return "division-by-zero";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::NotInIZ: return "not-in-I_Z";
    case ErrorCode::DegenerateRestriction: return "degenerate-restriction";
    case ErrorCode::NotAComplement: return "not-a-complement";
    case ErrorCode::NonHorizontalInput: return "non-horizontal-input";
    case ErrorCode::NotComplementary: return "not-complementary";
    case ErrorCode::NotTransverse: return "not-transverse";
    case ErrorCode::NotSkew: return "not-skew";
    case ErrorCode::NotLagrangian: return "not-lagrangian";
    case ErrorCode::GenericallySingular: return "generically-singular";
    case ErrorCode::CannotCertify: return "cannot-certify";
    case ErrorCode::NotClosed: return "not-closed";
    case ErrorCode::NotASubbundle: return "not-a-subbundle";
    case ErrorCode::NotHorizontal: return "not-horizontal";
    case ErrorCode::InvalidConfig: return "invalid-config";
    case ErrorCode::IoError: return "io-error";
    case ErrorCode::ParseError: return "parse-error";
    case ErrorCode::SchemaError: return "schema-error";
    case ErrorCode::InvalidKind: return "invalid-kind";
  }
  return "unknown";
}

}  // namespace presym
