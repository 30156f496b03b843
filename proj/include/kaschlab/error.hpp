#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kaschlab {

enum class ErrorCode {
  DimensionMismatch,
  ZeroPolynomial,
  InvalidField,
  InvalidAlgebra,
  InvalidAction,
  NotAnIdeal,
  NonUnitalResult,
  UnsupportedCharacteristic,
  RadicalVerificationFailed,
  SplittingFailed,
  SideMismatch,
  AlgebraMismatch,
  InvalidModule,
  NotSemisimple,
  IncompleteDecomposition,
  NotASubmodule,
  ExtensionSystemInconsistent,
  UnsupportedField,
  RouteDisagreement,
  InvariantViolation,
  NotSelfInjective,
  NotCommutative,
  ParseError,
  DuplicateBasisLabel,
  UnknownSymbol,
  RelationInvariant,
  IdealClosureOverflow,
  UnknownBuilder,
  UnknownZooName,
  Io,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::InvalidAlgebra: return "InvalidAlgebra";
    case ErrorCode::InvalidAction: return "InvalidAction";
    case ErrorCode::NotAnIdeal: return "NotAnIdeal";
    case ErrorCode::NonUnitalResult: return "NonUnitalResult";
    case ErrorCode::UnsupportedCharacteristic: return "UnsupportedCharacteristic";
    case ErrorCode::RadicalVerificationFailed: return "RadicalVerificationFailed";
    case ErrorCode::SplittingFailed: return "SplittingFailed";
    case ErrorCode::SideMismatch: return "SideMismatch";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::InvalidModule: return "InvalidModule";
    case ErrorCode::NotSemisimple: return "NotSemisimple";
    case ErrorCode::IncompleteDecomposition: return "IncompleteDecomposition";
    case ErrorCode::NotASubmodule: return "NotASubmodule";
    case ErrorCode::ExtensionSystemInconsistent: return "ExtensionSystemInconsistent";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::RouteDisagreement: return "RouteDisagreement";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::NotSelfInjective: return "NotSelfInjective";
    case ErrorCode::NotCommutative: return "NotCommutative";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateBasisLabel: return "DuplicateBasisLabel";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::RelationInvariant: return "RelationInvariant";
    case ErrorCode::IdealClosureOverflow: return "IdealClosureOverflow";
    case ErrorCode::UnknownBuilder: return "UnknownBuilder";
    case ErrorCode::UnknownZooName: return "UnknownZooName";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

/// Base exception for every failure raised by the library. The code is
/// stable and is what the CLI maps onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace kaschlab
