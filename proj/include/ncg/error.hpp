#pragma once

#include <stdexcept>
#include <string>

namespace ncg {

enum class ErrorCode {
  NotSquare,
  NotHermitian,
  NotAntiHermitian,
  NotSkewSymmetric,
  OddDimension,
  NumericalFailure,
  UnsupportedSignature,
  WrongSignature,
  DimensionMismatch,
  NotInAlgebra,
  NotUnitary,
  NotLieAlgebraElement,
  NonHermitianOneForm,
  NotInSpan,
  StructureError,
  NotSkew,
  NegativeDeterminant,
  UnsupportedAlgebra,
  ParseError,
  InvalidConfig,
  WriteFailure,
};

constexpr const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotAntiHermitian: return "NotAntiHermitian";
    case ErrorCode::NotSkewSymmetric: return "NotSkewSymmetric";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::UnsupportedSignature: return "UnsupportedSignature";
    case ErrorCode::WrongSignature: return "WrongSignature";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotInAlgebra: return "NotInAlgebra";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotLieAlgebraElement: return "NotLieAlgebraElement";
    case ErrorCode::NonHermitianOneForm: return "NonHermitianOneForm";
    case ErrorCode::NotInSpan: return "NotInSpan";
    case ErrorCode::StructureError: return "StructureError";
    case ErrorCode::NotSkew: return "NotSkew";
    case ErrorCode::NegativeDeterminant: return "NegativeDeterminant";
    case ErrorCode::UnsupportedAlgebra: return "UnsupportedAlgebra";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::WriteFailure: return "WriteFailure";
  }
  return "UnknownError";
}

/// Exception carrying a machine-checkable error code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace ncg
