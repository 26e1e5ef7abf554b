#pragma once

#include <stdexcept>
#include <string>

namespace eqsigma {

enum class ErrorCode {
  Inhomogeneous,
  ZeroPolynomial,
  MissingAssignment,
  NonUnitLeadingCoefficient,
  ConstantTermNotOne,
  BadNormalForm,
  NonInvertibleLeading,
  NotCoprime,
  BadOrder,
  TooLarge,
  InsufficientOrder,
  SingularSystem,
  AsymmetryNotHolomorphic,
  Unstable,
  NonIntegrableInput,
  ParseError,
  InvalidConfig,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::Inhomogeneous: return "Inhomogeneous";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::MissingAssignment: return "MissingAssignment";
    case ErrorCode::NonUnitLeadingCoefficient: return "NonUnitLeadingCoefficient";
    case ErrorCode::ConstantTermNotOne: return "ConstantTermNotOne";
    case ErrorCode::BadNormalForm: return "BadNormalForm";
    case ErrorCode::NonInvertibleLeading: return "NonInvertibleLeading";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::BadOrder: return "BadOrder";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InsufficientOrder: return "InsufficientOrder";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::AsymmetryNotHolomorphic: return "AsymmetryNotHolomorphic";
    case ErrorCode::Unstable: return "Unstable";
    case ErrorCode::NonIntegrableInput: return "NonIntegrableInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace eqsigma
