#pragma once

#include <stdexcept>
#include <string>

namespace qaut {

// Structured error codes; the CLI maps ParseError/UsageError and precondition
// violations to exit 2, verification-negative outcomes to exit 1.
enum class Errc {
  ZeroInput,
  DivisionByZero,
  ParseError,
  IndexOutOfRange,
  ShapeMismatch,
  DimensionMismatch,
  SingularMatrix,
  SingularP,
  SingularBlock,
  HypothesisViolation,
  NotNormalizable,
  DimensionTooSmall,
  NotInvolutivePair,
  MixedRegime,
  IndexOutOfRegime,
  NotDeterminedError,
  TauIsOne,
  TauDegenerate,
  DegenerateForm,
  NotConfluent,
  BudgetExceeded,
  CoefficientExplosion,
  ContextMismatch,
  UsageError,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ZeroInput: return "ZeroInput";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ParseError: return "ParseError";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::SingularP: return "SingularP";
    case Errc::SingularBlock: return "SingularBlock";
    case Errc::HypothesisViolation: return "HypothesisViolation";
    case Errc::NotNormalizable: return "NotNormalizable";
    case Errc::DimensionTooSmall: return "DimensionTooSmall";
    case Errc::NotInvolutivePair: return "NotInvolutivePair";
    case Errc::MixedRegime: return "MixedRegime";
    case Errc::IndexOutOfRegime: return "IndexOutOfRegime";
    case Errc::NotDeterminedError: return "NotDetermined";
    case Errc::TauIsOne: return "TauIsOne";
    case Errc::TauDegenerate: return "TauDegenerate";
    case Errc::DegenerateForm: return "DegenerateForm";
    case Errc::NotConfluent: return "NotConfluent";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::CoefficientExplosion: return "CoefficientExplosion";
    case Errc::ContextMismatch: return "ContextMismatch";
    case Errc::UsageError: return "UsageError";
  }
  return "Unknown";
}

}  // namespace qaut
