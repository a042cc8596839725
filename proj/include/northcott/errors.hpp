#pragma once

#include <stdexcept>
#include <string>

namespace northcott {

// One code per failure class the library reports. The CLI maps these to
// process exit codes: precondition violations -> 3, budget overruns -> 4.
enum class ErrorCode {
  InvalidInput,
  InvalidBase,
  InvalidTuple,
  InvalidDegree,
  DegenerateRadical,
  AmbiguousRoot,
  UnsupportedProduct,
  VariantMismatch,
  WeightIneligible,
  DichotomyUnavailable,
  DegreesBounded,
  UnsupportedD,
  UnsupportedSpectrum,
  UnsupportedDegree,
  N0Violation,
  Undecidable,
  BudgetExceeded,
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InvalidBase: return "InvalidBase";
    case ErrorCode::InvalidTuple: return "InvalidTuple";
    case ErrorCode::InvalidDegree: return "InvalidDegree";
    case ErrorCode::DegenerateRadical: return "DegenerateRadical";
    case ErrorCode::AmbiguousRoot: return "AmbiguousRoot";
    case ErrorCode::UnsupportedProduct: return "UnsupportedProduct";
    case ErrorCode::VariantMismatch: return "VariantMismatch";
    case ErrorCode::WeightIneligible: return "WeightIneligible";
    case ErrorCode::DichotomyUnavailable: return "DichotomyUnavailable";
    case ErrorCode::DegreesBounded: return "DegreesBounded";
    case ErrorCode::UnsupportedD: return "UnsupportedD";
    case ErrorCode::UnsupportedSpectrum: return "UnsupportedSpectrum";
    case ErrorCode::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorCode::N0Violation: return "N0Violation";
    case ErrorCode::Undecidable: return "Undecidable";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_name(code)) + ": " + msg), code_(code) {}

  ErrorCode code() const { return code_; }

  bool is_budget() const { return code_ == ErrorCode::BudgetExceeded; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace northcott
