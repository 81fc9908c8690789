#ifndef RSNORM_ERRORS_HPP
#define RSNORM_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace rsnorm {

/// Stable error codes surfaced by the CLI as process exit status.
enum class ErrorCode : int {
  Syntax = 10,
  UnknownVariable = 11,
  NegativeExponent = 12,
  DegenerateInput = 20,
  Precondition = 21,
  DivisionByZero = 22,
  ConstantCurve = 30,
  NonSquarefree = 31,
  ZeroDivisor = 32,
  MissingAssignment = 40,
  ExtraAssignment = 41,
  DuplicateAssignment = 42,
  NonRealValue = 43,
  NonIntegral = 50,
  NonFinite = 51,
  NotOnCurve = 52,
  NotBirational = 53,
  BadJob = 60,
  Internal = 99,
};

inline std::string_view error_code_name(ErrorCode c) {
  switch (c) {
  case ErrorCode::Syntax: return "syntax";
  case ErrorCode::UnknownVariable: return "unknown-variable";
  case ErrorCode::NegativeExponent: return "negative-exponent";
  case ErrorCode::DegenerateInput: return "degenerate-input";
  case ErrorCode::Precondition: return "precondition";
  case ErrorCode::DivisionByZero: return "division-by-zero";
  case ErrorCode::ConstantCurve: return "constant-curve";
  case ErrorCode::NonSquarefree: return "non-squarefree";
  case ErrorCode::ZeroDivisor: return "zero-divisor";
  case ErrorCode::MissingAssignment: return "missing-assignment";
  case ErrorCode::ExtraAssignment: return "extra-assignment";
  case ErrorCode::DuplicateAssignment: return "duplicate-assignment";
  case ErrorCode::NonRealValue: return "non-real-value";
  case ErrorCode::NonIntegral: return "non-integral";
  case ErrorCode::NonFinite: return "non-finite";
  case ErrorCode::NotOnCurve: return "not-on-curve";
  case ErrorCode::NotBirational: return "not-birational";
  case ErrorCode::BadJob: return "bad-job";
  case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace rsnorm

#endif // RSNORM_ERRORS_HPP
