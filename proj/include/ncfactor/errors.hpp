#pragma once

#include <stdexcept>
#include <string>

namespace ncfactor {

enum class Errc {
  InvalidArgument,
  DivisionByZero,
  MissingRange,
  FieldMismatch,
  VarCountMismatch,
  DimensionMismatch,
  ZeroPolynomial,
  TermBudgetExceeded,
  FieldTooSmall,
  NotMultilinear,
  NotHomogeneous,
  BadSplit,
  BadDegrees,
  DegreeExceeded,
  NotFound,
  PitFailure,
  BudgetExceeded,
  SearchBudgetExceeded,
  SyntaxError,
  UnknownVariable,
};

const char* errc_name(Errc c);

// All library failures throw this; code() lets tests and the CLI dispatch
// without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, Errc code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace ncfactor
