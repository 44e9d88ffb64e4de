#pragma once
// Error codes shared by all modules. Every failure the engine can signal is a
// distinct value so callers (and the CLI exit-code mapping) can dispatch on it.

#include <stdexcept>
#include <string>

namespace bsfan {

enum class Err {
    DivisionByZero,
    PoleAtPoint,
    ArityMismatch,
    SignatureMismatch,
    ZeroElement,
    InadmissibleOrder,
    NotCommutative,
    ZeroPolynomial,
    BadCertificate,
    ZeroDirection,
    ZeroComponent,
    NoBFunction,
    NonRationalRoot,
    FanBudgetExceeded,
    PairBudgetExceeded,
    EmptyFan,
    HypothesisViolated,
    Syntax,
    UnknownVariable,
    Internal,
};

class Error : public std::runtime_error {
  public:
    Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Err code() const { return code_; }

  private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

const char* err_name(Err code);

} // namespace bsfan
