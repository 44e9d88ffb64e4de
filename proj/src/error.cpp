#include "bsfan/error.hpp"

namespace bsfan {

const char* err_name(Err code) {
    switch (code) {
    case Err::DivisionByZero: return "DivisionByZero";
    case Err::PoleAtPoint: return "PoleAtPoint";
    case Err::ArityMismatch: return "ArityMismatch";
    case Err::SignatureMismatch: return "SignatureMismatch";
    case Err::ZeroElement: return "ZeroElement";
    case Err::InadmissibleOrder: return "InadmissibleOrder";
    case Err::NotCommutative: return "NotCommutative";
    case Err::ZeroPolynomial: return "ZeroPolynomial";
    case Err::BadCertificate: return "BadCertificate";
    case Err::ZeroDirection: return "ZeroDirection";
    case Err::ZeroComponent: return "ZeroComponent";
    case Err::NoBFunction: return "NoBFunction";
    case Err::NonRationalRoot: return "NonRationalRoot";
    case Err::FanBudgetExceeded: return "FanBudgetExceeded";
    case Err::PairBudgetExceeded: return "PairBudgetExceeded";
    case Err::EmptyFan: return "EmptyFan";
    case Err::HypothesisViolated: return "HypothesisViolated";
    case Err::Syntax: return "Syntax";
    case Err::UnknownVariable: return "UnknownVariable";
    case Err::Internal: return "Internal";
    }
    return "Unknown";
}

} // namespace bsfan
