#include "perdyn/error.hpp"

namespace perdyn {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::BadBase: return "BadBase";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::Indeterminate: return "Indeterminate";
    case Errc::SingularMobius: return "SingularMobius";
    case Errc::UnsupportedDegree: return "UnsupportedDegree";
    case Errc::ExactOverflow: return "ExactOverflow";
    case Errc::TooLarge: return "TooLarge";
    case Errc::OutOfHypothesis: return "OutOfHypothesis";
    case Errc::ZeroPoint: return "ZeroPoint";
    case Errc::ZeroDenominatorPoly: return "ZeroDenominatorPoly";
    case Errc::EmptyCritSet: return "EmptyCritSet";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::NonpositiveLogArgument: return "NonpositiveLogArgument";
    case Errc::ZeroElement: return "ZeroElement";
    case Errc::InseparableMap: return "InseparableMap";
    case Errc::DegreeOverflow: return "DegreeOverflow";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace perdyn
