#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace perdyn {

enum class Errc {
  NotPrime,
  DivisionByZero,
  BadBase,
  ZeroDenominator,
  Indeterminate,
  SingularMobius,
  UnsupportedDegree,
  ExactOverflow,
  TooLarge,
  OutOfHypothesis,
  ZeroPoint,
  ZeroDenominatorPoly,
  EmptyCritSet,
  OutOfDomain,
  NonpositiveLogArgument,
  ZeroElement,
  InseparableMap,
  DegreeOverflow,
  FieldMismatch,
  ParseError,
  InvalidArgument,
};

std::string_view errc_name(Errc code);

// Every failure raised by the library carries one of the codes above so callers
// (and tests) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& what);

}  // namespace perdyn
