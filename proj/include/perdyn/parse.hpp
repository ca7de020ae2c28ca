#pragma once

// Text input: map expressions in X with coefficients in Z[s], field elements,
// point lists and global-field names.
//
//   expr   := poly ("/" poly)?
//   poly   := ("+"|"-")? term (("+"|"-") term)*
//   term   := factor ("*"? factor)*
//   factor := int | "s" ("^" int)? | "X" ("^" int)? | "(" poly ")"
//
// Whitespace is ignored. Errors carry the offending position and what was
// expected there.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "perdyn/fields.hpp"
#include "perdyn/padyn.hpp"

namespace perdyn {

using ZPoly = std::vector<mpz_class>;  // integer coefficients in s
using BiPoly = std::vector<ZPoly>;     // coefficients (in Z[s]) of X^0, X^1, ...

struct ParsedRatio {
  BiPoly num;
  BiPoly den;
  bool uses_s = false;
};

// Outer variable 'X' by default; pass 's' to read a plain element of Q(s).
ParsedRatio parse_ratio(const std::string& text, char outer = 'X');

RationalMap to_map(const ParsedRatio& e, const FieldCtx& ctx);
RationalMapQ to_map(const ParsedRatio& e, const Rationals& k);
FamilyMap to_map(const ParsedRatio& e, const FunctionField& k);

FieldElem coeff_in(const ZPoly& c, const FieldCtx& ctx);
RatFunc coeff_in(const ZPoly& c, const FunctionField& k);

template <class K>
RationalMapT<K> parse_map(const std::string& text, const K& k) {
  return to_map(parse_ratio(text), k);
}

mpq_class parse_rational(const std::string& text);
RatFunc parse_ratfunc(const std::string& text, const FunctionField& k);
FieldElem parse_field_elem(const std::string& text, const FieldCtx& ctx);

// Comma-separated points; "inf" is the point at infinity.
std::vector<P1Point<mpq_class>> parse_points(const std::string& text, const Rationals& k);
std::vector<P1Point<RatFunc>> parse_points(const std::string& text, const FunctionField& k);
std::vector<P1Point<FieldElem>> parse_points(const std::string& text, const FieldCtx& ctx);

// "Q" or "F<q>(s)".
struct GlobalFieldSpec {
  bool rationals = true;
  std::uint64_t q = 0;
};
GlobalFieldSpec parse_global_field(const std::string& text);

}  // namespace perdyn
