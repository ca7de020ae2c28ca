#pragma once

// Coefficient fields other than GF(q): the rationals and F_q(s).

#include <gmpxx.h>

#include <string>

#include "perdyn/ffield.hpp"
#include "perdyn/poly.hpp"

namespace perdyn {

using ExactRational = mpq_class;

class Rationals {
 public:
  using Elem = mpq_class;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long long v) const { return mpq_class(mpz_class(static_cast<long>(v))); }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const {
    if (sgn(a) == 0) raise(Errc::DivisionByZero, "inverse of zero in Q");
    return 1 / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  std::string format(const Elem& a) const { return a.get_str(); }

  friend bool operator==(const Rationals&, const Rationals&) { return true; }
};

// Element of F_q(s): num/den with gcd 1 and den monic. Zero is {} / 1.
struct RatFunc {
  Poly<FieldCtx> num;
  Poly<FieldCtx> den;

  friend bool operator==(const RatFunc&, const RatFunc&) = default;
};

class FunctionField {
 public:
  using Elem = RatFunc;

  explicit FunctionField(FieldCtx base) : base_(std::move(base)), ring_(base_) {}

  const FieldCtx& base() const { return base_; }
  const PolyRing<FieldCtx>& ring() const { return ring_; }
  // Cardinality of the constant field.
  const mpz_class& q() const { return base_.q(); }

  Elem make(Poly<FieldCtx> num, Poly<FieldCtx> den) const;
  Elem from_poly(Poly<FieldCtx> p) const { return make(std::move(p), ring_.constant(base_.one())); }
  Elem from_const(const FieldElem& c) const { return from_poly(ring_.constant(c)); }
  Elem s() const { return from_poly(ring_.x()); }

  Elem zero() const { return from_poly({}); }
  Elem one() const { return from_const(base_.one()); }
  Elem from_int(long long v) const { return from_const(base_.from_int(v)); }
  bool is_zero(const Elem& a) const { return a.num.empty(); }
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
  Elem neg(const Elem& a) const { return {ring_.neg(a.num), a.den}; }
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  bool is_poly(const Elem& a) const { return a.den.size() == 1; }

  std::string format(const Elem& a) const;

  friend bool operator==(const FunctionField& a, const FunctionField& b) { return a.base_ == b.base_; }

 private:
  FieldCtx base_;
  PolyRing<FieldCtx> ring_;
};

}  // namespace perdyn
