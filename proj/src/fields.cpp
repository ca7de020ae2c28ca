#include "perdyn/fields.hpp"

namespace perdyn {

RatFunc FunctionField::make(Poly<FieldCtx> num, Poly<FieldCtx> den) const {
  num = ring_.trimmed(std::move(num));
  den = ring_.trimmed(std::move(den));
  if (den.empty()) raise(Errc::ZeroDenominator, "zero denominator in F_q(s)");
  if (num.empty()) return {{}, ring_.constant(base_.one())};
  const Poly<FieldCtx> g = ring_.gcd(num, den);
  if (g.size() > 1) {
    num = ring_.quo(num, g);
    den = ring_.quo(den, g);
  }
  const FieldElem lc_inv = base_.inv(den.back());
  return {ring_.scale(num, lc_inv), ring_.scale(den, lc_inv)};
}

RatFunc FunctionField::add(const RatFunc& a, const RatFunc& b) const {
  if (a.den == b.den) return make(ring_.add(a.num, b.num), a.den);
  return make(ring_.add(ring_.mul(a.num, b.den), ring_.mul(b.num, a.den)), ring_.mul(a.den, b.den));
}

RatFunc FunctionField::mul(const RatFunc& a, const RatFunc& b) const {
  if (a.num.empty() || b.num.empty()) return zero();
  if (is_poly(a) && is_poly(b)) return {ring_.mul(a.num, b.num), a.den};
  return make(ring_.mul(a.num, b.num), ring_.mul(a.den, b.den));
}

RatFunc FunctionField::inv(const RatFunc& a) const {
  if (a.num.empty()) raise(Errc::DivisionByZero, "inverse of zero in F_q(s)");
  return make(a.den, a.num);
}

std::string FunctionField::format(const RatFunc& a) const {
  const std::string n = format_poly(base_, a.num, 's');
  if (is_poly(a)) return n;
  const std::string d = format_poly(base_, a.den, 's');
  auto wrap = [](const std::string& t) {
    return t.find('+') != std::string::npos ? "(" + t + ")" : t;
  };
  return wrap(n) + "/" + wrap(d);
}

}  // namespace perdyn
