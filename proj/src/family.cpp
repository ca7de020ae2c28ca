#include "perdyn/family.hpp"

#include <algorithm>

namespace perdyn {

std::vector<Place> places_of(const FunctionField& k, int r) {
  if (r < 1) raise(Errc::InvalidArgument, "place degree must be >= 1");
  std::vector<Place> out;
  for (const auto& pi : irreducible_polys(k.base(), r)) out.push_back(finite_place(k, pi));
  return out;
}

std::vector<Place> places_of(const Rationals& k, const mpz_class& bound) {
  if (bound < 2) raise(Errc::InvalidArgument, "prime bound must be >= 2");
  if (bound > 100000000) raise(Errc::TooLarge, "prime bound above 10^8");
  const auto b = static_cast<std::size_t>(bound.get_ui());
  std::vector<bool> composite(b + 1, false);
  std::vector<Place> out;
  for (std::size_t i = 2; i <= b; ++i) {
    if (composite[i]) continue;
    out.push_back(finite_place(k, mpz_class(static_cast<unsigned long>(i))));
    for (std::size_t j = i * i; j <= b; j += i) composite[j] = true;
  }
  return out;
}

// ---------------------------------------------------------------------------

FieldElem reduce_poly(const FieldCtx& ctx, const Poly<FieldCtx>& a) {
  std::vector<std::uint32_t> c;
  c.reserve(a.size());
  for (const auto& e : a) c.push_back(e.coeffs[0]);
  return ctx.from_prime_poly(c);
}

Specialization specialize(const FamilyMap& fam, const Poly<FieldCtx>& pi_in) {
  const FunctionField& k = fam.field();
  const FieldCtx& base = k.base();
  if (base.r() != 1) raise(Errc::InvalidArgument, "specialization needs a prime constant field");
  const PolyRing<FieldCtx>& ring = k.ring();
  const Poly<FieldCtx> pi = ring.monic(ring.trimmed(pi_in));
  if (!is_irreducible(base, pi)) raise(Errc::InvalidArgument, "place polynomial is not irreducible");

  // clear denominators, then remove the content
  Poly<FieldCtx> lcm = ring.constant(base.one());
  auto each = [&](auto&& fn) {
    for (const auto& c : fam.num()) fn(c);
    for (const auto& c : fam.den()) fn(c);
  };
  each([&](const RatFunc& c) { lcm = ring.quo(ring.mul(lcm, c.den), ring.gcd(lcm, c.den)); });
  Poly<FieldCtx> content;
  each([&](const RatFunc& c) { content = ring.gcd(content, ring.mul(c.num, ring.quo(lcm, c.den))); });
  auto integral = [&](const RatFunc& c) { return ring.quo(ring.mul(c.num, ring.quo(lcm, c.den)), content); };

  Specialization out{field_with_modulus(base.p(), lower_prime_poly(base, pi)), std::nullopt, false};
  PolyRing<FieldCtx> target(out.ctx);
  Poly<FieldCtx> num, den;
  for (const auto& c : fam.num()) num.push_back(reduce_poly(out.ctx, integral(c)));
  for (const auto& c : fam.den()) den.push_back(reduce_poly(out.ctx, integral(c)));
  num = target.trimmed(std::move(num));
  den = target.trimmed(std::move(den));
  if (den.empty()) return out;
  out.map = RationalMap(out.ctx, std::move(num), std::move(den));
  out.good_reduction = out.map->degree() == fam.degree();
  return out;
}

P1Point<FieldElem> specialize_point(const FieldCtx& ctx, const FunctionField& k, const P1Point<RatFunc>& pt) {
  if (!pt) return std::nullopt;
  (void)k;
  const FieldElem a = reduce_poly(ctx, pt->num);
  const FieldElem b = reduce_poly(ctx, pt->den);
  if (ctx.is_zero(b)) return std::nullopt;
  return ctx.div(a, b);
}

// ---------------------------------------------------------------------------

std::vector<FieldElem> roots(const FieldCtx& k, const Poly<FieldCtx>& f) {
  PolyRing<FieldCtx> ring(k);
  if (ring.trimmed(f).empty()) raise(Errc::InvalidArgument, "every element is a root of 0");
  std::vector<FieldElem> out;
  for (FieldElem a : k.elements())
    if (k.is_zero(ring.eval(f, a))) out.push_back(a);
  return out;
}

namespace {

std::vector<mpz_class> positive_divisors(const mpz_class& n) {
  std::vector<mpz_class> out{1};
  for (const auto& [p, e] : factor_integer(n)) {
    const std::size_t base = out.size();
    mpz_class pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  return out;
}

std::vector<Poly<FieldCtx>> monic_divisors(const FieldCtx& base, const Poly<FieldCtx>& f) {
  PolyRing<FieldCtx> ring(base);
  std::vector<Poly<FieldCtx>> out{ring.constant(base.one())};
  for (const auto& [pi, e] : factor_poly(base, f)) {
    const std::size_t n = out.size();
    Poly<FieldCtx> pk = ring.constant(base.one());
    for (int i = 1; i <= e; ++i) {
      pk = ring.mul(pk, pi);
      for (std::size_t j = 0; j < n; ++j) out.push_back(ring.mul(out[j], pk));
    }
  }
  return out;
}

}  // namespace

std::vector<mpq_class> roots(const Rationals& k, const Poly<Rationals>& f_in) {
  PolyRing<Rationals> ring(k);
  Poly<Rationals> f = ring.trimmed(f_in);
  if (f.empty()) raise(Errc::InvalidArgument, "every element is a root of 0");
  std::vector<mpq_class> out;
  std::size_t low = 0;
  while (sgn(f[low]) == 0) ++low;
  if (low > 0) out.push_back(0);
  mpz_class l = 1;
  for (const auto& c : f) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  const mpz_class c0 = mpq_class(f[low] * l).get_num();
  const mpz_class cn = mpq_class(f.back() * l).get_num();
  for (const auto& a : positive_divisors(c0))
    for (const auto& b : positive_divisors(cn))
      for (int sign : {1, -1}) {
        mpq_class x(a * sign, b);
        x.canonicalize();
        if (sgn(ring.eval(f, x)) == 0) out.push_back(x);
      }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<RatFunc> roots(const FunctionField& k, const Poly<FunctionField>& f_in) {
  PolyRing<FunctionField> ring(k);
  const PolyRing<FieldCtx>& pr = k.ring();
  const FieldCtx& base = k.base();
  Poly<FunctionField> f = ring.trimmed(f_in);
  if (f.empty()) raise(Errc::InvalidArgument, "every element is a root of 0");
  std::vector<RatFunc> out;
  std::size_t low = 0;
  while (k.is_zero(f[low])) ++low;
  if (low > 0) out.push_back(k.zero());
  Poly<FieldCtx> l = pr.constant(base.one());
  for (const auto& c : f) l = pr.quo(pr.mul(l, c.den), pr.gcd(l, c.den));
  const Poly<FieldCtx> c0 = pr.mul(f[low].num, pr.quo(l, f[low].den));
  const Poly<FieldCtx> cn = pr.mul(f.back().num, pr.quo(l, f.back().den));
  std::vector<FieldElem> units;
  for (FieldElem u : base.elements())
    if (!base.is_zero(u)) units.push_back(u);
  for (const auto& a : monic_divisors(base, c0))
    for (const auto& b : monic_divisors(base, cn))
      for (const auto& u : units) {
        const RatFunc x = k.make(pr.scale(a, u), b);
        if (k.is_zero(ring.eval(f, x)) && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
      }
  return out;
}

}  // namespace perdyn
