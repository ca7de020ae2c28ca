#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "perdyn/family.hpp"
#include "perdyn/parse.hpp"

using namespace perdyn;

namespace {

const Rationals QQ;

Poly<FieldCtx> sp(const FieldCtx& k, std::initializer_list<int> c) {
  Poly<FieldCtx> out;
  for (int v : c) out.push_back(k.from_int(v));
  return PolyRing<FieldCtx>(k).trimmed(out);
}

template <class E>
bool has_point(const CritSet<E>& c, const P1Point<E>& p) {
  for (const auto& x : c.points)
    if (x.point == p) return true;
  return false;
}

}  // namespace

TEST_CASE("places") {
  const FunctionField f3(prime_field(3));
  const auto deg2 = places_of(f3, 2);
  CHECK(deg2.size() == 3);
  for (const auto& v : deg2) CHECK(v.norm == 9);
  std::vector<long> primes;
  for (const auto& v : places_of(QQ, mpz_class(10))) primes.push_back(v.prime.get_si());
  CHECK(primes == std::vector<long>{2, 3, 5, 7});
  const FunctionField f2(prime_field(2));
  const auto deg1 = places_of(f2, 1);
  REQUIRE(deg1.size() == 2);
  CHECK(deg1[0].pi == sp(prime_field(2), {0, 1}));
  CHECK(deg1[1].pi == sp(prime_field(2), {1, 1}));
  CHECK(deg1[0].norm == 2);
}

TEST_CASE("specialization examples") {
  const FieldCtx f3 = prime_field(3);
  const FunctionField k(f3);
  const FamilyMap fam = parse_map("X^2+s", k);
  Specialization a = specialize(fam, sp(f3, {2, 1}));
  REQUIRE(a.map);
  CHECK(a.good_reduction);
  CHECK(format_map(*a.map) == "X^2+1");

  Specialization b = specialize(fam, sp(f3, {1, 0, 1}));
  REQUIRE(b.map);
  CHECK(b.ctx.size() == 9);
  CHECK(b.map->num() == Poly<FieldCtx>{b.ctx.generator(), b.ctx.zero(), b.ctx.one()});

  Specialization c = specialize(parse_map("s*X^2+1", k), sp(f3, {0, 1}));
  REQUIRE(c.map);
  CHECK(c.map->degree() == 0);
  CHECK_FALSE(c.good_reduction);

  CHECK_THROWS_AS(specialize(fam, sp(f3, {1, 0, 0, 1})), Error);  // (s+1)^3
}

TEST_CASE("specialization commutes with iteration") {
  const FieldCtx f3 = prime_field(3);
  const FunctionField k(f3);
  const FamilyMap fam = parse_map("X^2+s", k);
  for (int deg = 1; deg <= 3; ++deg)
    for (const auto& pi : irreducible_polys(f3, deg)) {
      const Specialization base = specialize(fam, pi);
      REQUIRE(base.map);
      for (int n = 1; n <= 3; ++n) {
        const Specialization it = specialize(fam.iterate(n), pi);
        REQUIRE(it.map);
        CHECK(base.map->iterate(n) == *it.map);
      }
    }
  // and for a rational family
  const FamilyMap rat = parse_map("(X^2+s)/(X+1)", k);
  for (const auto& pi : irreducible_polys(f3, 2)) {
    const Specialization base = specialize(rat, pi);
    REQUIRE(base.map);
    const Specialization it = specialize(rat.iterate(2), pi);
    REQUIRE(it.map);
    CHECK(base.map->iterate(2) == *it.map);
  }
}

TEST_CASE("critical points") {
  const FieldCtx f5 = prime_field(5);
  const auto c = critical_points(parse_map("X^2+1", f5));
  CHECK(c.points.size() == 2);
  CHECK(has_point(c, P1Point<FieldElem>(f5.zero())));
  CHECK(has_point(c, P1Point<FieldElem>()));
  CHECK(c.all_rational);
  CHECK(critical_points(parse_map("1/X", f5)).points.empty());
  CHECK(critical_points(parse_map("1/X", f5)).all_rational);

  const FunctionField k7(prime_field(7));
  const auto c7 = critical_points(parse_map("X^3+s", k7));
  CHECK(c7.points.size() == 2);
  CHECK(has_point(c7, P1Point<RatFunc>(k7.zero())));
  CHECK(has_point(c7, P1Point<RatFunc>()));
  CHECK_FALSE(c7.wild);
  for (const auto& p : c7.points) CHECK(p.local_degree == 3);

  CHECK_THROWS_AS(critical_points(parse_map("X^3", prime_field(3))), Error);

  for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 25u, 27u})
    for (int d : {2, 3}) {
      if (q % static_cast<std::uint64_t>(d) == 0 || (d == 2 && q % 2 == 0) || (d == 3 && q % 3 == 0)) continue;
      const FieldCtx k = field_of_order(q);
      for (const FieldElem& b : k.elements()) {
        Poly<FieldCtx> f(static_cast<std::size_t>(d) + 1, k.zero());
        f[0] = b;
        f.back() = k.one();
        const auto cs = critical_points(RationalMap(k, f, Poly<FieldCtx>{k.one()}));
        CHECK(cs.points.size() == 2);
        CHECK(has_point(cs, P1Point<FieldElem>(k.zero())));
        CHECK(has_point(cs, P1Point<FieldElem>()));
      }
    }

  // Riemann-Hurwitz count on random maps over Q with rational critical points
  const auto cq = critical_points(parse_map("X^2/(X^2+1)", QQ));
  int total = 0;
  for (const auto& p : cq.points) total += p.local_degree - 1;
  CHECK(total <= 2);
}

TEST_CASE("roots against exhaustive search") {
  const FieldCtx f7 = prime_field(7);
  const Poly<FieldCtx> p = sp(f7, {6, 0, 1});  // x^2 - 1
  CHECK(roots(f7, p) == std::vector<FieldElem>{f7.from_int(1), f7.from_int(6)});
  const Poly<Rationals> q{mpq_class(-2), mpq_class(1), mpq_class(3)};  // 3x^2 + x - 2
  CHECK(roots(QQ, q) == std::vector<mpq_class>{mpq_class(-1), mpq_class(2, 3)});
  const FunctionField k(prime_field(3));
  // X^2 - s^2 over F_3(s): roots s and 2s
  const FamilyMap m = parse_map("X^2+2s^2", k);
  const auto rs = roots(k, m.num());
  CHECK(rs.size() == 2);
  for (const auto& r : rs) CHECK(k.is_zero(PolyRing<FunctionField>(k).eval(m.num(), r)));
}

TEST_CASE("symbolic orbits") {
  const FunctionField k(prime_field(3));
  const auto orbit = orbit_symbolic(parse_map("X^2+s", k), P1Point<RatFunc>(k.zero()), 3);
  std::vector<std::string> names;
  for (const auto& p : orbit) names.push_back(format_point(k, p));
  CHECK(names == std::vector<std::string>{"0", "s", "s^2+s", "s^4+2s^3+s^2+s"});

  const auto oq = orbit_symbolic(parse_map("X^2-1", QQ), P1Point<mpq_class>(mpq_class(0)), 2);
  CHECK(oq == std::vector<P1Point<mpq_class>>{mpq_class(0), mpq_class(-1), mpq_class(0)});

  const auto inf = orbit_symbolic(parse_map("X^3+s", k), P1Point<RatFunc>(), 4);
  for (const auto& p : inf) CHECK_FALSE(p.has_value());

  CHECK_THROWS_AS(orbit_symbolic(parse_map("X^2+s", k), P1Point<RatFunc>(k.zero()), 12, 100), Error);
}

TEST_CASE("orbit disjointness") {
  const FunctionField k(prime_field(3));
  const FamilyMap fam = parse_map("X^2+s", k);
  const std::vector<P1Point<RatFunc>> zero{P1Point<RatFunc>(k.zero())};
  CHECK_FALSE(phi_disjoint(fam, zero, 10).has_value());

  const auto w = phi_disjoint(parse_map("X^2-1", QQ), {P1Point<mpq_class>(mpq_class(0))}, 2);
  REQUIRE(w.has_value());
  CHECK(w->gamma1 == 0);
  CHECK(w->m1 == 0);
  CHECK(w->gamma2 == 0);
  CHECK(w->m2 == 2);

  CHECK_FALSE(phi_disjoint(fam, {}, 5).has_value());

  // monotone in n over finite fields
  std::mt19937_64 rng(3);
  const FieldCtx f = field_of_order(49);
  std::uniform_int_distribution<std::uint64_t> pick(0, 48);
  for (int i = 0; i < 60; ++i) {
    const RationalMap m(f, Poly<FieldCtx>{f.element(pick(rng)), f.zero(), f.one()}, Poly<FieldCtx>{f.one()});
    const std::vector<P1Point<FieldElem>> crit{f.zero()};
    for (int n = 1; n <= 12; ++n)
      if (phi_disjoint(m, crit, n)) CHECK(phi_disjoint(m, crit, n + 1).has_value());
  }
}

TEST_CASE("orbit points stay distinct at large places") {
  // for N(pi) >= c^{2 d^n} with c = 3, d = 2
  const FieldCtx f3 = prime_field(3);
  const FunctionField k(f3);
  const FamilyMap fam = parse_map("X^2+s", k);
  const auto orbit = orbit_symbolic(fam, P1Point<RatFunc>(k.zero()), 2);
  int tested = 0;
  for (int n = 0; n <= 2; ++n) {
    mpz_class need;
    mpz_ui_pow_ui(need.get_mpz_t(), 3, static_cast<unsigned long>(2 * (1 << n)));
    for (int deg = 1; deg <= 5; ++deg)
      for (const auto& v : places_of(k, deg)) {
        if (v.norm < need) continue;
        const Specialization sp_ = specialize(fam, v.pi);
        std::vector<P1Point<FieldElem>> pts;
        for (int m = 0; m <= n; ++m) pts.push_back(specialize_point(sp_.ctx, k, orbit[static_cast<std::size_t>(m)]));
        for (std::size_t i = 0; i < pts.size(); ++i)
          for (std::size_t j = i + 1; j < pts.size(); ++j) CHECK(pts[i] != pts[j]);
        // specialized orbit equals the orbit of the specialized map
        P1Point<FieldElem> x = sp_.ctx.zero();
        for (int m = 0; m <= n; ++m) {
          CHECK(x == pts[static_cast<std::size_t>(m)]);
          x = (*sp_.map)(x);
        }
        ++tested;
      }
  }
  CHECK(tested > 0);
}
