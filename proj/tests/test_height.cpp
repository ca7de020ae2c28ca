#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "perdyn/family.hpp"
#include "perdyn/height.hpp"
#include "perdyn/parse.hpp"

using namespace perdyn;

namespace {

const Rationals QQ;

FunctionField F3() { return FunctionField(prime_field(3)); }

Poly<FieldCtx> sp(const FieldCtx& k, std::initializer_list<int> c) {
  Poly<FieldCtx> out;
  for (int v : c) out.push_back(k.from_int(v));
  return PolyRing<FieldCtx>(k).trimmed(out);
}

mpq_class random_rational(std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> num(-bound, bound), den(1, bound);
  long a = 0;
  while (a == 0) a = num(rng);
  mpq_class x(a, den(rng));
  x.canonicalize();
  return x;
}

RatFunc random_ratfunc(const FunctionField& k, std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> coef(0, 2), deg(0, max_deg);
  while (true) {
    Poly<FieldCtx> a, b;
    for (int i = 0, n = deg(rng); i <= n; ++i) a.push_back(k.base().from_int(coef(rng)));
    for (int i = 0, n = deg(rng); i <= n; ++i) b.push_back(k.base().from_int(coef(rng)));
    a = k.ring().trimmed(a);
    b = k.ring().trimmed(b);
    if (a.empty() || b.empty()) continue;
    return k.make(a, b);
  }
}

// prod over places written out by hand: the archimedean value times p^{-v_p}
// from a separate trial-division factorization.
mpq_class product_over_places_q(const mpq_class& x) {
  std::vector<mpz_class> primes;
  for (mpz_class n : {mpz_class(abs(x.get_num())), mpz_class(x.get_den())}) {
    for (mpz_class p = 2; p * p <= n; ++p) {
      if (n % p != 0) continue;
      primes.push_back(p);
      while (n % p == 0) n /= p;
    }
    if (n > 1) primes.push_back(n);
  }
  mpq_class prod = abs(x);
  for (const auto& p : primes) prod *= local_norm(QQ, finite_place(QQ, p), x);
  return prod;
}

}  // namespace

TEST_CASE("local norms") {
  CHECK(local_norm(QQ, finite_place(QQ, 2), mpq_class(6)) == mpq_class(1, 2));
  CHECK(local_norm(QQ, infinite_place(QQ), mpq_class(-7, 3)) == mpq_class(7, 3));
  const FunctionField k = F3();
  const RatFunc s = k.s();
  CHECK(local_norm(k, finite_place(k, sp(k.base(), {0, 1})), s) == mpq_class(1, 3));
  CHECK(local_norm(k, infinite_place(k), s) == 3);
  CHECK(local_norm(k, infinite_place(k), k.inv(k.mul(s, s))) == mpq_class(1, 9));
  CHECK(valuation(QQ, finite_place(QQ, 3), mpq_class(2, 27)) == -3);
  CHECK(local_norm(QQ, finite_place(QQ, 5), mpq_class(0)) == 0);
}

TEST_CASE("element and point heights") {
  CHECK(height_elem(QQ, mpq_class(3, 2)) == 3);
  CHECK(height_literal(QQ, mpq_class(3, 2)) == 3);
  const FunctionField k = F3();
  CHECK(height_elem(k, k.s()) == 3);
  CHECK(height_elem(QQ, mpq_class(1)) == 1);
  CHECK(height_elem(k, k.one()) == 1);
  CHECK(height_point(QQ, P1Point<mpq_class>()) == 1);
  CHECK(height_point(QQ, mpq_class(3), mpq_class(2)) == 3);
  CHECK(height_point(k, k.s(), k.one()) == 3);
  CHECK_THROWS_AS(height_point(QQ, mpq_class(0), mpq_class(0)), Error);
}

TEST_CASE("pair heights and the constants b, c") {
  const FunctionField k = F3();
  const FamilyMap fam = parse_map("X^2+s", k);
  CHECK(pair_height(k, fam.num(), fam.den()) == 3);
  CHECK(b_const(k, fam.num(), fam.den()) == 3);
  CHECK(c_const(k, fam.num(), fam.den(), {P1Point<RatFunc>(k.zero())}) == 3);
  CHECK(c_const(k, fam.num(), fam.den(), {P1Point<RatFunc>(k.s())}) == 9);
  CHECK_THROWS_AS(c_const(k, fam.num(), fam.den(), {}), Error);

  const RationalMapQ q1 = parse_map("X^2+1", QQ);
  CHECK(pair_height(QQ, q1.num(), q1.den()) == 1);
  const Poly<Rationals> f{mpq_class(3), mpq_class(2)}, g{mpq_class(5)};
  CHECK(pair_height(QQ, f, g) == 5);
  const RationalMapQ sq = parse_map("X^2", QQ);
  CHECK(b_const(QQ, sq.num(), sq.den()) == 3);
  CHECK(c_const(QQ, sq.num(), sq.den(), {P1Point<mpq_class>(mpq_class(0)), P1Point<mpq_class>()}) == 3);

  // X^d + s^m over F_q(s): b = c = q^m
  for (std::uint64_t q : {3u, 5u, 7u})
    for (int d = 2; d <= 4; ++d)
      for (int m = 1; m <= 3; ++m) {
        const FunctionField kk(prime_field(q));
        const FamilyMap mp =
            parse_map("X^" + std::to_string(d) + "+s^" + std::to_string(m), kk);
        mpq_class qm = 1;
        for (int i = 0; i < m; ++i) qm *= static_cast<unsigned long>(q);
        CHECK(b_const(kk, mp.num(), mp.den()) == qm);
        CHECK(c_const(kk, mp.num(), mp.den(), {P1Point<RatFunc>(kk.zero())}) == qm);
      }
}

TEST_CASE("iterate-depth constant") {
  const FunctionField k = F3();
  const FamilyMap fam = parse_map("X^2+s", k);
  const std::vector<P1Point<RatFunc>> crit{P1Point<RatFunc>(k.zero())};
  mpz_class n11, n41;
  mpz_ui_pow_ui(n11.get_mpz_t(), 3, 11);
  mpz_ui_pow_ui(n41.get_mpz_t(), 3, 41);
  double raw = 0;
  CHECK(n_eps(k, fam.num(), fam.den(), crit, 1.0, n11, &raw) == 1);
  CHECK(raw == doctest::Approx(1.06).epsilon(0.01));
  CHECK(n_eps(k, fam.num(), fam.den(), crit, 1.0, n41, &raw) == 2);
  CHECK(raw == doctest::Approx(2.01).epsilon(0.01));
  const RationalMapQ sq = parse_map("X^2", QQ);
  CHECK_THROWS_AS(n_eps(QQ, sq.num(), sq.den(), {P1Point<mpq_class>(mpq_class(0))}, 1.0, mpz_class(2)), Error);
  try {
    n_eps(QQ, sq.num(), sq.den(), {P1Point<mpq_class>(mpq_class(0))}, 1.0, mpz_class(2));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::OutOfDomain);
  }
}

TEST_CASE("product formula") {
  CHECK(product_formula_check(QQ, mpq_class(6)));
  CHECK(product_formula_check(QQ, mpq_class(-5, 9)));
  const FunctionField k = F3();
  CHECK(product_formula_check(k, k.from_poly(sp(k.base(), {1, 0, 1}))));
  CHECK_THROWS_AS(product_formula_check(QQ, mpq_class(0)), Error);

  std::mt19937_64 rng(1234);
  for (int i = 0; i < 1000; ++i) {
    const mpq_class x = random_rational(rng, 1000000);
    CHECK(product_formula_check(QQ, x));
    CHECK(product_over_places_q(x) == 1);
    CHECK(height_literal(QQ, x) == height_elem(QQ, x));
    const RatFunc y = random_ratfunc(k, rng, 7);
    CHECK(product_formula_check(k, y));
    CHECK(height_literal(k, y) == height_elem(k, y));
  }
}

TEST_CASE("height of a sum") {
  std::mt19937_64 rng(4242);
  const FunctionField k = F3();
  for (int i = 0; i < 1000; ++i) {
    const mpq_class a = random_rational(rng, 100000), b = random_rational(rng, 100000);
    CHECK(height_elem(QQ, a + b) <= 2 * height_elem(QQ, a) * height_elem(QQ, b));
    const RatFunc x = random_ratfunc(k, rng, 6), y = random_ratfunc(k, rng, 6);
    CHECK(height_elem(k, k.add(x, y)) <= height_elem(k, x) * height_elem(k, y));
  }
}

TEST_CASE("height growth under one map application") {
  std::mt19937_64 rng(77);
  const FunctionField k = F3();
  std::uniform_int_distribution<int> deg(1, 3);
  for (int i = 0; i < 200; ++i) {
    const int d = deg(rng);
    // over Q, coefficients of height <= 100
    Poly<Rationals> f, g;
    for (int j = 0; j <= d; ++j) f.push_back(random_rational(rng, 100));
    for (int j = 0, e = deg(rng) - 1; j <= e; ++j) g.push_back(random_rational(rng, 100));
    const RationalMapQ mq(QQ, f, g);
    if (mq.degree() < 1) continue;
    const mpq_class gamma = random_rational(rng, 100);
    P1Point<mpq_class> img;
    try {
      img = mq(gamma);
    } catch (const Error&) {
      continue;
    }
    mpq_class bound = b_const(QQ, mq.num(), mq.den());
    for (int j = 0; j < mq.degree(); ++j) bound *= height_elem(QQ, gamma);
    CHECK(height_point(QQ, img) <= bound);

    Poly<FunctionField> ff, gg;
    for (int j = 0; j <= d; ++j) ff.push_back(random_ratfunc(k, rng, 2));
    gg.push_back(random_ratfunc(k, rng, 2));
    const FamilyMap mk(k, ff, gg);
    if (mk.degree() < 1) continue;
    const RatFunc x = random_ratfunc(k, rng, 3);
    P1Point<RatFunc> ik;
    try {
      ik = mk(x);
    } catch (const Error&) {
      continue;
    }
    mpq_class bk = b_const(k, mk.num(), mk.den());
    for (int j = 0; j < mk.degree(); ++j) bk *= height_elem(k, x);
    CHECK(height_point(k, ik) <= bk);
  }
}

TEST_CASE("orbit heights stay below c^{d^n}") {
  for (std::uint64_t q : {3u, 5u})
    for (int d = 2; d <= 3; ++d)
      for (int m = 1; m <= 2; ++m) {
        const FunctionField k(prime_field(q));
        const FamilyMap fam = parse_map("X^" + std::to_string(d) + "+s^" + std::to_string(m), k);
        const std::vector<P1Point<RatFunc>> crit{P1Point<RatFunc>(k.zero())};
        const mpq_class c = c_const(k, fam.num(), fam.den(), crit);
        const auto orbit = orbit_symbolic(fam, crit[0], 5);
        for (int n = 0; n <= 5; ++n) {
          mpz_class cdn;
          mpz_class dn;
          mpz_ui_pow_ui(dn.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(n));
          mpz_pow_ui(cdn.get_mpz_t(), c.get_num_mpz_t(), dn.get_ui());
          for (int j = 0; j <= n; ++j) CHECK(height_point(k, orbit[static_cast<std::size_t>(j)]) < cdn);
        }
      }
}

TEST_CASE("factorization helpers") {
  const auto f = factor_integer(mpz_class(360));
  CHECK(f == std::vector<std::pair<mpz_class, int>>{{2, 3}, {3, 2}, {5, 1}});
  const FieldCtx f3 = prime_field(3);
  // (s+1)^2 (s^2+1)
  PolyRing<FieldCtx> r(f3);
  const Poly<FieldCtx> p = r.mul(r.mul(sp(f3, {1, 1}), sp(f3, {1, 1})), sp(f3, {1, 0, 1}));
  const auto fp = factor_poly(f3, p);
  REQUIRE(fp.size() == 2);
  int total = 0;
  for (const auto& [pi, e] : fp) total += PolyRing<FieldCtx>::degree(pi) * e;
  CHECK(total == 4);
}
