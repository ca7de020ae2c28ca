#pragma once

// One-parameter families over F_q[s] (and exact maps over Q): places,
// specialization, critical points, exact orbits and orbit disjointness.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "perdyn/height.hpp"
#include "perdyn/padyn.hpp"

namespace perdyn {

// Monic irreducibles of degree r over the constant field, as places.
std::vector<Place> places_of(const FunctionField& k, int r);
// Primes <= bound.
std::vector<Place> places_of(const Rationals& k, const mpz_class& bound);

struct Specialization {
  FieldCtx ctx;                     // GF(q)[x]/(pi)
  std::optional<RationalMap> map;   // empty when the denominator vanishes mod pi
  bool good_reduction = false;      // degree preserved
};

// Reduces a family mod pi. The constant field must be a prime field.
Specialization specialize(const FamilyMap& fam, const Poly<FieldCtx>& pi);
// Reduction of a point of P^1(F_q(s)) into ctx = GF(q)[x]/(pi).
P1Point<FieldElem> specialize_point(const FieldCtx& ctx, const FunctionField& k, const P1Point<RatFunc>& pt);
// Reduction of a polynomial in F_q[s] into ctx (pi = ctx modulus).
FieldElem reduce_poly(const FieldCtx& ctx, const Poly<FieldCtx>& a);

// Roots in K of a nonzero polynomial over K: exhaustive over finite fields,
// rational-root search over Q and F_q(s).
std::vector<FieldElem> roots(const FieldCtx& k, const Poly<FieldCtx>& f);
std::vector<mpq_class> roots(const Rationals& k, const Poly<Rationals>& f);
std::vector<RatFunc> roots(const FunctionField& k, const Poly<FunctionField>& f);

template <class E>
struct CritPoint {
  P1Point<E> point;
  int local_degree = 1;
};

template <class E>
struct CritSet {
  std::vector<CritPoint<E>> points;
  bool all_rational = false;  // sum of (e - 1) reaches 2d - 2
  bool wild = false;          // char divides some local degree
};

// Characteristic of the coefficient field (0 for Q).
inline std::uint64_t characteristic(const FieldCtx& k) { return k.p(); }
inline std::uint64_t characteristic(const Rationals&) { return 0; }
inline std::uint64_t characteristic(const FunctionField& k) { return k.base().p(); }

// ord_{X=a} of f(X) g(a) - f(a) g(X).
template <class K>
int local_degree_at(const PolyRing<K>& ring, const Poly<K>& f, const Poly<K>& g, const typename K::Elem& a) {
  const K& k = ring.field();
  const auto fa = ring.eval(f, a);
  const auto ga = ring.eval(g, a);
  const Poly<K> h = ring.sub(ring.scale(f, ga), ring.scale(g, fa));
  if (h.empty()) raise(Errc::InvalidArgument, "constant map has no local degree");
  (void)k;
  return ring.root_multiplicity(h, a);
}

template <class K>
Poly<K> reversed(const PolyRing<K>& ring, const Poly<K>& f, int d) {
  Poly<K> out(static_cast<std::size_t>(d) + 1, ring.field().zero());
  for (int i = 0; i <= d; ++i) out[static_cast<std::size_t>(d - i)] = ring.coeff(f, i);
  return ring.trimmed(std::move(out));
}

template <class K>
CritSet<typename K::Elem> critical_points(const RationalMapT<K>& map) {
  if (!map.separable()) raise(Errc::InseparableMap, "phi' = 0");
  const K& k = map.field();
  const PolyRing<K>& ring = map.ring();
  const int d = map.degree();
  CritSet<typename K::Elem> out;
  const std::uint64_t p = characteristic(k);
  int total = 0;
  auto record = [&](P1Point<typename K::Elem> pt, int e) {
    if (e < 2) return;
    out.points.push_back({std::move(pt), e});
    total += e - 1;
    if (p != 0 && static_cast<std::uint64_t>(e) % p == 0) out.wild = true;
  };
  for (auto& a : roots(k, map.wronskian())) {
    const int e = local_degree_at(ring, map.num(), map.den(), a);
    record(P1Point<typename K::Elem>(a), e);
  }
  // infinity: psi(X) = 1/phi(1/X) at X = 0
  const Poly<K> rf = reversed(ring, map.num(), d);
  const Poly<K> rg = reversed(ring, map.den(), d);
  record(std::nullopt, local_degree_at(ring, rg, rf, k.zero()));
  out.all_rational = total == 2 * d - 2;
  return out;
}

// Size measure used by the orbit cap: s-degree for F_q(s), bit length for Q,
// zero for finite fields.
inline std::uint64_t elem_size(const FunctionField&, const RatFunc& a) {
  return static_cast<std::uint64_t>(std::max<std::size_t>(a.num.size(), a.den.size()));
}
inline std::uint64_t elem_size(const Rationals&, const mpq_class& a) {
  return std::max(mpz_sizeinbase(a.get_num_mpz_t(), 2), mpz_sizeinbase(a.get_den_mpz_t(), 2));
}
inline std::uint64_t elem_size(const FieldCtx&, const FieldElem&) { return 0; }

constexpr std::uint64_t kDefaultOrbitCap = 1000000;

template <class K>
std::vector<P1Point<typename K::Elem>> orbit_symbolic(const RationalMapT<K>& map, const P1Point<typename K::Elem>& start,
                                                       int n, std::uint64_t cap = kDefaultOrbitCap) {
  if (n < 0) raise(Errc::InvalidArgument, "orbit length must be >= 0");
  std::vector<P1Point<typename K::Elem>> out{start};
  for (int m = 1; m <= n; ++m) {
    out.push_back(map(out.back()));
    if (out.back() && elem_size(map.field(), *out.back()) > cap)
      raise(Errc::DegreeOverflow, "orbit entry " + std::to_string(m) + " exceeds the size cap " + std::to_string(cap));
  }
  return out;
}

struct DisjointWitness {
  std::size_t gamma1 = 0;  // index into C
  int m1 = 0;
  std::size_t gamma2 = 0;
  int m2 = 0;
};

// Distinctness of phi^m(gamma) over gamma in C and 0 <= m <= n.
template <class K>
std::optional<DisjointWitness> phi_disjoint(const RationalMapT<K>& map, const std::vector<P1Point<typename K::Elem>>& crit,
                                            int n, std::uint64_t cap = kDefaultOrbitCap) {
  struct Seen {
    P1Point<typename K::Elem> value;
    std::size_t gamma;
    int m;
  };
  std::vector<Seen> seen;
  for (std::size_t i = 0; i < crit.size(); ++i) {
    const auto orbit = orbit_symbolic(map, crit[i], n, cap);
    for (int m = 0; m <= n; ++m) {
      const auto& v = orbit[static_cast<std::size_t>(m)];
      for (const auto& s : seen)
        if (s.value == v) return DisjointWitness{s.gamma, s.m, i, m};
      seen.push_back({v, i, m});
    }
  }
  return std::nullopt;
}

}  // namespace perdyn
