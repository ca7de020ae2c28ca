#pragma once

// Absolute values, heights and the iterate-depth constants over Q and F_q(s).

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "perdyn/fields.hpp"
#include "perdyn/padyn.hpp"

namespace perdyn {

struct Place {
  enum class Kind { Archimedean, Finite, Degree };
  Kind kind = Kind::Finite;
  mpz_class prime;     // Q, finite places
  Poly<FieldCtx> pi;   // F_q(s), finite places (monic irreducible)
  mpz_class norm;      // residue field size; 0 for the archimedean place

  static Place archimedean() { return {Kind::Archimedean, 0, {}, 0}; }
};

std::string format_place(const FieldCtx& base, const Place& v);
std::string format_place(const Place& v);

inline int ar(const Rationals&) { return 1; }
inline int ar(const FunctionField&) { return 0; }

Place infinite_place(const Rationals& k);
Place infinite_place(const FunctionField& k);
Place finite_place(const Rationals& k, const mpz_class& p);
Place finite_place(const FunctionField& k, const Poly<FieldCtx>& pi);

// Finite places where x has nonzero valuation, in ascending order.
std::vector<Place> support(const Rationals& k, const mpq_class& x);
std::vector<Place> support(const FunctionField& k, const RatFunc& x);

int valuation(const Rationals& k, const Place& v, const mpq_class& x);
int valuation(const FunctionField& k, const Place& v, const RatFunc& x);

// ||x||_v, exact. ||0||_v = 0.
mpq_class local_norm(const Rationals& k, const Place& v, const mpq_class& x);
mpq_class local_norm(const FunctionField& k, const Place& v, const RatFunc& x);

// Closed forms: max(|num|, |den|) and q^{max(deg num, deg den)}.
mpq_class height_elem(const Rationals& k, const mpq_class& x);
mpq_class height_elem(const FunctionField& k, const RatFunc& x);

// Places that can contribute to a product over all places for x: its support
// plus the infinite place.
template <class K>
std::vector<Place> relevant_places(const K& k, const std::vector<typename K::Elem>& xs) {
  std::vector<Place> out{infinite_place(k)};
  for (const auto& x : xs) {
    if (k.is_zero(x)) continue;
    for (auto& v : support(k, x)) {
      bool dup = false;
      for (const auto& w : out) dup = dup || (w.kind == v.kind && w.prime == v.prime && w.pi == v.pi);
      if (!dup) out.push_back(std::move(v));
    }
  }
  return out;
}

// prod_v max(1, ||x||_v), evaluated place by place.
template <class K>
mpq_class height_literal(const K& k, const typename K::Elem& x) {
  mpq_class h = 1;
  if (k.is_zero(x)) return h;
  for (const auto& v : relevant_places(k, {x})) h *= std::max(mpq_class(1), local_norm(k, v, x));
  return h;
}

template <class K>
mpq_class height_point(const K& k, const P1Point<typename K::Elem>& pt) {
  if (!pt) return 1;
  return height_elem(k, *pt);
}

template <class K>
mpq_class height_point(const K& k, const typename K::Elem& a, const typename K::Elem& b) {
  if (k.is_zero(a) && k.is_zero(b)) raise(Errc::ZeroPoint, "[0:0] is not a point");
  if (!k.is_zero(b)) return height_elem(k, k.div(a, b));
  return height_elem(k, k.div(b, a));
}

// prod_v max(||f||_v, ||g||_v) with ||f||_v the max coefficient norm.
template <class K>
mpq_class pair_height(const K& k, const Poly<K>& f, const Poly<K>& g) {
  if (g.empty()) raise(Errc::ZeroDenominatorPoly, "g = 0");
  std::vector<typename K::Elem> coeffs(f.begin(), f.end());
  coeffs.insert(coeffs.end(), g.begin(), g.end());
  mpq_class h = 1;
  for (const auto& v : relevant_places(k, coeffs)) {
    mpq_class m = 0;
    for (const auto& c : coeffs) m = std::max(m, local_norm(k, v, c));
    h *= m;
  }
  return h;
}

template <class K>
mpq_class b_const(const K& k, const Poly<K>& f, const Poly<K>& g) {
  const int d = std::max(PolyRing<K>::degree(f), PolyRing<K>::degree(g));
  mpz_class lead;
  mpz_ui_pow_ui(lead.get_mpz_t(), static_cast<unsigned long>(d + 1), static_cast<unsigned long>(ar(k)));
  return std::max(mpq_class(2), mpq_class(mpq_class(lead) * pair_height(k, f, g)));
}

template <class K>
mpq_class c_const(const K& k, const Poly<K>& f, const Poly<K>& g, const std::vector<P1Point<typename K::Elem>>& crit) {
  if (crit.empty()) raise(Errc::EmptyCritSet, "C must be nonempty");
  mpq_class m = 0;
  for (const auto& pt : crit) m = std::max(m, height_point(k, pt));
  return mpq_class(b_const(k, f, g) * m);
}

// Natural log of a positive rational, accurate for arguments of any size.
double log_of(const mpq_class& x);
double log_of(const mpz_class& x);

// Floor of the iterate-depth formula at a place of norm N. The raw pre-floor
// value is returned through `raw` when requested.
long long n_eps_value(int ar, const mpq_class& c, int d, double eps, const mpz_class& norm, double* raw = nullptr);

template <class K>
long long n_eps(const K& k, const Poly<K>& f, const Poly<K>& g, const std::vector<P1Point<typename K::Elem>>& crit,
                double eps, const mpz_class& norm, double* raw = nullptr) {
  const int d = std::max(PolyRing<K>::degree(f), PolyRing<K>::degree(g));
  return n_eps_value(ar(k), c_const(k, f, g, crit), d, eps, norm, raw);
}

template <class K>
bool product_formula_check(const K& k, const typename K::Elem& x) {
  if (k.is_zero(x)) raise(Errc::ZeroElement, "product formula needs x != 0");
  mpq_class prod = 1;
  for (const auto& v : relevant_places(k, {x})) prod *= local_norm(k, v, x);
  return prod == 1;
}

// Trial-division factorizations backing the literal place products.
std::vector<std::pair<mpz_class, int>> factor_integer(mpz_class n);
std::vector<std::pair<Poly<FieldCtx>, int>> factor_poly(const FieldCtx& base, Poly<FieldCtx> f);

}  // namespace perdyn
