#pragma once

// Dense univariate polynomials over an arbitrary coefficient field.
//
// A field adapter K supplies `using Elem`, zero(), one(), from_int(), add(),
// sub(), neg(), mul(), inv() and is_zero(). Elements are canonical, so
// operator== on Elem is equality in the field. Polynomials are stored
// little-endian with no trailing zeros; the zero polynomial is empty.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "perdyn/error.hpp"

namespace perdyn {

template <class K>
using Poly = std::vector<typename K::Elem>;

template <class K>
class PolyRing {
 public:
  using Elem = typename K::Elem;
  using P = Poly<K>;

  explicit PolyRing(K field) : k_(std::move(field)) {}

  const K& field() const { return k_; }

  static int degree(const P& a) { return static_cast<int>(a.size()) - 1; }

  P trimmed(P a) const {
    while (!a.empty() && k_.is_zero(a.back())) a.pop_back();
    return a;
  }

  P constant(const Elem& c) const { return trimmed(P{c}); }

  P monomial(const Elem& c, int e) const {
    if (k_.is_zero(c)) return {};
    P out(static_cast<std::size_t>(e) + 1, k_.zero());
    out.back() = c;
    return out;
  }

  P x() const { return monomial(k_.one(), 1); }

  const Elem& lead(const P& a) const { return a.back(); }

  Elem coeff(const P& a, int i) const {
    return (i >= 0 && i < static_cast<int>(a.size())) ? a[static_cast<std::size_t>(i)] : k_.zero();
  }

  P add(const P& a, const P& b) const {
    P out(std::max(a.size(), b.size()), k_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = k_.add(out[i], b[i]);
    return trimmed(std::move(out));
  }

  P neg(const P& a) const {
    P out;
    out.reserve(a.size());
    for (const auto& c : a) out.push_back(k_.neg(c));
    return out;
  }

  P sub(const P& a, const P& b) const { return add(a, neg(b)); }

  P scale(const P& a, const Elem& c) const {
    if (k_.is_zero(c)) return {};
    P out;
    out.reserve(a.size());
    for (const auto& v : a) out.push_back(k_.mul(v, c));
    return trimmed(std::move(out));
  }

  P mul(const P& a, const P& b) const {
    if (a.empty() || b.empty()) return {};
    P out(a.size() + b.size() - 1, k_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (k_.is_zero(a[i])) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (k_.is_zero(b[j])) continue;
        out[i + j] = k_.add(out[i + j], k_.mul(a[i], b[j]));
      }
    }
    return trimmed(std::move(out));
  }

  P pow(const P& a, unsigned e) const {
    P result = constant(k_.one());
    P base = a;
    while (e) {
      if (e & 1U) result = mul(result, base);
      e >>= 1U;
      if (e) base = mul(base, base);
    }
    return result;
  }

  std::pair<P, P> divmod(const P& a, const P& b) const {
    if (b.empty()) raise(Errc::DivisionByZero, "polynomial division by zero");
    if (a.size() < b.size()) return {P{}, a};
    P r = a;
    P q(a.size() - b.size() + 1, k_.zero());
    const Elem inv_lead = k_.inv(b.back());
    for (int i = degree(r); i >= degree(b); --i) {
      const Elem& top = r[static_cast<std::size_t>(i)];
      if (k_.is_zero(top)) continue;
      Elem t = k_.mul(top, inv_lead);
      const int shift = i - degree(b);
      for (std::size_t j = 0; j < b.size(); ++j) {
        auto& slot = r[static_cast<std::size_t>(shift) + j];
        slot = k_.sub(slot, k_.mul(t, b[j]));
      }
      q[static_cast<std::size_t>(shift)] = std::move(t);
    }
    return {trimmed(std::move(q)), trimmed(std::move(r))};
  }

  P quo(const P& a, const P& b) const { return divmod(a, b).first; }
  P rem(const P& a, const P& b) const { return divmod(a, b).second; }

  bool divides(const P& d, const P& a) const { return rem(a, d).empty(); }

  P monic(const P& a) const {
    if (a.empty()) return a;
    return scale(a, k_.inv(a.back()));
  }

  // Monic gcd; gcd(0, 0) = 0.
  P gcd(P a, P b) const {
    while (!b.empty()) {
      P r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }

  P derivative(const P& a) const {
    if (a.size() <= 1) return {};
    P out;
    out.reserve(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i)
      out.push_back(k_.mul(k_.from_int(static_cast<long long>(i)), a[i]));
    return trimmed(std::move(out));
  }

  Elem eval(const P& a, const Elem& x) const {
    Elem acc = k_.zero();
    for (std::size_t i = a.size(); i-- > 0;) acc = k_.add(k_.mul(acc, x), a[i]);
    return acc;
  }

  // f(g)
  P compose(const P& f, const P& g) const {
    P acc;
    for (std::size_t i = f.size(); i-- > 0;) acc = add(mul(acc, g), constant(f[i]));
    return acc;
  }

  P mulmod(const P& a, const P& b, const P& m) const { return rem(mul(a, b), m); }

  P powmod(const P& a, const mpz_class& e, const P& m) const {
    P result = rem(constant(k_.one()), m);
    P base = rem(a, m);
    const std::size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      result = mulmod(result, result, m);
      if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, base, m);
    }
    return result;
  }

  // Multiplicity of `a` as a root of p (p nonzero).
  int root_multiplicity(P p, const Elem& a) const {
    const P lin{k_.neg(a), k_.one()};
    int m = 0;
    while (!p.empty()) {
      auto [q, r] = divmod(p, lin);
      if (!r.empty()) break;
      p = std::move(q);
      ++m;
    }
    return m;
  }

 private:
  K k_;
};

}  // namespace perdyn
