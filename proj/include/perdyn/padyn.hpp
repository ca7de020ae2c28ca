#pragma once

// Rational maps on P^1 and functional-graph statistics over finite fields.

#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "perdyn/ffield.hpp"
#include "perdyn/fields.hpp"
#include "perdyn/poly.hpp"

namespace perdyn {

// nullopt is the point at infinity [1:0]; a value a is [a:1].
template <class E>
using P1Point = std::optional<E>;

template <class K>
struct Mobius {
  typename K::Elem a, b, c, d;  // x -> (a x + b) / (c x + d)
};

template <class K>
class RationalMapT {
 public:
  using Elem = typename K::Elem;
  using P = Poly<K>;
  using Point = P1Point<Elem>;

  // Cancels gcd(num, den) and makes den monic.
  RationalMapT(K field, P num, P den) : ring_(std::move(field)) {
    num = ring_.trimmed(std::move(num));
    den = ring_.trimmed(std::move(den));
    if (den.empty()) raise(Errc::ZeroDenominator, "map denominator is zero");
    const P g = ring_.gcd(num, den);
    if (g.size() > 1) {
      num = ring_.quo(num, g);
      den = ring_.quo(den, g);
    }
    const Elem li = ring_.field().inv(den.back());
    num_ = ring_.scale(num, li);
    den_ = ring_.scale(den, li);
    degree_ = std::max(PolyRing<K>::degree(num_), PolyRing<K>::degree(den_));
    if (degree_ < 0) degree_ = 0;
    separable_ = !wronskian().empty();
  }

  const K& field() const { return ring_.field(); }
  const PolyRing<K>& ring() const { return ring_; }
  const P& num() const { return num_; }
  const P& den() const { return den_; }
  int degree() const { return degree_; }
  // phi' != 0 as a formal rational function.
  bool separable() const { return separable_; }
  // Constant map (degree 0).
  bool degenerate() const { return degree_ == 0; }
  bool is_polynomial() const { return den_.size() == 1; }

  // f' g - f g'
  P wronskian() const {
    return ring_.sub(ring_.mul(ring_.derivative(num_), den_), ring_.mul(num_, ring_.derivative(den_)));
  }

  Point operator()(const Point& pt) const {
    const K& k = field();
    Elem fv, gv;
    if (pt) {
      fv = ring_.eval(num_, *pt);
      gv = ring_.eval(den_, *pt);
    } else {
      fv = ring_.coeff(num_, degree_);
      gv = ring_.coeff(den_, degree_);
    }
    if (!k.is_zero(gv)) return k.mul(fv, k.inv(gv));
    if (!k.is_zero(fv)) return std::nullopt;
    raise(Errc::Indeterminate, "both homogeneous forms vanish");
  }

  // this o other
  RationalMapT compose(const RationalMapT& other) const {
    const P& a = other.num_;
    const P& b = other.den_;
    const int d = degree_;
    std::vector<P> apow{ring_.constant(field().one())}, bpow{ring_.constant(field().one())};
    for (int i = 0; i < d; ++i) {
      apow.push_back(ring_.mul(apow.back(), a));
      bpow.push_back(ring_.mul(bpow.back(), b));
    }
    P f, g;
    for (int i = 0; i <= d; ++i) {
      const P term = ring_.mul(apow[static_cast<std::size_t>(i)], bpow[static_cast<std::size_t>(d - i)]);
      f = ring_.add(f, ring_.scale(term, ring_.coeff(num_, i)));
      g = ring_.add(g, ring_.scale(term, ring_.coeff(den_, i)));
    }
    return RationalMapT(field(), std::move(f), std::move(g));
  }

  RationalMapT iterate(int n) const {
    RationalMapT out = identity(field());
    for (int i = 0; i < n; ++i) out = compose(out);
    return out;
  }

  static RationalMapT identity(const K& k) {
    PolyRing<K> r(k);
    return RationalMapT(k, r.x(), r.constant(k.one()));
  }

  static RationalMapT mobius(const K& k, const Mobius<K>& m) {
    if (k.is_zero(k.sub(k.mul(m.a, m.d), k.mul(m.b, m.c))))
      raise(Errc::SingularMobius, "ad - bc = 0");
    return RationalMapT(k, P{m.b, m.a}, P{m.d, m.c});
  }

  // mu o phi o mu^{-1}
  RationalMapT conjugate(const Mobius<K>& m) const {
    const K& k = field();
    const RationalMapT mu = mobius(k, m);
    const RationalMapT mu_inv = mobius(k, Mobius<K>{m.d, k.neg(m.b), k.neg(m.c), m.a});
    return mu.compose(compose(mu_inv));
  }

  friend bool operator==(const RationalMapT& x, const RationalMapT& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }

 private:
  PolyRing<K> ring_;
  P num_, den_;
  int degree_ = 0;
  bool separable_ = false;
};

using RationalMap = RationalMapT<FieldCtx>;
using RationalMapQ = RationalMapT<Rationals>;
using FamilyMap = RationalMapT<FunctionField>;

// Text form of a polynomial over K in the variable `var`.
template <class K>
std::string format_poly_over(const K& k, const Poly<K>& f, const std::string& var) {
  std::string out;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (k.is_zero(f[i])) continue;
    std::string c = k.format(f[i]);
    bool negative = !c.empty() && c[0] == '-' && c.find_first_of("+-", 1) == std::string::npos;
    if (negative) c.erase(0, 1);
    const bool compound = c.find_first_of("+-/") != std::string::npos;
    if (!out.empty()) out += negative ? "-" : "+";
    else if (negative) out += "-";
    if (i == 0) {
      out += compound ? "(" + c + ")" : c;
      continue;
    }
    if (c != "1") out += compound ? "(" + c + ")" : c;
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

template <class K>
std::string format_map(const RationalMapT<K>& m) {
  const std::string n = format_poly_over(m.field(), m.num(), "X");
  if (m.is_polynomial()) return n;
  return "(" + n + ")/(" + format_poly_over(m.field(), m.den(), "X") + ")";
}

std::string format_elem(const FieldCtx& k, const FieldElem& a);
inline std::string format_elem(const Rationals& k, const mpq_class& a) { return k.format(a); }
inline std::string format_elem(const FunctionField& k, const RatFunc& a) { return k.format(a); }

template <class K>
std::string format_point(const K& k, const P1Point<typename K::Elem>& pt) {
  return pt ? format_elem(k, *pt) : std::string("inf");
}

// ---------------------------------------------------------------------------
// Functional graphs on P^1(F_q). Points are numbered by element index, with
// infinity last (index q).

using SuccTable = std::vector<std::uint32_t>;

struct GraphStats {
  std::uint64_t n_points = 0;
  std::uint64_t periodic_count = 0;
  std::vector<std::uint64_t> cycle_lengths;  // descending
  std::vector<std::uint64_t> image_sizes;    // |phi^n|, n = 1, 2, ...
};

std::uint32_t point_index(const FieldCtx& ctx, const P1Point<FieldElem>& pt);
P1Point<FieldElem> point_at(const FieldCtx& ctx, std::uint32_t idx);

SuccTable successor_table(const RationalMap& map, const FieldCtx& ctx);
GraphStats graph_stats(const SuccTable& table);
// |phi^n(P^1(F_q))| by n rounds of set image.
std::uint64_t image_size(const RationalMap& map, const FieldCtx& ctx, int n);
std::uint64_t image_size(const SuccTable& table, int n);

// Reusable buffers for periodic counting in hot loops.
struct PeelScratch {
  std::vector<std::uint32_t> indeg;
  std::vector<std::uint32_t> queue;
};
std::uint64_t periodic_count(const SuccTable& table, PeelScratch& scratch);

// X^d + beta for every beta of one field, sharing the x^d table.
class UnicriticalSweep {
 public:
  UnicriticalSweep(const FieldCtx& ctx, unsigned d);

  const FieldCtx& field() const { return ctx_; }
  unsigned degree() const { return d_; }
  std::uint32_t n_points() const { return n_points_; }
  void table(std::uint64_t beta, SuccTable& out) const;
  SuccTable table(std::uint64_t beta) const {
    SuccTable t;
    table(beta, t);
    return t;
  }

 private:
  FieldCtx ctx_;
  unsigned d_;
  std::uint32_t n_points_;
  IndexAdder adder_;
  std::vector<std::vector<std::uint16_t>> power_chunks_;  // [chunk][point]
};

unsigned default_threads();

// Runs fn(i, worker) for i in [0, n) on `threads` workers, each worker taking
// a contiguous block. Exceptions are rethrown on the caller.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t, unsigned)>& fn);

}  // namespace perdyn
