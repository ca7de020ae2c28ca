#pragma once

// Finite fields GF(p^r) as GF(p)[x]/(modulus), elements as dense coefficient
// vectors in the power basis.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <iterator>
#include <string>
#include <vector>

#include "perdyn/poly.hpp"

namespace perdyn {

struct FieldElem {
  std::vector<std::uint32_t> coeffs;  // c_0 .. c_{r-1}, each in [0, p)

  friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

class FieldCtx;

// Forward-iterable view over all q elements in ascending coefficient-tuple
// order: index = c_0 + c_1 p + ... + c_{r-1} p^{r-1}.
class ElementRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = FieldElem;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = FieldElem;

    iterator() = default;
    iterator(const FieldCtx* ctx, std::uint64_t idx) : ctx_(ctx), idx_(idx) {}
    FieldElem operator*() const;
    iterator& operator++() {
      ++idx_;
      return *this;
    }
    iterator operator++(int) {
      auto t = *this;
      ++idx_;
      return t;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.idx_ == b.idx_; }

   private:
    const FieldCtx* ctx_ = nullptr;
    std::uint64_t idx_ = 0;
  };

  explicit ElementRange(const FieldCtx* ctx);
  iterator begin() const { return {ctx_, 0}; }
  iterator end() const { return {ctx_, size_}; }
  std::uint64_t size() const { return size_; }

 private:
  const FieldCtx* ctx_;
  std::uint64_t size_;
};

class FieldCtx {
 public:
  using Elem = FieldElem;

  // Use prime_field / extension_field / field_with_modulus.
  FieldCtx(std::uint32_t p, std::vector<std::uint32_t> modulus, bool canonical);

  std::uint32_t p() const { return p_; }
  int r() const { return r_; }
  // Monic modulus over GF(p), coefficients m_0 .. m_r with m_r = 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  const mpz_class& q() const { return q_; }
  // q as a machine integer; throws TooLarge when q >= 2^64.
  std::uint64_t size() const;
  bool canonical() const { return canonical_; }

  // Degree s of the designated base field GF(p^s) used by generates(); s | r.
  int base_degree() const { return base_degree_; }
  FieldCtx with_base(int s) const;

  FieldElem zero() const { return FieldElem{std::vector<std::uint32_t>(static_cast<std::size_t>(r_), 0)}; }
  FieldElem one() const { return from_int(1); }
  FieldElem from_int(long long v) const;
  // Class of x in GF(p)[x]/(modulus).
  FieldElem generator() const;
  // Embeds a GF(p) polynomial into the field (reduces mod modulus).
  FieldElem from_prime_poly(const std::vector<std::uint32_t>& c) const;

  bool is_zero(const FieldElem& a) const;
  FieldElem add(const FieldElem& a, const FieldElem& b) const;
  FieldElem sub(const FieldElem& a, const FieldElem& b) const;
  FieldElem neg(const FieldElem& a) const;
  FieldElem mul(const FieldElem& a, const FieldElem& b) const;
  FieldElem inv(const FieldElem& a) const;
  FieldElem div(const FieldElem& a, const FieldElem& b) const { return mul(a, inv(b)); }
  FieldElem pow(const FieldElem& a, std::uint64_t e) const;
  FieldElem pow(const FieldElem& a, const mpz_class& e) const;

  FieldElem element(std::uint64_t index) const;
  std::uint64_t index(const FieldElem& a) const;
  ElementRange elements() const { return ElementRange(this); }

  // Quadratic character test (a nonzero square); requires odd p.
  bool is_square(const FieldElem& a) const;

  std::string format(const FieldElem& a, char var = 'x') const;
  std::string describe() const;

  friend bool operator==(const FieldCtx& a, const FieldCtx& b) {
    return a.p_ == b.p_ && a.modulus_ == b.modulus_;
  }

 private:
  std::uint32_t p_;
  int r_;
  std::vector<std::uint32_t> modulus_;
  mpz_class q_;
  bool canonical_;
  int base_degree_ = 1;
};

bool is_prime(std::uint64_t n);

FieldCtx prime_field(std::uint64_t p);
// GF(p^r) with the lexicographically first monic irreducible modulus.
FieldCtx extension_field(std::uint64_t p, int r);
// GF(p^deg) with an explicitly chosen monic irreducible modulus over GF(p).
FieldCtx field_with_modulus(std::uint64_t p, std::vector<std::uint32_t> modulus);
// Field of order q = p^k for a prime power q; throws NotPrime otherwise.
FieldCtx field_of_order(std::uint64_t q);

// Is a prime power p^k (k >= 1)? Fills p and k on success.
bool prime_power(std::uint64_t q, std::uint64_t* p = nullptr, int* k = nullptr);

// F_q(a) = F_{q^r}, with q = p^{base_degree}.
bool generates(const FieldCtx& ctx, const FieldElem& a);
bool generates(const FieldCtx& ctx, const FieldElem& a, int base_degree);
// Degree of a over GF(p^s) (size of its Frobenius orbit).
int frobenius_orbit_size(const FieldCtx& ctx, const FieldElem& a, int base_degree);

// Minimal polynomial of a over GF(p), as GF(p) coefficients (monic).
std::vector<std::uint32_t> minimal_polynomial(const FieldCtx& ctx, const FieldElem& a);

// Rabin irreducibility test for a polynomial over ctx.
bool is_irreducible(const FieldCtx& ctx, const Poly<FieldCtx>& f);

// Calls fn for every monic irreducible of degree r over ctx, ascending in
// (c_{r-1}, ..., c_0) order. fn returns false to stop early.
void for_each_irreducible(const FieldCtx& ctx, int r, const std::function<bool(const Poly<FieldCtx>&)>& fn);
std::vector<Poly<FieldCtx>> irreducible_polys(const FieldCtx& ctx, int r);

// Coefficient maps between GF(p)[x] and polynomials over a prime field ctx.
Poly<FieldCtx> lift_prime_poly(const FieldCtx& prime_ctx, const std::vector<std::uint32_t>& c);
std::vector<std::uint32_t> lower_prime_poly(const FieldCtx& prime_ctx, const Poly<FieldCtx>& f);

std::string format_poly(const FieldCtx& ctx, const Poly<FieldCtx>& f, char var = 's');

// Isomorphism GF(p)[x]/(from.modulus) -> to, sending x to the first root of
// from.modulus in `to` (enumeration order). Both fields must have equal order.
class FieldEmbedding {
 public:
  FieldEmbedding(const FieldCtx& from, const FieldCtx& to);
  FieldElem operator()(const FieldElem& a) const;
  const FieldElem& image_of_generator() const { return powers_.at(1); }

 private:
  FieldCtx to_;
  std::vector<FieldElem> powers_;  // root^i for i < r
};

// Digitwise-add tables over packed element indices, used by the hot sweep
// loops (translation x -> x + beta without going through FieldElem).
class IndexAdder {
 public:
  explicit IndexAdder(const FieldCtx& ctx);

  int chunks() const { return static_cast<int>(radix_.size()); }
  std::uint32_t chunk_radix(int j) const { return radix_[static_cast<std::size_t>(j)]; }
  std::uint64_t chunk_scale(int j) const { return scale_[static_cast<std::size_t>(j)]; }
  std::uint32_t chunk_of(std::uint64_t idx, int j) const {
    return static_cast<std::uint32_t>((idx / scale_[static_cast<std::size_t>(j)]) % radix_[static_cast<std::size_t>(j)]);
  }
  // Digitwise sum of two chunk values of chunk j.
  std::uint32_t add_chunk(int j, std::uint32_t u, std::uint32_t v) const;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;

 private:
  std::uint32_t p_;
  std::vector<std::uint32_t> radix_;
  std::vector<std::uint64_t> scale_;
  std::vector<int> digits_;
  std::vector<std::vector<std::uint32_t>> table_;  // per distinct chunk width
};

}  // namespace perdyn
