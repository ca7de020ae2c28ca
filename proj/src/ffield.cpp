#include "perdyn/ffield.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <sstream>

namespace perdyn {

namespace {

std::uint32_t mod_p(long long v, std::uint32_t p) {
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

std::vector<int> prime_divisors(int n) {
  std::vector<int> out;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

FieldElem ElementRange::iterator::operator*() const { return ctx_->element(idx_); }

ElementRange::ElementRange(const FieldCtx* ctx) : ctx_(ctx), size_(ctx->size()) {}

// ---------------------------------------------------------------------------

FieldCtx::FieldCtx(std::uint32_t p, std::vector<std::uint32_t> modulus, bool canonical)
    : p_(p), r_(static_cast<int>(modulus.size()) - 1), modulus_(std::move(modulus)), canonical_(canonical) {
  if (r_ < 1 || modulus_.back() != 1) raise(Errc::InvalidArgument, "modulus must be monic of degree >= 1");
  mpz_ui_pow_ui(q_.get_mpz_t(), p_, static_cast<unsigned long>(r_));
}

std::uint64_t FieldCtx::size() const {
  if (mpz_sizeinbase(q_.get_mpz_t(), 2) > 63)
    raise(Errc::TooLarge, "field of order " + q_.get_str() + " cannot be enumerated");
  return static_cast<std::uint64_t>(mpz_get_ui(q_.get_mpz_t()));
}

FieldCtx FieldCtx::with_base(int s) const {
  if (s < 1 || r_ % s != 0)
    raise(Errc::BadBase, "base degree " + std::to_string(s) + " does not divide " + std::to_string(r_));
  FieldCtx out = *this;
  out.base_degree_ = s;
  return out;
}

FieldElem FieldCtx::from_int(long long v) const {
  FieldElem e = zero();
  e.coeffs[0] = mod_p(v, p_);
  return e;
}

FieldElem FieldCtx::from_prime_poly(const std::vector<std::uint32_t>& c) const {
  std::vector<std::uint64_t> tmp(std::max<std::size_t>(c.size(), static_cast<std::size_t>(r_)), 0);
  for (std::size_t i = 0; i < c.size(); ++i) tmp[i] = c[i] % p_;
  for (std::size_t i = tmp.size(); i-- > static_cast<std::size_t>(r_);) {
    const std::uint64_t t = tmp[i];
    if (!t) continue;
    const std::size_t base = i - static_cast<std::size_t>(r_);
    for (int j = 0; j < r_; ++j) {
      const std::uint64_t sub = (t * modulus_[static_cast<std::size_t>(j)]) % p_;
      tmp[base + static_cast<std::size_t>(j)] = (tmp[base + static_cast<std::size_t>(j)] + p_ - sub) % p_;
    }
    tmp[i] = 0;
  }
  FieldElem e = zero();
  for (int i = 0; i < r_; ++i) e.coeffs[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(tmp[static_cast<std::size_t>(i)]);
  return e;
}

FieldElem FieldCtx::generator() const { return from_prime_poly({0, 1}); }

bool FieldCtx::is_zero(const FieldElem& a) const {
  for (auto c : a.coeffs)
    if (c) return false;
  return true;
}

FieldElem FieldCtx::add(const FieldElem& a, const FieldElem& b) const {
  FieldElem out = a;
  for (int i = 0; i < r_; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const std::uint32_t s = a.coeffs[k] + b.coeffs[k];
    out.coeffs[k] = s >= p_ ? s - p_ : s;
  }
  return out;
}

FieldElem FieldCtx::neg(const FieldElem& a) const {
  FieldElem out = a;
  for (auto& c : out.coeffs) c = c ? p_ - c : 0;
  return out;
}

FieldElem FieldCtx::sub(const FieldElem& a, const FieldElem& b) const { return add(a, neg(b)); }

FieldElem FieldCtx::mul(const FieldElem& a, const FieldElem& b) const {
  if (r_ == 1) {
    FieldElem out = a;
    out.coeffs[0] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(a.coeffs[0]) * b.coeffs[0]) % p_);
    return out;
  }
  const auto r = static_cast<std::size_t>(r_);
  std::vector<std::uint64_t> tmp(2 * r - 1, 0);
  for (std::size_t i = 0; i < r; ++i) {
    if (!a.coeffs[i]) continue;
    for (std::size_t j = 0; j < r; ++j) {
      if (!b.coeffs[j]) continue;
      tmp[i + j] = (tmp[i + j] + static_cast<std::uint64_t>(a.coeffs[i]) * b.coeffs[j]) % p_;
    }
  }
  for (std::size_t i = tmp.size(); i-- > r;) {
    const std::uint64_t t = tmp[i];
    if (!t) continue;
    const std::size_t base = i - r;
    for (std::size_t j = 0; j < r; ++j) {
      if (!modulus_[j]) continue;
      const std::uint64_t sub = (t * modulus_[j]) % p_;
      tmp[base + j] = (tmp[base + j] + p_ - sub) % p_;
    }
  }
  FieldElem out;
  out.coeffs.resize(r);
  for (std::size_t i = 0; i < r; ++i) out.coeffs[i] = static_cast<std::uint32_t>(tmp[i]);
  return out;
}

FieldElem FieldCtx::pow(const FieldElem& a, std::uint64_t e) const {
  FieldElem result = one();
  FieldElem base = a;
  while (e) {
    if (e & 1U) result = mul(result, base);
    e >>= 1U;
    if (e) base = mul(base, base);
  }
  return result;
}

FieldElem FieldCtx::pow(const FieldElem& a, const mpz_class& e) const {
  if (e < 0) return pow(inv(a), mpz_class(-e));
  FieldElem result = one();
  const std::size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mul(result, result);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mul(result, a);
  }
  return result;
}

FieldElem FieldCtx::inv(const FieldElem& a) const {
  if (is_zero(a)) raise(Errc::DivisionByZero, "inverse of zero in " + describe());
  return pow(a, mpz_class(q_ - 2));
}

FieldElem FieldCtx::element(std::uint64_t index) const {
  FieldElem e = zero();
  for (int i = 0; i < r_; ++i) {
    e.coeffs[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(index % p_);
    index /= p_;
  }
  return e;
}

std::uint64_t FieldCtx::index(const FieldElem& a) const {
  std::uint64_t idx = 0;
  for (int i = r_; i-- > 0;) idx = idx * p_ + a.coeffs[static_cast<std::size_t>(i)];
  return idx;
}

bool FieldCtx::is_square(const FieldElem& a) const {
  if (p_ == 2) raise(Errc::InvalidArgument, "quadratic character needs odd characteristic");
  if (is_zero(a)) return false;
  return pow(a, mpz_class((q_ - 1) / 2)) == one();
}

std::string FieldCtx::format(const FieldElem& a, char var) const {
  std::ostringstream os;
  bool first = true;
  for (int i = r_; i-- > 0;) {
    const std::uint32_t c = a.coeffs[static_cast<std::size_t>(i)];
    if (!c) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c;
    os << var;
    if (i > 1) os << '^' << i;
  }
  if (first) os << '0';
  return os.str();
}

std::string FieldCtx::describe() const {
  std::ostringstream os;
  os << "GF(" << p_;
  if (r_ > 1) os << '^' << r_;
  os << ")";
  if (r_ > 1 || modulus_[0] != 0) {
    FieldCtx fp = prime_field(p_);
    os << " mod " << format_poly(fp, lift_prime_poly(fp, modulus_), 'x');
  }
  return os.str();
}

// ---------------------------------------------------------------------------

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

bool prime_power(std::uint64_t q, std::uint64_t* p, int* k) {
  if (q < 2) return false;
  std::uint64_t f = 0;
  for (std::uint64_t d = 2; d <= q / d; ++d)
    if (q % d == 0) {
      f = d;
      break;
    }
  if (f == 0) f = q;
  int e = 0;
  while (q % f == 0) {
    q /= f;
    ++e;
  }
  if (q != 1) return false;
  if (p) *p = f;
  if (k) *k = e;
  return true;
}

FieldCtx prime_field(std::uint64_t p) {
  if (!is_prime(p)) raise(Errc::NotPrime, std::to_string(p) + " is not prime");
  if (p > std::numeric_limits<std::uint32_t>::max() / 2)
    raise(Errc::TooLarge, "characteristic " + std::to_string(p) + " exceeds 31 bits");
  return FieldCtx(static_cast<std::uint32_t>(p), {0, 1}, true);
}

FieldCtx extension_field(std::uint64_t p, int r) {
  FieldCtx fp = prime_field(p);
  if (r < 1) raise(Errc::InvalidArgument, "extension degree must be >= 1");
  if (r == 1) return fp;
  std::vector<std::uint32_t> modulus;
  for_each_irreducible(fp, r, [&](const Poly<FieldCtx>& f) {
    modulus = lower_prime_poly(fp, f);
    return false;
  });
  return FieldCtx(fp.p(), std::move(modulus), true);
}

FieldCtx field_with_modulus(std::uint64_t p, std::vector<std::uint32_t> modulus) {
  FieldCtx fp = prime_field(p);
  while (!modulus.empty() && modulus.back() % fp.p() == 0) modulus.pop_back();
  for (auto& c : modulus) c %= fp.p();
  if (modulus.size() < 2 || modulus.back() != 1)
    raise(Errc::InvalidArgument, "modulus must be monic of degree >= 1");
  if (!is_irreducible(fp, lift_prime_poly(fp, modulus)))
    raise(Errc::InvalidArgument, "modulus is reducible over GF(" + std::to_string(p) + ")");
  const bool canonical = modulus == extension_field(p, static_cast<int>(modulus.size()) - 1).modulus();
  return FieldCtx(fp.p(), std::move(modulus), canonical);
}

FieldCtx field_of_order(std::uint64_t q) {
  std::uint64_t p = 0;
  int k = 0;
  if (!prime_power(q, &p, &k)) raise(Errc::NotPrime, std::to_string(q) + " is not a prime power");
  return extension_field(p, k);
}

// ---------------------------------------------------------------------------

int frobenius_orbit_size(const FieldCtx& ctx, const FieldElem& a, int base_degree) {
  if (base_degree < 1 || ctx.r() % base_degree != 0)
    raise(Errc::BadBase, "base degree " + std::to_string(base_degree) + " does not divide " + std::to_string(ctx.r()));
  mpz_class q0;
  mpz_ui_pow_ui(q0.get_mpz_t(), ctx.p(), static_cast<unsigned long>(base_degree));
  FieldElem cur = ctx.pow(a, q0);
  int size = 1;
  while (!(cur == a)) {
    cur = ctx.pow(cur, q0);
    ++size;
  }
  return size;
}

bool generates(const FieldCtx& ctx, const FieldElem& a, int base_degree) {
  return frobenius_orbit_size(ctx, a, base_degree) == ctx.r() / base_degree;
}

bool generates(const FieldCtx& ctx, const FieldElem& a) { return generates(ctx, a, ctx.base_degree()); }

std::vector<std::uint32_t> minimal_polynomial(const FieldCtx& ctx, const FieldElem& a) {
  PolyRing<FieldCtx> ring(ctx);
  Poly<FieldCtx> m = ring.constant(ctx.one());
  FieldElem cur = a;
  do {
    m = ring.mul(m, Poly<FieldCtx>{ctx.neg(cur), ctx.one()});
    cur = ctx.pow(cur, static_cast<std::uint64_t>(ctx.p()));
  } while (!(cur == a));
  std::vector<std::uint32_t> out;
  out.reserve(m.size());
  for (const auto& c : m) out.push_back(c.coeffs[0]);
  return out;
}

bool is_irreducible(const FieldCtx& ctx, const Poly<FieldCtx>& f_in) {
  PolyRing<FieldCtx> ring(ctx);
  const Poly<FieldCtx> f = ring.monic(ring.trimmed(f_in));
  const int n = PolyRing<FieldCtx>::degree(f);
  if (n < 1) return false;
  if (n == 1) return true;
  const Poly<FieldCtx> x = ring.x();
  std::vector<Poly<FieldCtx>> frob;  // frob[k] = x^{q^k} mod f
  frob.push_back(ring.rem(x, f));
  for (int k = 1; k <= n; ++k) frob.push_back(ring.powmod(frob.back(), ctx.q(), f));
  if (!(frob[static_cast<std::size_t>(n)] == ring.rem(x, f))) return false;
  for (int l : prime_divisors(n)) {
    const Poly<FieldCtx> g = ring.gcd(ring.sub(frob[static_cast<std::size_t>(n / l)], x), f);
    if (PolyRing<FieldCtx>::degree(g) != 0) return false;
  }
  return true;
}

void for_each_irreducible(const FieldCtx& ctx, int r, const std::function<bool(const Poly<FieldCtx>&)>& fn) {
  if (r < 1) raise(Errc::InvalidArgument, "degree must be >= 1");
  const std::uint64_t q = ctx.size();
  mpz_class total_z;
  mpz_ui_pow_ui(total_z.get_mpz_t(), q, static_cast<unsigned long>(r));
  if (mpz_sizeinbase(total_z.get_mpz_t(), 2) > 40)
    raise(Errc::TooLarge, "too many degree-" + std::to_string(r) + " candidates to scan");
  const std::uint64_t total = mpz_get_ui(total_z.get_mpz_t());
  std::vector<FieldElem> elems;
  elems.reserve(q);
  for (std::uint64_t i = 0; i < q; ++i) elems.push_back(ctx.element(i));
  Poly<FieldCtx> f(static_cast<std::size_t>(r) + 1, ctx.zero());
  f.back() = ctx.one();
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint64_t rest = t;
    for (int i = 0; i < r; ++i) {
      f[static_cast<std::size_t>(i)] = elems[rest % q];
      rest /= q;
    }
    if (is_irreducible(ctx, f) && !fn(f)) return;
  }
}

std::vector<Poly<FieldCtx>> irreducible_polys(const FieldCtx& ctx, int r) {
  std::vector<Poly<FieldCtx>> out;
  for_each_irreducible(ctx, r, [&](const Poly<FieldCtx>& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

Poly<FieldCtx> lift_prime_poly(const FieldCtx& prime_ctx, const std::vector<std::uint32_t>& c) {
  PolyRing<FieldCtx> ring(prime_ctx);
  Poly<FieldCtx> out;
  out.reserve(c.size());
  for (auto v : c) out.push_back(prime_ctx.from_int(v));
  return ring.trimmed(std::move(out));
}

std::vector<std::uint32_t> lower_prime_poly(const FieldCtx& prime_ctx, const Poly<FieldCtx>& f) {
  if (prime_ctx.r() != 1) raise(Errc::FieldMismatch, "expected a prime field");
  std::vector<std::uint32_t> out;
  out.reserve(f.size());
  for (const auto& c : f) out.push_back(c.coeffs[0]);
  return out;
}

std::string format_poly(const FieldCtx& ctx, const Poly<FieldCtx>& f, char var) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (ctx.is_zero(f[i])) continue;
    std::string c = ctx.format(f[i]);
    const bool compound = c.find('+') != std::string::npos;
    if (!first) os << '+';
    first = false;
    if (i == 0) {
      os << c;
      continue;
    }
    if (c != "1") os << (compound ? "(" + c + ")" : c);
    os << var;
    if (i > 1) os << '^' << i;
  }
  if (first) os << '0';
  return os.str();
}

// ---------------------------------------------------------------------------

FieldEmbedding::FieldEmbedding(const FieldCtx& from, const FieldCtx& to) : to_(to) {
  if (from.p() != to.p() || from.r() != to.r()) raise(Errc::FieldMismatch, "embedding needs fields of equal order");
  const std::vector<std::uint32_t>& m = from.modulus();
  PolyRing<FieldCtx> ring(to);
  Poly<FieldCtx> mp;
  for (auto c : m) mp.push_back(to.from_int(c));
  mp = ring.trimmed(mp);
  std::optional<FieldElem> root;
  for (FieldElem e : to.elements()) {
    if (to.is_zero(ring.eval(mp, e))) {
      root = e;
      break;
    }
  }
  if (!root) raise(Errc::FieldMismatch, "modulus has no root in target field");
  FieldElem cur = to.one();
  for (int i = 0; i < from.r(); ++i) {
    powers_.push_back(cur);
    cur = to.mul(cur, *root);
  }
  if (powers_.size() < 2) powers_.push_back(*root);
}

FieldElem FieldEmbedding::operator()(const FieldElem& a) const {
  FieldElem out = to_.zero();
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    if (a.coeffs[i]) out = to_.add(out, to_.mul(to_.from_int(a.coeffs[i]), powers_[i]));
  return out;
}

// ---------------------------------------------------------------------------

IndexAdder::IndexAdder(const FieldCtx& ctx) : p_(ctx.p()) {
  int per_chunk = 1;
  {
    std::uint64_t v = p_;
    while (v * p_ <= 256) {
      v *= p_;
      ++per_chunk;
    }
  }
  std::uint64_t scale = 1;
  for (int start = 0; start < ctx.r(); start += per_chunk) {
    const int width = std::min(per_chunk, ctx.r() - start);
    std::uint32_t radix = 1;
    for (int i = 0; i < width; ++i) radix *= p_;
    radix_.push_back(radix);
    scale_.push_back(scale);
    digits_.push_back(width);
    scale *= radix;
    std::vector<std::uint32_t> table;
    if (radix <= 4096) {
      table.resize(static_cast<std::size_t>(radix) * radix);
      for (std::uint32_t u = 0; u < radix; ++u)
        for (std::uint32_t v = 0; v < radix; ++v) {
          std::uint32_t a = u, b = v, out = 0, mul = 1;
          for (int i = 0; i < width; ++i) {
            out += ((a % p_ + b % p_) % p_) * mul;
            a /= p_;
            b /= p_;
            mul *= p_;
          }
          table[static_cast<std::size_t>(u) * radix + v] = out;
        }
    }
    table_.push_back(std::move(table));
  }
}

std::uint32_t IndexAdder::add_chunk(int j, std::uint32_t u, std::uint32_t v) const {
  const auto& t = table_[static_cast<std::size_t>(j)];
  const std::uint32_t radix = radix_[static_cast<std::size_t>(j)];
  if (!t.empty()) return t[static_cast<std::size_t>(u) * radix + v];
  // one digit per chunk when p is large
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(u) + v) % p_);
}

std::uint64_t IndexAdder::add(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t out = 0;
  for (int j = 0; j < chunks(); ++j) out += static_cast<std::uint64_t>(add_chunk(j, chunk_of(a, j), chunk_of(b, j))) * chunk_scale(j);
  return out;
}

}  // namespace perdyn
