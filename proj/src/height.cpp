#include "perdyn/height.hpp"

#include <cmath>

namespace perdyn {

namespace {

mpz_class pow_z(const mpz_class& base, unsigned long e) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

// N^{-v} as an exact rational.
mpq_class inverse_power(const mpz_class& norm, int v) {
  if (v >= 0) return mpq_class(mpz_class(1), pow_z(norm, static_cast<unsigned long>(v)));
  return mpq_class(pow_z(norm, static_cast<unsigned long>(-v)));
}

int ord_poly(const PolyRing<FieldCtx>& ring, Poly<FieldCtx> f, const Poly<FieldCtx>& pi) {
  int m = 0;
  while (!f.empty()) {
    auto [q, r] = ring.divmod(f, pi);
    if (!r.empty()) break;
    f = std::move(q);
    ++m;
  }
  return m;
}

long double logl_of(const mpz_class& x) {
  long e = 0;
  const double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log(static_cast<long double>(m)) + static_cast<long double>(e) * std::log(2.0L);
}

long double logl_of(const mpq_class& x) { return logl_of(x.get_num()) - logl_of(x.get_den()); }

}  // namespace

double log_of(const mpz_class& x) {
  if (x <= 0) raise(Errc::NonpositiveLogArgument, "log of " + x.get_str());
  long e = 0;
  const double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log(m) + static_cast<double>(e) * std::log(2.0);
}

double log_of(const mpq_class& x) {
  if (x <= 0) raise(Errc::NonpositiveLogArgument, "log of " + x.get_str());
  return log_of(x.get_num()) - log_of(x.get_den());
}

std::string format_place(const FieldCtx& base, const Place& v) {
  switch (v.kind) {
    case Place::Kind::Archimedean: return "inf";
    case Place::Kind::Degree: return "deg";
    case Place::Kind::Finite: return v.pi.empty() ? v.prime.get_str() : format_poly(base, v.pi, 's');
  }
  return "?";
}

std::string format_place(const Place& v) {
  if (v.kind == Place::Kind::Finite && v.pi.empty()) return v.prime.get_str();
  if (v.kind == Place::Kind::Archimedean) return "inf";
  if (v.kind == Place::Kind::Degree) return "deg";
  return "pi(norm " + v.norm.get_str() + ")";
}

// ---------------------------------------------------------------------------

std::vector<std::pair<mpz_class, int>> factor_integer(mpz_class n) {
  n = abs(n);
  std::vector<std::pair<mpz_class, int>> out;
  if (n <= 1) return out;
  for (unsigned long d = 2; d <= 1000000UL && mpz_class(d) * d <= n; ++d) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      int e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
        ++e;
      }
      out.emplace_back(mpz_class(d), e);
    }
  }
  if (n > 1) {
    if (mpz_class(1000000) * 1000000 < n && mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
      raise(Errc::TooLarge, "cannot factor " + n.get_str() + " by trial division");
    out.emplace_back(n, 1);
  }
  return out;
}

std::vector<std::pair<Poly<FieldCtx>, int>> factor_poly(const FieldCtx& base, Poly<FieldCtx> f) {
  PolyRing<FieldCtx> ring(base);
  f = ring.monic(ring.trimmed(std::move(f)));
  std::vector<std::pair<Poly<FieldCtx>, int>> out;
  for (int k = 1; 2 * k <= PolyRing<FieldCtx>::degree(f); ++k) {
    for_each_irreducible(base, k, [&](const Poly<FieldCtx>& pi) {
      const int e = ord_poly(ring, f, pi);
      if (e > 0) {
        for (int i = 0; i < e; ++i) f = ring.quo(f, pi);
        out.emplace_back(pi, e);
      }
      return 2 * k <= PolyRing<FieldCtx>::degree(f);
    });
  }
  if (PolyRing<FieldCtx>::degree(f) >= 1) out.emplace_back(f, 1);
  return out;
}

// ---------------------------------------------------------------------------

Place infinite_place(const Rationals&) { return Place::archimedean(); }

Place infinite_place(const FunctionField& k) { return {Place::Kind::Degree, 0, {}, k.q()}; }

Place finite_place(const Rationals&, const mpz_class& p) { return {Place::Kind::Finite, p, {}, p}; }

Place finite_place(const FunctionField& k, const Poly<FieldCtx>& pi) {
  const PolyRing<FieldCtx>& ring = k.ring();
  Poly<FieldCtx> m = ring.monic(ring.trimmed(pi));
  const int deg = PolyRing<FieldCtx>::degree(m);
  if (deg < 1) raise(Errc::InvalidArgument, "a place needs a nonconstant polynomial");
  return {Place::Kind::Finite, 0, std::move(m), pow_z(k.q(), static_cast<unsigned long>(deg))};
}

std::vector<Place> support(const Rationals& k, const mpq_class& x) {
  std::vector<Place> out;
  if (sgn(x) == 0) return out;
  for (const auto& [p, e] : factor_integer(x.get_num())) out.push_back(finite_place(k, p));
  for (const auto& [p, e] : factor_integer(x.get_den())) out.push_back(finite_place(k, p));
  std::sort(out.begin(), out.end(), [](const Place& a, const Place& b) { return a.prime < b.prime; });
  return out;
}

std::vector<Place> support(const FunctionField& k, const RatFunc& x) {
  std::vector<Place> out;
  if (k.is_zero(x)) return out;
  for (const auto& [pi, e] : factor_poly(k.base(), x.num)) out.push_back(finite_place(k, pi));
  for (const auto& [pi, e] : factor_poly(k.base(), x.den)) out.push_back(finite_place(k, pi));
  const FieldCtx& base = k.base();
  auto key = [&](const Place& v) {
    std::vector<std::uint64_t> kk{v.pi.size()};
    for (std::size_t i = v.pi.size(); i-- > 0;) kk.push_back(base.index(v.pi[i]));
    return kk;
  };
  std::sort(out.begin(), out.end(), [&](const Place& a, const Place& b) { return key(a) < key(b); });
  return out;
}

int valuation(const Rationals&, const Place& v, const mpq_class& x) {
  if (v.kind != Place::Kind::Finite) raise(Errc::InvalidArgument, "no discrete valuation at the archimedean place");
  if (sgn(x) == 0) raise(Errc::ZeroElement, "valuation of zero");
  auto ord = [&](mpz_class n) {
    int e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), v.prime.get_mpz_t())) {
      n /= v.prime;
      ++e;
    }
    return e;
  };
  return ord(x.get_num()) - ord(x.get_den());
}

int valuation(const FunctionField& k, const Place& v, const RatFunc& x) {
  if (k.is_zero(x)) raise(Errc::ZeroElement, "valuation of zero");
  if (v.kind == Place::Kind::Degree) return PolyRing<FieldCtx>::degree(x.den) - PolyRing<FieldCtx>::degree(x.num);
  if (v.kind != Place::Kind::Finite) raise(Errc::InvalidArgument, "F_q(s) has no archimedean place");
  return ord_poly(k.ring(), x.num, v.pi) - ord_poly(k.ring(), x.den, v.pi);
}

mpq_class local_norm(const Rationals& k, const Place& v, const mpq_class& x) {
  if (sgn(x) == 0) return 0;
  if (v.kind == Place::Kind::Archimedean) return abs(x);
  return inverse_power(v.norm, valuation(k, v, x));
}

mpq_class local_norm(const FunctionField& k, const Place& v, const RatFunc& x) {
  if (k.is_zero(x)) return 0;
  return inverse_power(v.norm, valuation(k, v, x));
}

mpq_class height_elem(const Rationals&, const mpq_class& x) {
  return mpq_class(std::max(mpz_class(abs(x.get_num())), mpz_class(x.get_den())));
}

mpq_class height_elem(const FunctionField& k, const RatFunc& x) {
  const int e = std::max(PolyRing<FieldCtx>::degree(x.num), PolyRing<FieldCtx>::degree(x.den));
  return mpq_class(pow_z(k.q(), static_cast<unsigned long>(std::max(e, 0))));
}

// ---------------------------------------------------------------------------

long long n_eps_value(int ar, const mpq_class& c, int d, double eps, const mpz_class& norm, double* raw) {
  if (d < 2) raise(Errc::InvalidArgument, "iterate depth needs degree >= 2");
  if (!(eps > 0)) raise(Errc::InvalidArgument, "epsilon must be positive");
  mpz_class two_ar;
  mpz_ui_pow_ui(two_ar.get_mpz_t(), 2, static_cast<unsigned long>(ar));
  if (norm <= two_ar)
    raise(Errc::OutOfDomain, "N(v) = " + norm.get_str() + " <= 2^" + std::to_string(ar));
  const double inner = log_of(norm) - ar * std::log(2.0);
  if (inner <= 1.0)
    raise(Errc::NonpositiveLogArgument,
          "log N(v) - ar log 2 = " + std::to_string(inner) + " <= 1 at N(v) = " + norm.get_str());
  mpz_class dfact;
  mpz_fac_ui(dfact.get_mpz_t(), static_cast<unsigned long>(d));
  const double m = std::max(2.0 * log_of(c), 4.0 * log_of(dfact) / eps);
  double val = (std::log(inner) - std::log(m)) / (2.0 * std::log(static_cast<double>(d)));
  if (std::fabs(val - std::round(val)) < 1e-9) {
    const long double inner_l = logl_of(norm) - ar * std::log(2.0L);
    const long double m_l = std::max(2.0L * logl_of(c), 4.0L * logl_of(dfact) / static_cast<long double>(eps));
    const long double v_l = (std::log(inner_l) - std::log(m_l)) / (2.0L * std::log(static_cast<long double>(d)));
    if (raw) *raw = static_cast<double>(v_l);
    return static_cast<long long>(std::floor(v_l));
  }
  if (raw) *raw = val;
  return static_cast<long long>(std::floor(val));
}

}  // namespace perdyn
