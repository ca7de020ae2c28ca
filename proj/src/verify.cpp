#include "perdyn/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>

#include "perdyn/parse.hpp"

namespace perdyn {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

unsigned resolve_threads(const SweepOptions& opt) { return opt.threads ? opt.threads : default_threads(); }

std::string num(std::uint64_t v) { return std::to_string(v); }

Report hypothesis_failure(std::string check, std::vector<std::pair<std::string, std::string>> params, std::string why) {
  Report r;
  r.check = std::move(check);
  r.params = std::move(params);
  r.status = Status::OutOfHypothesis;
  r.rhs = std::numeric_limits<double>::quiet_NaN();
  r.note = std::move(why);
  return r;
}

double log_factorial(unsigned d) { return std::lgamma(static_cast<double>(d) + 1.0); }

// log(log Q - log 2) - log max(a, b), with log Q = r log q.
double unicritical_denominator(std::uint64_t q, int r, double a, double b) {
  const double lq = r * std::log(static_cast<double>(q));
  const double inner = lq - std::log(2.0);
  if (inner <= 0) raise(Errc::NonpositiveLogArgument, "log q^r - log 2 <= 0");
  const double m = std::max(a, b);
  if (m <= 0) raise(Errc::NonpositiveLogArgument, "max of logs <= 0");
  const double den = std::log(inner) - std::log(m);
  if (den <= 0) raise(Errc::NonpositiveLogArgument, "bound denominator " + std::to_string(den) + " <= 0");
  return den;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void check_work(double points, double params, const SweepOptions& opt, const std::string& what) {
  if (points * params > opt.work_cap)
    raise(Errc::TooLarge, what + ": " + std::to_string(points) + " points x " + std::to_string(params) +
                              " parameters exceeds the work cap");
}

}  // namespace

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::VacuousPass: return "vacuous-pass";
    case Status::OutOfHypothesis: return "out-of-hypothesis";
  }
  return "?";
}

Status judge(const mpq_class& lhs, double rhs) {
  if (std::isnan(rhs)) raise(Errc::InvalidArgument, "bound is NaN");
  if (std::isinf(rhs)) return rhs > 0 ? Status::VacuousPass : Status::Fail;
  // a few ulps of slack in the direction that can only turn a pass into a fail
  const double lo = rhs - std::abs(rhs) * 1e-12 - std::numeric_limits<double>::denorm_min();
  if (lhs > mpq_class(lo)) return Status::Fail;
  return rhs >= 1.0 ? Status::VacuousPass : Status::Pass;
}

std::string format_params(const Report& r) {
  std::string out;
  for (const auto& [k, v] : r.params) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

void write_csv_header(std::ostream& os) { os << "check,params,lhs_num,lhs_den,rhs,status,runtime_ms,seed\n"; }

void write_csv_row(std::ostream& os, const Report& r) {
  char rhs[64], rt[64];
  std::snprintf(rhs, sizeof rhs, "%.17g", r.rhs);
  std::snprintf(rt, sizeof rt, "%.3f", r.runtime_ms);
  os << csv_field(r.check) << ',' << csv_field(format_params(r)) << ',';
  if (r.lhs) os << r.lhs->get_num().get_str() << ',' << r.lhs->get_den().get_str();
  else os << ',';
  os << ',' << (std::isnan(r.rhs) ? std::string() : std::string(rhs)) << ',' << status_name(r.status) << ',' << rt << ',';
  if (r.seed) os << *r.seed;
  os << '\n';
}

// ---------------------------------------------------------------------------

FieldCtx tower_field(std::uint64_t q, int r) {
  std::uint64_t p = 0;
  int k = 0;
  if (!prime_power(q, &p, &k)) raise(Errc::NotPrime, std::to_string(q) + " is not a prime power");
  if (r < 1) raise(Errc::InvalidArgument, "extension degree must be >= 1");
  const int deg = k * r;
  FieldCtx ctx = deg == 1 ? prime_field(p) : extension_field(p, deg);
  return ctx.with_base(k);
}

std::vector<std::uint64_t> unicritical_periodic_counts(const FieldCtx& ctx, unsigned d,
                                                       const std::vector<std::uint64_t>& betas,
                                                       const SweepOptions& opt) {
  const UnicriticalSweep sweep(ctx, d);
  check_work(static_cast<double>(sweep.n_points()), static_cast<double>(betas.size()), opt, "unicritical sweep");
  const unsigned threads = resolve_threads(opt);
  std::vector<std::uint64_t> out(betas.size(), 0);
  std::vector<SuccTable> tables(threads);
  std::vector<PeelScratch> scratch(threads);
  parallel_for(betas.size(), threads, [&](std::size_t i, unsigned w) {
    sweep.table(betas[i], tables[w]);
    out[i] = periodic_count(tables[w], scratch[w]);
  });
  return out;
}

// ---------------------------------------------------------------------------

Report check_image_size(std::uint64_t q, const RationalMap& map, int n) {
  const auto t0 = Clock::now();
  const FieldCtx& ctx = map.field();
  Report rep;
  rep.check = "image-size";
  rep.params = {{"q", num(q)}, {"map", format_map(map)}, {"n", std::to_string(n)}};
  if (n < 1) raise(Errc::InvalidArgument, "n must be >= 1");
  if (ctx.q() != q) raise(Errc::FieldMismatch, "map is over " + ctx.describe() + ", not GF(" + num(q) + ")");
  if (!map.separable()) return hypothesis_failure(rep.check, rep.params, "inseparable map");
  const int d = map.degree();
  bool unicritical = map.is_polynomial() && d >= 2 && ctx.is_zero(ctx.sub(map.num().back(), ctx.one()));
  for (int i = 1; unicritical && i < d; ++i) unicritical = ctx.is_zero(map.num()[static_cast<std::size_t>(i)]);
  if (!unicritical) return hypothesis_failure(rep.check, rep.params, "no cyclic wreath model: map is not X^d + c");
  rep.params.insert(rep.params.begin() + 1, {"d", std::to_string(d)});
  if (q % static_cast<std::uint64_t>(d) != 1)
    return hypothesis_failure(rep.check, rep.params, "q is not 1 mod d");
  const ActionSpec spec = action_spec(Family::C, d);
  const mpz_class g = wreath_order(spec, n);
  mpz_class common;
  mpz_gcd(common.get_mpz_t(), mpz_class(static_cast<unsigned long>(ctx.p())).get_mpz_t(), g.get_mpz_t());
  if (common != 1) return hypothesis_failure(rep.check, rep.params, "wild: p divides the group order");

  const std::uint64_t image = image_size(map, ctx, n);
  const mpq_class fix = fix_n_exact(spec, n);
  const mpq_class qp1(static_cast<unsigned long>(q + 1));
  mpq_class l = mpq_class(static_cast<unsigned long>(image)) / fix - qp1;
  l = abs(l);
  // L < 7 n d |G| / sqrt(q)  <=>  L^2 q < (7 n d |G|)^2
  const mpz_class k = mpz_class(7 * n * d) * g;
  const bool holds = l * l * mpq_class(static_cast<unsigned long>(q)) < mpq_class(k * k);

  mpq_class resid = mpq_class(static_cast<unsigned long>(image)) / qp1 - fix;
  rep.lhs = abs(resid);
  rep.rhs = mpq_class(k * fix / qp1).get_d() / std::sqrt(static_cast<double>(q));
  rep.status = !holds ? Status::Fail : (rep.rhs >= 1.0 ? Status::VacuousPass : Status::Pass);
  rep.note = "image=" + num(image) + " fix=" + fix.get_str() + " |G|=" + g.get_str();
  rep.runtime_ms = ms_since(t0);
  return rep;
}

Report check_image_size(std::uint64_t q, unsigned d, const std::string& c, int n) {
  const FieldCtx ctx = field_of_order(q);
  const FieldElem cv = parse_field_elem(c, ctx);
  Poly<FieldCtx> f(d + 1, ctx.zero());
  f[0] = cv;
  f[d] = ctx.one();
  return check_image_size(q, RationalMap(ctx, std::move(f), Poly<FieldCtx>{ctx.one()}), n);
}

// ---------------------------------------------------------------------------

bool thm12_hypothesis(std::uint64_t q, int r, unsigned d, unsigned m) {
  if (d < 2 || m < 1 || q % d != 1) return false;
  if (static_cast<double>(r) <= 2.0 * m * d * d) return false;
  return r > 4.0 * d * log_factorial(d) / std::log(static_cast<double>(q));
}

double thm12_rhs(std::uint64_t q, int r, unsigned d, unsigned m) {
  const double lq = std::log(static_cast<double>(q));
  const double den = unicritical_denominator(q, r, 2.0 * m * lq, 4.0 * log_factorial(d));
  return 4.0 * std::log(static_cast<double>(d)) / ((d - 1.0) * den) + 7.0 * d / std::pow(static_cast<double>(q), r / 2.0);
}

Thm12Result check_thm12(std::uint64_t q, int r, unsigned d, unsigned m, const SweepOptions& opt) {
  const auto t0 = Clock::now();
  Thm12Result out;
  const std::vector<std::pair<std::string, std::string>> params{
      {"q", num(q)}, {"r", std::to_string(r)}, {"d", std::to_string(d)}, {"m", std::to_string(m)}};
  if (!prime_power(q)) raise(Errc::NotPrime, std::to_string(q) + " is not a prime power");
  if (!thm12_hypothesis(q, r, d, m)) {
    out.aggregate = hypothesis_failure("thm12", params, "needs q = 1 mod d and r > max(2md^2, 4d log_q d!)");
    return out;
  }
  const double rhs = thm12_rhs(q, r, d, m);
  const double qr = std::pow(static_cast<double>(q), r);
  check_work(qr + 1, opt.max_params ? std::min<double>(qr, static_cast<double>(opt.max_params)) : qr, opt, "thm12");
  const FieldCtx ctx = tower_field(q, r);
  const std::uint64_t size = ctx.size();

  std::vector<std::uint64_t> alphas;
  for (std::uint64_t i = 0; i < size; ++i) {
    if (opt.max_params && alphas.size() >= opt.max_params) break;
    if (generates(ctx, ctx.element(i))) alphas.push_back(i);
  }
  std::vector<std::uint64_t> betas;
  betas.reserve(alphas.size());
  for (auto a : alphas) betas.push_back(m == 1 ? a : ctx.index(ctx.pow(ctx.element(a), static_cast<std::uint64_t>(m))));
  const std::vector<std::uint64_t> counts = unicritical_periodic_counts(ctx, d, betas, opt);

  const unsigned long np = static_cast<unsigned long>(size + 1);
  mpq_class worst = 0;
  bool any_fail = false;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    Report row;
    row.check = "thm12";
    row.params = params;
    row.params.push_back({"alpha", num(alphas[i])});
    row.lhs = mpq_class(static_cast<unsigned long>(counts[i]), np);
    row.lhs->canonicalize();
    row.rhs = rhs;
    row.status = judge(*row.lhs, rhs);
    any_fail = any_fail || row.status == Status::Fail;
    worst = std::max(worst, *row.lhs);
    out.counts.push_back({alphas[i], counts[i]});
    out.rows.push_back(std::move(row));
  }
  Report& agg = out.aggregate;
  agg.check = "thm12";
  agg.params = params;
  agg.params.push_back({"alphas", num(alphas.size())});
  agg.lhs = worst;
  agg.rhs = rhs;
  agg.status = any_fail ? Status::Fail : judge(worst, rhs);
  agg.runtime_ms = ms_since(t0);
  agg.note = "max over " + num(alphas.size()) + " generators";
  if (opt.max_params && alphas.size() >= opt.max_params) agg.note += " (truncated)";
  for (auto& row : out.rows) row.runtime_ms = agg.runtime_ms / static_cast<double>(out.rows.size());
  return out;
}

// ---------------------------------------------------------------------------

std::string fiber_model_name(FiberModel m) { return m == FiberModel::Constant ? "constant" : "trichotomy"; }

mpz_class fiber_weight(const FieldCtx& ctx, const FieldElem& delta, FiberModel model) {
  const mpz_class& q = ctx.q();
  if (model == FiberModel::Constant) return q * q - q;
  const FieldElem t = ctx.sub(ctx.one(), ctx.mul(ctx.from_int(4), delta));
  if (ctx.is_zero(t)) return q * q;
  if (ctx.is_square(t)) return q * q + q;
  return q * q - q;
}

namespace {

mpq_class weighted_average(const FieldCtx& ctx, const std::vector<std::uint64_t>& counts, FiberModel model) {
  mpz_class total = 0, weight = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const mpz_class w = fiber_weight(ctx, ctx.element(i), model);
    total += w * static_cast<unsigned long>(counts[i]);
    weight += w;
  }
  mpq_class out(total, weight * (ctx.q() + 1));
  out.canonicalize();
  return out;
}

std::vector<std::uint64_t> all_indices(const FieldCtx& ctx) {
  std::vector<std::uint64_t> v(ctx.size());
  for (std::uint64_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

}  // namespace

CensusResult quadratic_census(const FieldCtx& ctx, const SweepOptions& opt) {
  if (ctx.p() == 2) raise(Errc::InvalidArgument, "census needs odd characteristic");
  const std::uint64_t q = ctx.size();
  if (q > 200) raise(Errc::TooLarge, "census enumerates all quadratics; field order above 200");
  CensusResult res;
  res.field_order = q;
  res.fiber_sizes.assign(q, 0);
  const FieldElem inv4 = ctx.inv(ctx.from_int(4));
  const FieldElem two = ctx.from_int(2);
  std::vector<FieldElem> elems;
  for (std::uint64_t i = 0; i < q; ++i) elems.push_back(ctx.element(i));

  SuccTable table(q + 1);
  PeelScratch scratch;
  mpz_class total = 0;
  for (std::uint64_t a = 1; a < q; ++a)
    for (std::uint64_t b = 0; b < q; ++b)
      for (std::uint64_t c = 0; c < q; ++c) {
        const FieldElem &A = elems[a], &B = elems[b], &C = elems[c];
        for (std::uint64_t x = 0; x < q; ++x) {
          const FieldElem& X = elems[x];
          table[x] = static_cast<std::uint32_t>(ctx.index(ctx.add(ctx.mul(ctx.add(ctx.mul(A, X), B), X), C)));
        }
        table[q] = static_cast<std::uint32_t>(q);
        total += static_cast<unsigned long>(periodic_count(table, scratch));
        ++res.quadratics;
        // conjugate to X^2 + delta, delta = (b^2 - 4ac - 2b)/4
        const FieldElem delta =
            ctx.mul(ctx.sub(ctx.sub(ctx.mul(B, B), ctx.mul(ctx.from_int(4), ctx.mul(A, C))), ctx.mul(two, B)), inv4);
        ++res.fiber_sizes[ctx.index(delta)];
      }
  res.direct_average = mpq_class(total, mpz_class(static_cast<unsigned long>(res.quadratics)) * (q + 1));
  res.direct_average.canonicalize();

  const std::vector<std::uint64_t> counts = unicritical_periodic_counts(ctx, 2, all_indices(ctx), opt);
  res.constant_average = weighted_average(ctx, counts, FiberModel::Constant);
  res.trichotomy_average = weighted_average(ctx, counts, FiberModel::Trichotomy);
  for (FiberModel m : {FiberModel::Constant, FiberModel::Trichotomy}) {
    bool ok = true;
    for (std::uint64_t i = 0; ok && i < q; ++i)
      ok = fiber_weight(ctx, elems[i], m) == static_cast<unsigned long>(res.fiber_sizes[i]);
    if (ok) res.matching_models.push_back(m);
  }
  return res;
}

FiberModel censused_fiber_model() {
  static std::once_flag once;
  static FiberModel model = FiberModel::Constant;
  std::call_once(once, [] {
    std::vector<FiberModel> agreed;
    bool first = true;
    for (std::uint64_t order : {9u, 25u}) {
      const CensusResult c = quadratic_census(field_of_order(order), SweepOptions{1, 0, 68719476736.0});
      if (first) agreed = c.matching_models;
      else
        std::erase_if(agreed, [&](FiberModel m) {
          return std::find(c.matching_models.begin(), c.matching_models.end(), m) == c.matching_models.end();
        });
      first = false;
    }
    if (agreed.size() != 1) raise(Errc::InvalidArgument, "quadratic census did not single out one fiber model");
    model = agreed[0];
  });
  return model;
}

mpq_class quadratic_average(const FieldCtx& ctx, FiberModel model, const SweepOptions& opt) {
  if (ctx.p() == 2) raise(Errc::InvalidArgument, "quadratic reduction needs odd characteristic");
  return weighted_average(ctx, unicritical_periodic_counts(ctx, 2, all_indices(ctx), opt), model);
}

double thm13_rhs(std::uint64_t q, int r) {
  const double lq = std::log(static_cast<double>(q));
  const double den = unicritical_denominator(q, r, 2.0 * lq, std::log(16.0));
  const double qr = std::pow(static_cast<double>(q), r);
  return (qr + 1) / (qr - 1) * (std::log(16.0) / den + 16.0 / std::sqrt(qr));
}

Report check_thm13(std::uint64_t q, int r, const SweepOptions& opt) {
  const auto t0 = Clock::now();
  const std::vector<std::pair<std::string, std::string>> params{{"q", num(q)}, {"r", std::to_string(r)}};
  if (!prime_power(q)) raise(Errc::NotPrime, std::to_string(q) + " is not a prime power");
  if (q % 2 == 0) return hypothesis_failure("thm13", params, "q is even");
  if (r <= 8) return hypothesis_failure("thm13", params, "needs r > 8");
  const double qr = std::pow(static_cast<double>(q), r);
  check_work(qr + 1, qr, opt, "thm13");
  Report rep;
  rep.check = "thm13";
  rep.params = params;
  rep.rhs = thm13_rhs(q, r);
  const FiberModel model = censused_fiber_model();
  rep.lhs = quadratic_average(tower_field(q, r), model, opt);
  rep.status = judge(*rep.lhs, rep.rhs);
  rep.note = "fiber model " + fiber_model_name(model);
  rep.runtime_ms = ms_since(t0);
  return rep;
}

double cor11_rhs(std::uint64_t p, int r) {
  const double ll = std::log(r * std::log(static_cast<double>(p)));
  if (ll <= 0) raise(Errc::NonpositiveLogArgument, "log log p^r <= 0");
  return 22.0 / ll;
}

Report check_cor11(std::uint64_t p, int r, const SweepOptions& opt) {
  const auto t0 = Clock::now();
  const std::vector<std::pair<std::string, std::string>> params{{"p", num(p)}, {"r", std::to_string(r)}};
  if (!is_prime(p) || p == 2) return hypothesis_failure("cor11", params, "p must be an odd prime");
  if (r <= 6.0 * std::log(static_cast<double>(p))) return hypothesis_failure("cor11", params, "needs r > 6 log p");
  const double qr = std::pow(static_cast<double>(p), r);
  check_work(qr + 1, qr, opt, "cor11");
  Report rep;
  rep.check = "cor11";
  rep.params = params;
  rep.rhs = cor11_rhs(p, r);
  const FiberModel model = censused_fiber_model();
  rep.lhs = quadratic_average(tower_field(p, r), model, opt);
  rep.status = judge(*rep.lhs, rep.rhs);
  rep.note = "fiber model " + fiber_model_name(model);
  rep.runtime_ms = ms_since(t0);
  return rep;
}

double thm64_rhs(std::uint64_t q, int r, unsigned d, unsigned m) {
  mpz_class qr, g;
  mpz_ui_pow_ui(qr.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(r));
  const mpz_class mm(static_cast<unsigned long>(m));
  mpz_class qm1 = qr - 1;
  mpz_gcd(g.get_mpz_t(), qm1.get_mpz_t(), mm.get_mpz_t());
  const double gd = g.get_d();
  const double lq = std::log(static_cast<double>(q));
  const double den = unicritical_denominator(q, r, 2.0 * m * lq, 4.0 * log_factorial(d));
  return 4.0 * std::log(static_cast<double>(d)) * gd / ((d - 1.0) * den) +
         (7.0 * d + 2.0) * gd / std::pow(static_cast<double>(q), r / 2.0);
}

Report check_thm64(std::uint64_t q, int r, unsigned d, unsigned m, const SweepOptions& opt) {
  const auto t0 = Clock::now();
  const std::vector<std::pair<std::string, std::string>> params{
      {"q", num(q)}, {"r", std::to_string(r)}, {"d", std::to_string(d)}, {"m", std::to_string(m)}};
  if (!prime_power(q)) raise(Errc::NotPrime, std::to_string(q) + " is not a prime power");
  if (!thm12_hypothesis(q, r, d, m))
    return hypothesis_failure("thm64", params, "needs q = 1 mod d and r > max(2md^2, 4d log_q d!)");
  const double qr = std::pow(static_cast<double>(q), r);
  check_work(qr + 1, qr, opt, "thm64");
  Report rep;
  rep.check = "thm64";
  rep.params = params;
  rep.rhs = thm64_rhs(q, r, d, m);
  const FieldCtx ctx = tower_field(q, r);
  std::vector<std::uint64_t> betas;
  for (std::uint64_t i = 0; i < ctx.size(); ++i)
    betas.push_back(ctx.index(ctx.pow(ctx.element(i), static_cast<std::uint64_t>(m))));
  std::sort(betas.begin(), betas.end());
  betas.erase(std::unique(betas.begin(), betas.end()), betas.end());
  const auto counts = unicritical_periodic_counts(ctx, d, betas, opt);
  mpz_class total = 0;
  for (auto c : counts) total += static_cast<unsigned long>(c);
  rep.lhs = mpq_class(total, mpz_class(static_cast<unsigned long>(betas.size())) * (ctx.q() + 1));
  rep.lhs->canonicalize();
  rep.status = judge(*rep.lhs, rep.rhs);
  rep.note = num(betas.size()) + " distinct m-th powers";
  rep.runtime_ms = ms_since(t0);
  return rep;
}

double thm63_bound(Family family, int d, double eps, const mpz_class& norm) {
  if (family == Family::Custom) raise(Errc::InvalidArgument, "bound defined for S, A, D, C only");
  if (d < 2) raise(Errc::InvalidArgument, "degree must be >= 2");
  const double ln = log_of(norm);
  if (norm <= 0 || ln <= 1.0) raise(Errc::OutOfDomain, "log log N(v) needs N(v) > e");
  const double numer = 4.0 * std::log(static_cast<double>(d)) + (family == Family::A && d == 4 ? 1.0 : 0.0);
  return numer / std::log(ln) + 7.0 * d * std::exp(-(1.5 - eps) * ln);
}

// ---------------------------------------------------------------------------

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

mpq_class expected_cyclic(std::uint64_t n) {
  if (n == 0) raise(Errc::InvalidArgument, "N must be >= 1");
  mpq_class term = 1, sum = 0;
  const mpq_class nn(static_cast<unsigned long>(n));
  for (std::uint64_t k = 1; k <= n; ++k) {
    term *= mpq_class(static_cast<unsigned long>(n - k + 1)) / nn;
    sum += term;
  }
  sum.canonicalize();
  return sum;
}

mpq_class enumerated_cyclic_mean(std::uint64_t n) {
  if (n == 0) raise(Errc::InvalidArgument, "N must be >= 1");
  if (n > 7) raise(Errc::TooLarge, "enumeration of N^N maps limited to N <= 7");
  SuccTable t(n, 0);
  PeelScratch scratch;
  mpz_class total = 0, count = 0;
  while (true) {
    total += static_cast<unsigned long>(periodic_count(t, scratch));
    ++count;
    std::size_t i = 0;
    while (i < n && ++t[i] == n) t[i++] = 0;
    if (i == n) break;
  }
  mpq_class out(total, count);
  out.canonicalize();
  return out;
}

Report random_map_baseline(std::uint64_t n, std::uint64_t trials, std::uint64_t seed) {
  const auto t0 = Clock::now();
  if (n == 0 || trials == 0) raise(Errc::InvalidArgument, "need N >= 1 and trials >= 1");
  if (n > (1ULL << 31)) raise(Errc::TooLarge, "N above 2^31");
  std::uint64_t counter = 0;
  // Lemire's nearly divisionless reduction to [0, n)
  auto draw = [&]() -> std::uint32_t {
    unsigned __int128 m = static_cast<unsigned __int128>(splitmix64_at(seed, counter++)) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t thresh = (0 - n) % n;
      while (low < thresh) {
        m = static_cast<unsigned __int128>(splitmix64_at(seed, counter++)) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 64);
  };
  SuccTable t(n);
  PeelScratch scratch;
  mpz_class sum = 0, sumsq = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    for (auto& v : t) v = draw();
    const mpz_class c(static_cast<unsigned long>(periodic_count(t, scratch)));
    sum += c;
    sumsq += c * c;
  }
  const mpq_class nn(static_cast<unsigned long>(n));
  const mpq_class tt(static_cast<unsigned long>(trials));
  const mpq_class mean = mpq_class(sum) / (nn * tt);
  const mpq_class exact = expected_cyclic(n) / nn;
  double se = std::numeric_limits<double>::infinity();
  if (trials > 1) {
    const mpq_class var = (mpq_class(sumsq) - mpq_class(sum * sum) / tt) / (tt - 1) / (nn * nn);
    se = std::sqrt(var.get_d() / static_cast<double>(trials));
  }
  Report rep;
  rep.check = "baseline";
  rep.params = {{"points", num(n)}, {"trials", num(trials)}};
  rep.seed = seed;
  rep.lhs = abs(mean - exact);
  rep.lhs->canonicalize();
  rep.rhs = 4.0 * se;
  rep.status = sgn(*rep.lhs) == 0 ? Status::Pass : judge(*rep.lhs, rep.rhs);
  if (rep.status == Status::VacuousPass && !std::isinf(rep.rhs)) rep.status = Status::Pass;
  rep.note = "mean=" + std::to_string(mean.get_d()) + " exact=" + std::to_string(exact.get_d()) + " se=" + std::to_string(se);
  if (n <= 7) rep.note += enumerated_cyclic_mean(n) == expected_cyclic(n) ? " enumeration=agrees" : " enumeration=DIFFERS";
  rep.runtime_ms = ms_since(t0);
  return rep;
}

}  // namespace perdyn
