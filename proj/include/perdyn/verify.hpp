#pragma once

// Bound checkers and sweeps producing pass / fail / vacuous-pass reports.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "perdyn/family.hpp"
#include "perdyn/ffield.hpp"
#include "perdyn/height.hpp"
#include "perdyn/padyn.hpp"
#include "perdyn/wreath.hpp"

namespace perdyn {

enum class Status { Pass, Fail, VacuousPass, OutOfHypothesis };

std::string status_name(Status s);

struct Report {
  std::string check;
  std::vector<std::pair<std::string, std::string>> params;
  std::optional<mpq_class> lhs;
  double rhs = 0.0;
  Status status = Status::OutOfHypothesis;
  double runtime_ms = 0.0;
  std::optional<std::uint64_t> seed;
  std::string note;
};

// lhs against a floating bound: fail unless lhs stays below rhs after rhs is
// nudged down past its rounding error; vacuous when rhs >= 1.
Status judge(const mpq_class& lhs, double rhs);

void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const Report& r);
std::string format_params(const Report& r);

struct SweepOptions {
  unsigned threads = 0;           // 0 = hardware concurrency
  std::uint64_t max_params = 0;   // 0 = no limit (thm12: generators checked)
  double work_cap = 68719476736.0;  // points x parameters (2^36)
};

// Periodic counts of X^d + beta for each beta (element indices), in order.
std::vector<std::uint64_t> unicritical_periodic_counts(const FieldCtx& ctx, unsigned d,
                                                       const std::vector<std::uint64_t>& betas,
                                                       const SweepOptions& opt = {});

// F_{q^r} with the base field GF(q) recorded, for q a prime power.
FieldCtx tower_field(std::uint64_t q, int r);

// ---------------------------------------------------------------------------

// X^d + c over GF(q) against the image-size error term with G = C_d.
Report check_image_size(std::uint64_t q, const RationalMap& map, int n);
Report check_image_size(std::uint64_t q, unsigned d, const std::string& c, int n);

// q = 1 mod d and r > max(2md^2, 4d log_q d!).
bool thm12_hypothesis(std::uint64_t q, int r, unsigned d, unsigned m);
double thm12_rhs(std::uint64_t q, int r, unsigned d, unsigned m);

struct Thm12Result {
  std::vector<Report> rows;  // one per generator, then the aggregate
  Report aggregate;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> counts;  // (alpha index, periodic count)
};
Thm12Result check_thm12(std::uint64_t q, int r, unsigned d, unsigned m, const SweepOptions& opt = {});

enum class FiberModel { Constant, Trichotomy };
std::string fiber_model_name(FiberModel m);

// Fiber sizes of the reduction to X^2 + delta, by model.
mpz_class fiber_weight(const FieldCtx& ctx, const FieldElem& delta, FiberModel model);

struct CensusResult {
  std::uint64_t field_order = 0;
  std::uint64_t quadratics = 0;
  mpq_class direct_average;                  // over every degree-2 polynomial
  std::vector<std::uint64_t> fiber_sizes;    // observed, by delta index
  std::vector<FiberModel> matching_models;   // models agreeing with observed fibers
  mpq_class constant_average;
  mpq_class trichotomy_average;
};
CensusResult quadratic_census(const FieldCtx& ctx, const SweepOptions& opt = {});

// Weighted unicritical average of periodic proportions over all quadratics.
mpq_class quadratic_average(const FieldCtx& ctx, FiberModel model, const SweepOptions& opt = {});
// Model decided by the censuses at orders 9 and 25.
FiberModel censused_fiber_model();

double thm13_rhs(std::uint64_t q, int r);
Report check_thm13(std::uint64_t q, int r, const SweepOptions& opt = {});
double cor11_rhs(std::uint64_t p, int r);
Report check_cor11(std::uint64_t p, int r, const SweepOptions& opt = {});
double thm64_rhs(std::uint64_t q, int r, unsigned d, unsigned m);
Report check_thm64(std::uint64_t q, int r, unsigned d, unsigned m, const SweepOptions& opt = {});

// max(N1, c^{2d^2}, (d!)^{4d}), rounded up to an integer.
template <class K>
mpz_class porism_threshold(const K& k, const Poly<K>& f, const Poly<K>& g,
                           const std::vector<P1Point<typename K::Elem>>& crit, const mpz_class& n1) {
  const int d = std::max(PolyRing<K>::degree(f), PolyRing<K>::degree(g));
  const mpq_class c = c_const(k, f, g, crit);
  mpq_class cp;
  mpz_pow_ui(cp.get_num_mpz_t(), c.get_num_mpz_t(), static_cast<unsigned long>(2 * d * d));
  mpz_pow_ui(cp.get_den_mpz_t(), c.get_den_mpz_t(), static_cast<unsigned long>(2 * d * d));
  mpz_class cz;
  mpz_cdiv_q(cz.get_mpz_t(), cp.get_num_mpz_t(), cp.get_den_mpz_t());
  mpz_class fact, fz;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(d));
  mpz_pow_ui(fz.get_mpz_t(), fact.get_mpz_t(), static_cast<unsigned long>(4 * d));
  return std::max({n1, cz, fz});
}

// Periodic-proportion bound at a place of norm N for the built-in families.
double thm63_bound(Family family, int d, double eps, const mpz_class& norm);

// ---------------------------------------------------------------------------
// Uniformly random self-maps of an N-set.

// Counter-based generator: output i of stream `seed`.
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter);

// E[#cyclic points] = sum_{k=1}^N N!/((N-k)! N^k).
mpq_class expected_cyclic(std::uint64_t n);
// The same mean by enumerating all N^N maps (N <= 7).
mpq_class enumerated_cyclic_mean(std::uint64_t n);

Report random_map_baseline(std::uint64_t n, std::uint64_t trials, std::uint64_t seed);

}  // namespace perdyn
