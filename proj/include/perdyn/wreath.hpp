#pragma once

// Fixed-point proportions of iterated wreath products [G]^n acting on S^n,
// where G is a permutation group on S = {0, ..., d-1}.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace perdyn {

enum class Family { S, A, D, C, Custom };

Family parse_family(const std::string& name);
std::string family_name(Family f);

using Perm = std::vector<int>;

struct ActionSpec {
  Family family = Family::Custom;
  int d = 0;
  mpz_class group_order;
  std::map<int, mpz_class> fpc;  // j -> #elements with exactly j fixed points
};

// Elements of the built-in group on {0..d-1}. A_d and S_d are enumerated only
// for d <= 8 (UnsupportedDegree beyond); C_d and D_d (order 2d) for any d.
std::vector<Perm> group_elements(Family family, int d);

ActionSpec action_spec(Family family, int d);
ActionSpec action_spec_from_elements(const std::vector<Perm>& elems, Family family = Family::Custom);

mpz_class derangements(int m);

// |G|^{(d^n - 1)/(d - 1)}
mpz_class wreath_order(const ActionSpec& spec, int n);

constexpr std::uint64_t kDefaultExactBitCap = 1000000;

// Exact fix_n via the recursion over the fixed-point distribution. Throws
// ExactOverflow when log2|[G]^n| exceeds bit_cap.
mpq_class fix_n_exact(const ActionSpec& spec, int n, std::uint64_t bit_cap = kDefaultExactBitCap);
// Every step rounded outward; an upper bound for fix_n.
double fix_n_upper(const ActionSpec& spec, int n);
// All of fix_1 .. fix_n in one pass (upper-rounded).
std::vector<double> fix_upper_sequence(const ActionSpec& spec, int n);

// Brute force over all elements of [G]^n (TooLarge above 10^7 elements).
mpq_class fix_n_oracle(const std::vector<Perm>& group, int n);

// Published upper bounds for fix_n; OutOfHypothesis outside their range.
double juul_bound(Family family, int d, int n);
// Same bound as an exact rational, when it is one (not for A_4).
std::optional<mpq_class> juul_bound_exact(Family family, int d, int n);

}  // namespace perdyn
