#include "perdyn/wreath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "perdyn/error.hpp"

namespace perdyn {

Family parse_family(const std::string& name) {
  if (name == "S") return Family::S;
  if (name == "A") return Family::A;
  if (name == "D") return Family::D;
  if (name == "C" || name == "Z") return Family::C;
  raise(Errc::InvalidArgument, "unknown group family '" + name + "' (expected S, A, D or C)");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::S: return "S";
    case Family::A: return "A";
    case Family::D: return "D";
    case Family::C: return "C";
    case Family::Custom: return "custom";
  }
  return "?";
}

namespace {

constexpr int kEnumCap = 8;

bool is_even(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  std::size_t transpositions = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t v = i; !seen[v]; v = static_cast<std::size_t>(p[v])) {
      seen[v] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

int fixed_points(const Perm& p) {
  int c = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] == static_cast<int>(i)) ++c;
  return c;
}

mpz_class binomial(int n, int k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

mpz_class factorial(int n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }
double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }

double upper_of(const mpq_class& v) {
  // get_d truncates toward zero, so one step up covers the true value.
  return up(v.get_d());
}

}  // namespace

std::vector<Perm> group_elements(Family family, int d) {
  if (d < 1) raise(Errc::InvalidArgument, "degree must be >= 1");
  std::vector<Perm> out;
  Perm id(static_cast<std::size_t>(d));
  std::iota(id.begin(), id.end(), 0);
  switch (family) {
    case Family::S:
    case Family::A: {
      if (d > kEnumCap)
        raise(Errc::UnsupportedDegree, family_name(family) + "_" + std::to_string(d) + " is beyond the enumeration cap");
      Perm p = id;
      do {
        if (family == Family::S || is_even(p)) out.push_back(p);
      } while (std::next_permutation(p.begin(), p.end()));
      break;
    }
    case Family::C:
      for (int k = 0; k < d; ++k) {
        Perm p(static_cast<std::size_t>(d));
        for (int x = 0; x < d; ++x) p[static_cast<std::size_t>(x)] = (x + k) % d;
        out.push_back(p);
      }
      break;
    case Family::D:
      for (int k = 0; k < d; ++k) {
        Perm rot(static_cast<std::size_t>(d)), ref(static_cast<std::size_t>(d));
        for (int x = 0; x < d; ++x) {
          rot[static_cast<std::size_t>(x)] = (x + k) % d;
          ref[static_cast<std::size_t>(x)] = ((k - x) % d + d) % d;
        }
        out.push_back(rot);
        out.push_back(ref);
      }
      break;
    case Family::Custom:
      raise(Errc::InvalidArgument, "custom groups have no built-in element list");
  }
  return out;
}

mpz_class derangements(int m) {
  mpz_class a = 1, b = 0;  // D_0, D_1
  if (m == 0) return a;
  for (int k = 2; k <= m; ++k) {
    mpz_class c = (k - 1) * (a + b);
    a = b;
    b = c;
  }
  return b;
}

ActionSpec action_spec_from_elements(const std::vector<Perm>& elems, Family family) {
  if (elems.empty()) raise(Errc::InvalidArgument, "empty group");
  ActionSpec s;
  s.family = family;
  s.d = static_cast<int>(elems.front().size());
  s.group_order = static_cast<unsigned long>(elems.size());
  for (const auto& p : elems) s.fpc[fixed_points(p)] += 1;
  return s;
}

ActionSpec action_spec(Family family, int d) {
  if (d < 2) raise(Errc::InvalidArgument, "degree must be >= 2");
  if (family == Family::D && d < 3) raise(Errc::OutOfHypothesis, "dihedral action needs d >= 3");
  if (family == Family::S && d > kEnumCap) {
    ActionSpec s;
    s.family = family;
    s.d = d;
    s.group_order = factorial(d);
    for (int j = 0; j <= d; ++j) {
      mpz_class c = binomial(d, j) * derangements(d - j);
      if (c != 0) s.fpc[j] = c;
    }
    return s;
  }
  if (family == Family::C) {
    ActionSpec s;
    s.family = family;
    s.d = d;
    s.group_order = d;
    s.fpc[d] = 1;
    s.fpc[0] = d - 1;
    return s;
  }
  return action_spec_from_elements(group_elements(family, d), family);
}

mpz_class wreath_order(const ActionSpec& spec, int n) {
  if (n < 1) raise(Errc::InvalidArgument, "n must be >= 1");
  mpz_class dn;
  mpz_ui_pow_ui(dn.get_mpz_t(), static_cast<unsigned long>(spec.d), static_cast<unsigned long>(n));
  const mpz_class e = (dn - 1) / (spec.d - 1);
  if (!e.fits_ulong_p()) raise(Errc::TooLarge, "wreath order exponent too large");
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), spec.group_order.get_mpz_t(), e.get_ui());
  return out;
}

mpq_class fix_n_exact(const ActionSpec& spec, int n, std::uint64_t bit_cap) {
  if (n < 1) raise(Errc::InvalidArgument, "n must be >= 1");
  const double predicted =
      std::log2(spec.group_order.get_d()) * (std::pow(static_cast<double>(spec.d), n) - 1) / (spec.d - 1);
  if (predicted > static_cast<double>(bit_cap))
    raise(Errc::ExactOverflow, "fix_" + std::to_string(n) + " needs about " + std::to_string(static_cast<long long>(predicted)) +
                                   " bits (cap " + std::to_string(bit_cap) + ")");
  mpq_class f = 1;
  for (int k = 1; k <= n; ++k) {
    const mpq_class miss = 1 - f;
    mpq_class acc = 0;
    for (const auto& [j, count] : spec.fpc) {
      mpq_class pw;
      mpz_pow_ui(pw.get_num_mpz_t(), miss.get_num_mpz_t(), static_cast<unsigned long>(j));
      mpz_pow_ui(pw.get_den_mpz_t(), miss.get_den_mpz_t(), static_cast<unsigned long>(j));
      acc += mpq_class(count) * (1 - pw);
    }
    f = acc / mpq_class(spec.group_order);
    f.canonicalize();
  }
  return f;
}

std::vector<double> fix_upper_sequence(const ActionSpec& spec, int n) {
  std::vector<std::pair<int, double>> weights;
  for (const auto& [j, count] : spec.fpc) {
    mpq_class w(count, spec.group_order);
    w.canonicalize();
    weights.emplace_back(j, upper_of(w));
  }
  std::vector<double> out;
  double f = 1.0;
  for (int k = 1; k <= n; ++k) {
    const double miss = std::max(0.0, down(1.0 - f));  // lower bound on 1 - F
    double acc = 0.0;
    for (const auto& [j, w] : weights) {
      if (j == 0) continue;
      double pw = 1.0;  // lower bound on miss^j
      for (int i = 0; i < j; ++i) pw = std::max(0.0, down(pw * miss));
      const double hit = std::min(1.0, up(1.0 - pw));
      acc = up(acc + up(w * hit));
    }
    f = std::min(1.0, acc);
    out.push_back(f);
  }
  return out;
}

double fix_n_upper(const ActionSpec& spec, int n) {
  if (n < 1) raise(Errc::InvalidArgument, "n must be >= 1");
  return fix_upper_sequence(spec, n).back();
}

mpq_class fix_n_oracle(const std::vector<Perm>& group, int n) {
  if (n < 1) raise(Errc::InvalidArgument, "n must be >= 1");
  if (group.empty()) raise(Errc::InvalidArgument, "empty group");
  const int d = static_cast<int>(group.front().size());
  const double order_log = std::log10(static_cast<double>(group.size())) * (std::pow(d, n) - 1) / (d - 1);
  if (order_log > 7.0) raise(Errc::TooLarge, "more than 10^7 wreath elements to enumerate");

  // Materialize [G]^{n-1} as permutations of S^{n-1}; the top level is only
  // walked, never stored.
  std::vector<Perm> level = {Perm{0}};  // [G]^0 acting on a single point
  std::size_t pts = 1;
  for (int k = 1; k <= n; ++k) {
    const std::size_t sub = level.size();
    const std::size_t gsz = group.size();
    std::vector<std::size_t> digit(static_cast<std::size_t>(d) + 1, 0);  // g_0..g_{d-1}, h
    const std::size_t new_pts = pts * static_cast<std::size_t>(d);
    std::vector<Perm> next;
    std::uint64_t with_fixed = 0, total = 0;
    Perm act(new_pts);
    while (true) {
      const Perm& h = group[digit[static_cast<std::size_t>(d)]];
      for (int t = 0; t < d; ++t) {
        const Perm& g = level[digit[static_cast<std::size_t>(t)]];
        const std::size_t ht = static_cast<std::size_t>(h[static_cast<std::size_t>(t)]);
        for (std::size_t s = 0; s < pts; ++s)
          act[s + pts * static_cast<std::size_t>(t)] = static_cast<int>(static_cast<std::size_t>(g[s]) + pts * ht);
      }
      if (k < n) {
        next.push_back(act);
      } else {
        ++total;
        for (std::size_t i = 0; i < new_pts; ++i)
          if (act[i] == static_cast<int>(i)) {
            ++with_fixed;
            break;
          }
      }
      std::size_t pos = 0;
      for (; pos <= static_cast<std::size_t>(d); ++pos) {
        const std::size_t radix = pos == static_cast<std::size_t>(d) ? gsz : sub;
        if (++digit[pos] < radix) break;
        digit[pos] = 0;
      }
      if (pos > static_cast<std::size_t>(d)) break;
    }
    if (k == n) {
      mpq_class out(mpz_class(static_cast<unsigned long>(with_fixed)), mpz_class(static_cast<unsigned long>(total)));
      out.canonicalize();
      return out;
    }
    level = std::move(next);
    pts = new_pts;
  }
  return 0;
}

std::optional<mpq_class> juul_bound_exact(Family family, int d, int n) {
  if (n < 1) raise(Errc::InvalidArgument, "n must be >= 1");
  auto frac = [](long a, long b) {
    mpq_class v(a, b);
    v.canonicalize();
    return v;
  };
  switch (family) {
    case Family::S:
      if (d >= 2) return frac(2, n + 2);
      break;
    case Family::A:
      if (d >= 5) return frac(2, n + 2);
      if (d == 4) return std::nullopt;
      break;
    case Family::D:
      if (d >= 3) return frac(2, n + 2);
      break;
    case Family::C:
      if (d >= 2) return frac(2, (d - 1) * (n + 1));
      break;
    case Family::Custom:
      break;
  }
  raise(Errc::OutOfHypothesis, "no fixed-point bound for " + family_name(family) + "_" + std::to_string(d));
}

double juul_bound(Family family, int d, int n) {
  if (auto exact = juul_bound_exact(family, d, n)) return exact->get_d();
  return 2.0 / (n + 1 - std::log(static_cast<double>(n)));
}

}  // namespace perdyn
