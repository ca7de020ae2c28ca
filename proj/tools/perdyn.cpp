// perdyn: command-line front end for the field, dynamics, wreath, height and
// bound-checking routines. Prints JSON; `check` can also write CSV reports.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <type_traits>

#include "perdyn/family.hpp"
#include "perdyn/parse.hpp"
#include "perdyn/verify.hpp"
#include "perdyn/wreath.hpp"

using namespace perdyn;
using json = nlohmann::ordered_json;

namespace {

json report_json(const Report& r) {
  json j;
  j["check"] = r.check;
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  if (r.lhs) {
    j["lhs"] = r.lhs->get_str();
    j["lhs_value"] = r.lhs->get_d();
  } else {
    j["lhs"] = nullptr;
  }
  j["rhs"] = std::isnan(r.rhs) ? json(nullptr) : json(r.rhs);
  j["status"] = status_name(r.status);
  j["runtime_ms"] = r.runtime_ms;
  if (r.seed) j["seed"] = *r.seed;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

int exit_code(const std::vector<Report>& rs) {
  int code = 0;
  for (const auto& r : rs) {
    if (r.status == Status::OutOfHypothesis) return 2;
    if (r.status == Status::Fail) code = 1;
  }
  return code;
}

void write_csv(const std::string& path, const std::vector<Report>& rs) {
  if (path.empty()) return;
  std::ofstream os(path, std::ios::binary);
  if (!os) raise(Errc::InvalidArgument, "cannot open " + path);
  write_csv_header(os);
  for (const auto& r : rs) write_csv_row(os, r);
}

json graph_json(const GraphStats& s) {
  return json{{"n_points", s.n_points},
              {"periodic_count", s.periodic_count},
              {"cycle_lengths", s.cycle_lengths},
              {"image_sizes", s.image_sizes}};
}

template <class K>
json place_json(const K& k, const Place& v, const typename K::Elem& x) {
  std::string name;
  if constexpr (std::is_same_v<K, FunctionField>) name = format_place(k.base(), v);
  else name = format_place(v);
  return json{{"place", name}, {"norm", v.norm.get_str()}, {"local_norm", local_norm(k, v, x).get_str()}};
}

template <class K>
json heights_json(const K& k, const typename K::Elem& x) {
  json j;
  j["elem"] = format_elem(k, x);
  j["height"] = height_elem(k, x).get_str();
  j["height_literal"] = height_literal(k, x).get_str();
  json places = json::array();
  if (!k.is_zero(x)) {
    places.push_back(place_json(k, infinite_place(k), x));
    for (const auto& v : support(k, x)) places.push_back(place_json(k, v, x));
    j["product_formula"] = product_formula_check(k, x);
  }
  j["places"] = places;
  return j;
}

template <class K>
json crit_json(const K& k, const std::vector<P1Point<typename K::Elem>>& crit) {
  json a = json::array();
  for (const auto& c : crit) a.push_back(format_point(k, c));
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"perdyn: periodic points of maps over finite fields"};
  app.require_subcommand(1);

  // field
  auto* field_cmd = app.add_subcommand("field", "print a finite field context");
  std::uint64_t f_p = 0;
  int f_r = 1;
  field_cmd->add_option("--p", f_p, "characteristic")->required();
  field_cmd->add_option("--r", f_r, "extension degree");

  // graph
  auto* graph_cmd = app.add_subcommand("graph", "functional-graph statistics of a map on P^1(F_q)");
  std::uint64_t g_q = 0;
  std::string g_map;
  graph_cmd->add_option("--q", g_q, "field order")->required();
  graph_cmd->add_option("--map", g_map, "map expression in X (s = field generator)")->required();

  // wreath
  auto* wreath_cmd = app.add_subcommand("wreath", "fixed-point proportions of iterated wreath products");
  std::string w_family;
  int w_d = 2, w_n = 1;
  bool w_exact = false, w_upper = false;
  wreath_cmd->add_option("--family", w_family, "S, A, D or C")->required();
  wreath_cmd->add_option("--d", w_d, "degree")->required();
  wreath_cmd->add_option("--n", w_n, "iterate depth")->required();
  auto* ex = wreath_cmd->add_flag("--exact", w_exact, "exact rationals (default)");
  wreath_cmd->add_flag("--upper", w_upper, "certified upper bounds in floating point")->excludes(ex);

  // heights
  auto* heights_cmd = app.add_subcommand("heights", "absolute values and height of an element");
  std::string h_field, h_elem;
  heights_cmd->add_option("--field", h_field, "Q or F<q>(s)")->required();
  heights_cmd->add_option("--elem", h_elem, "element, e.g. (s+1)/s")->required();

  // neps
  auto* neps_cmd = app.add_subcommand("neps", "iterate depth constant at a place");
  std::string n_field, n_map, n_crit;
  double n_eps_arg = 1.0;
  int n_deg = 0;
  std::string n_prime;
  neps_cmd->add_option("--field", n_field, "Q or F<q>(s)")->required();
  neps_cmd->add_option("--map", n_map, "map expression")->required();
  neps_cmd->add_option("--crit", n_crit, "comma-separated points, inf allowed")->required();
  neps_cmd->add_option("--eps", n_eps_arg, "epsilon")->required();
  neps_cmd->add_option("--place-deg", n_deg, "degree of the place (F_q(s))");
  neps_cmd->add_option("--prime", n_prime, "prime of the place (Q)");

  // disjoint
  auto* disjoint_cmd = app.add_subcommand("disjoint", "orbit disjointness of a point set over F_q(s)");
  std::uint64_t d_q = 0;
  std::string d_map, d_crit;
  int d_n = 1;
  disjoint_cmd->add_option("--q", d_q, "constant field order")->required();
  disjoint_cmd->add_option("--map", d_map, "map expression")->required();
  disjoint_cmd->add_option("--crit", d_crit, "comma-separated points")->required();
  disjoint_cmd->add_option("--n", d_n, "depth")->required();

  // check
  auto* check_cmd = app.add_subcommand("check", "verify a bound");
  check_cmd->require_subcommand(1);
  std::string out_csv;
  SweepOptions sweep;
  auto common = [&](CLI::App* c) {
    c->add_option("--out", out_csv, "CSV report path");
    c->add_option("--threads", sweep.threads, "worker threads (0 = all cores)");
  };
  auto* img_cmd = check_cmd->add_subcommand("image-size", "image size against the wreath model");
  std::uint64_t i_q = 0;
  unsigned i_d = 2;
  std::string i_c = "1", i_map;
  int i_n = 1;
  img_cmd->add_option("--q", i_q, "field order")->required();
  img_cmd->add_option("--d", i_d, "degree of X^d + c");
  img_cmd->add_option("--c", i_c, "constant term");
  img_cmd->add_option("--map", i_map, "explicit map instead of --d/--c");
  img_cmd->add_option("--n", i_n, "iterate");
  common(img_cmd);

  std::uint64_t t_q = 0;
  int t_r = 0;
  unsigned t_d = 2, t_m = 1;
  auto* t12_cmd = check_cmd->add_subcommand("thm12", "unicritical X^d + alpha^m over generators alpha");
  t12_cmd->add_option("--q", t_q)->required();
  t12_cmd->add_option("--r", t_r)->required();
  t12_cmd->add_option("--d", t_d);
  t12_cmd->add_option("--m", t_m);
  t12_cmd->add_option("--max-alphas", sweep.max_params, "stop after this many generators");
  common(t12_cmd);
  auto* t13_cmd = check_cmd->add_subcommand("thm13", "average over all quadratics");
  t13_cmd->add_option("--q", t_q)->required();
  t13_cmd->add_option("--r", t_r)->required();
  common(t13_cmd);
  auto* c11_cmd = check_cmd->add_subcommand("cor11", "average over quadratics, prime base field");
  c11_cmd->add_option("--p", t_q)->required();
  c11_cmd->add_option("--r", t_r)->required();
  common(c11_cmd);
  auto* t64_cmd = check_cmd->add_subcommand("thm64", "average of X^d + beta over m-th powers beta");
  t64_cmd->add_option("--q", t_q)->required();
  t64_cmd->add_option("--r", t_r)->required();
  t64_cmd->add_option("--d", t_d);
  t64_cmd->add_option("--m", t_m);
  common(t64_cmd);
  auto* t63_cmd = check_cmd->add_subcommand("thm63", "evaluate the periodic-proportion bound at a place");
  std::string b_family = "C", b_norm;
  int b_d = 2;
  double b_eps = 1.0;
  t63_cmd->add_option("--family", b_family);
  t63_cmd->add_option("--d", b_d);
  t63_cmd->add_option("--eps", b_eps);
  t63_cmd->add_option("--norm", b_norm, "place norm N(v)")->required();

  // baseline
  auto* base_cmd = app.add_subcommand("baseline", "random self-maps of an N-set");
  std::uint64_t r_points = 0, r_trials = 0, r_seed = 0;
  base_cmd->add_option("--points", r_points)->required();
  base_cmd->add_option("--trials", r_trials)->required();
  base_cmd->add_option("--seed", r_seed)->required();
  base_cmd->add_option("--out", out_csv, "CSV report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*field_cmd) {
      const FieldCtx ctx = f_r == 1 ? prime_field(f_p) : extension_field(f_p, f_r);
      const PolyRing<FieldCtx> pr(prime_field(f_p));
      std::cout << json{{"p", ctx.p()},
                        {"r", ctx.r()},
                        {"q", ctx.q().get_str()},
                        {"modulus", format_poly(prime_field(f_p), lift_prime_poly(prime_field(f_p), ctx.modulus()), 'x')},
                        {"field", ctx.describe()}}
                       .dump(2)
                << "\n";
      return 0;
    }
    if (*graph_cmd) {
      const FieldCtx ctx = field_of_order(g_q);
      const RationalMap map = parse_map(g_map, ctx);
      json j{{"field", ctx.describe()}, {"map", format_map(map)}, {"degree", map.degree()}};
      j.update(graph_json(graph_stats(successor_table(map, ctx))));
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (*wreath_cmd) {
      const Family fam = parse_family(w_family);
      const ActionSpec spec = action_spec(fam, w_d);
      json seq = json::array();
      if (w_upper) {
        const auto ups = fix_upper_sequence(spec, w_n);
        for (int n = 1; n <= w_n; ++n) seq.push_back({{"n", n}, {"fix_upper", ups[static_cast<std::size_t>(n - 1)]}});
      } else {
        for (int n = 1; n <= w_n; ++n) {
          const mpq_class f = fix_n_exact(spec, n);
          seq.push_back({{"n", n}, {"fix", f.get_str()}, {"value", f.get_d()}});
        }
      }
      json j{{"family", family_name(fam)}, {"d", w_d}, {"group_order", spec.group_order.get_str()}, {"sequence", seq}};
      j["juul_bound"] = juul_bound(fam, w_d, w_n);
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (*heights_cmd) {
      const GlobalFieldSpec gf = parse_global_field(h_field);
      json j{{"field", h_field}};
      if (gf.rationals) {
        const Rationals k;
        j.update(heights_json(k, parse_rational(h_elem)));
      } else {
        const FunctionField k(field_of_order(gf.q));
        j.update(heights_json(k, parse_ratfunc(h_elem, k)));
      }
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (*neps_cmd) {
      const GlobalFieldSpec gf = parse_global_field(n_field);
      json j{{"field", n_field}};
      auto run = [&](const auto& k, const mpz_class& norm) {
        const auto map = parse_map(n_map, k);
        const auto crit = parse_points(n_crit, k);
        double raw = 0;
        const long long v = n_eps(k, map.num(), map.den(), crit, n_eps_arg, norm, &raw);
        j["map"] = format_map(map);
        j["crit"] = crit_json(k, crit);
        j["norm"] = norm.get_str();
        j["b"] = b_const(k, map.num(), map.den()).get_str();
        j["c"] = c_const(k, map.num(), map.den(), crit).get_str();
        j["raw"] = raw;
        j["n_eps"] = v;
        if (v <= 0) j["note"] = "no usable iterate depth at this place";
      };
      if (gf.rationals) {
        if (n_prime.empty()) raise(Errc::InvalidArgument, "--prime is required over Q");
        const mpz_class p(n_prime);
        if (mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) raise(Errc::NotPrime, n_prime + " is not prime");
        run(Rationals{}, p);
      } else {
        if (n_deg < 1) raise(Errc::InvalidArgument, "--place-deg >= 1 is required over F_q(s)");
        mpz_class norm;
        mpz_ui_pow_ui(norm.get_mpz_t(), static_cast<unsigned long>(gf.q), static_cast<unsigned long>(n_deg));
        run(FunctionField(field_of_order(gf.q)), norm);
      }
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (*disjoint_cmd) {
      const FunctionField k(field_of_order(d_q));
      const FamilyMap map = parse_map(d_map, k);
      const auto crit = parse_points(d_crit, k);
      json j{{"field", "F" + std::to_string(d_q) + "(s)"}, {"map", format_map(map)}, {"crit", crit_json(k, crit)}, {"n", d_n}};
      const auto w = phi_disjoint(map, crit, d_n);
      j["disjoint"] = !w.has_value();
      if (w)
        j["witness"] = {{"gamma1", format_point(k, crit[w->gamma1])},
                        {"m1", w->m1},
                        {"gamma2", format_point(k, crit[w->gamma2])},
                        {"m2", w->m2}};
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (*check_cmd) {
      std::vector<Report> rows;
      json out;
      if (*img_cmd) {
        Report r = i_map.empty() ? check_image_size(i_q, i_d, i_c, i_n)
                                 : check_image_size(i_q, parse_map(i_map, field_of_order(i_q)), i_n);
        rows.push_back(r);
        out = report_json(r);
      } else if (*t12_cmd) {
        Thm12Result res = check_thm12(t_q, t_r, t_d, t_m, sweep);
        rows = res.rows;
        rows.push_back(res.aggregate);
        out = report_json(res.aggregate);
        out["rows"] = res.rows.size();
        write_csv(out_csv, rows);
        std::cout << out.dump(2) << "\n";
        return exit_code({res.aggregate});
      } else if (*t13_cmd) {
        rows.push_back(check_thm13(t_q, t_r, sweep));
        out = report_json(rows.back());
      } else if (*c11_cmd) {
        rows.push_back(check_cor11(t_q, t_r, sweep));
        out = report_json(rows.back());
      } else if (*t64_cmd) {
        rows.push_back(check_thm64(t_q, t_r, t_d, t_m, sweep));
        out = report_json(rows.back());
      } else if (*t63_cmd) {
        const mpz_class norm(b_norm);
        const Family fam = parse_family(b_family);
        out = json{{"family", family_name(fam)}, {"d", b_d}, {"eps", b_eps}, {"norm", norm.get_str()},
                   {"bound", thm63_bound(fam, b_d, b_eps, norm)}};
        std::cout << out.dump(2) << "\n";
        return 0;
      }
      write_csv(out_csv, rows);
      std::cout << out.dump(2) << "\n";
      return exit_code(rows);
    }
    if (*base_cmd) {
      const Report r = random_map_baseline(r_points, r_trials, r_seed);
      write_csv(out_csv, {r});
      std::cout << report_json(r).dump(2) << "\n";
      return exit_code({r});
    }
  } catch (const Error& e) {
    std::cerr << "perdyn: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "perdyn: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
