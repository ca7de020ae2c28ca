#include "perdyn/parse.hpp"

#include <cctype>

namespace perdyn {

namespace {

void trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

void trim(BiPoly& a) {
  for (auto& c : a) trim(c);
  while (!a.empty() && a.back().empty()) a.pop_back();
}

ZPoly zadd(const ZPoly& a, const ZPoly& b) {
  ZPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  trim(out);
  return out;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

BiPoly badd(const BiPoly& a, const BiPoly& b) {
  BiPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = zadd(i < a.size() ? a[i] : ZPoly{}, i < b.size() ? b[i] : ZPoly{});
  trim(out);
  return out;
}

BiPoly bneg(BiPoly a) {
  for (auto& c : a)
    for (auto& v : c) v = -v;
  return a;
}

BiPoly bmul(const BiPoly& a, const BiPoly& b) {
  if (a.empty() || b.empty()) return {};
  BiPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = zadd(out[i + j], zmul(a[i], b[j]));
  trim(out);
  return out;
}

class Parser {
 public:
  Parser(const std::string& text, char outer) : t_(text), outer_(outer) {}

  ParsedRatio run() {
    ParsedRatio out;
    out.num = poly();
    skip();
    if (peek() == '/') {
      ++i_;
      out.den = poly();
    } else {
      out.den = BiPoly{ZPoly{1}};
    }
    skip();
    if (i_ < t_.size()) fail("end of input");
    bool zero = true;
    for (const auto& c : out.den)
      for (const auto& v : c) zero = zero && v == 0;
    if (zero) raise(Errc::ZeroDenominator, "denominator of '" + t_ + "' is zero");
    out.uses_s = uses_s_;
    return out;
  }

 private:
  void skip() {
    while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) ++i_;
  }
  char peek() {
    skip();
    return i_ < t_.size() ? t_[i_] : '\0';
  }
  [[noreturn]] void fail(const std::string& expected) {
    std::string got = i_ < t_.size() ? std::string("'") + t_[i_] + "'" : std::string("end of input");
    raise(Errc::ParseError, "at position " + std::to_string(i_ + 1) + " in '" + t_ + "': expected " + expected +
                                ", found " + got);
  }

  bool starts_factor(char c) const {
    return std::isdigit(static_cast<unsigned char>(c)) || c == 's' || c == outer_ || c == '(';
  }

  BiPoly poly() {
    BiPoly acc;
    bool negative = false;
    if (peek() == '+' || peek() == '-') negative = t_[i_++] == '-';
    BiPoly t = term();
    acc = negative ? bneg(t) : t;
    while (peek() == '+' || peek() == '-') {
      negative = t_[i_++] == '-';
      t = term();
      acc = badd(acc, negative ? bneg(t) : t);
    }
    return acc;
  }

  BiPoly term() {
    BiPoly acc = factor();
    while (true) {
      const char c = peek();
      if (c == '*') {
        ++i_;
        acc = bmul(acc, factor());
      } else if (c != '\0' && starts_factor(c)) {
        acc = bmul(acc, factor());
      } else {
        return acc;
      }
    }
  }

  unsigned long exponent() {
    if (peek() != '^') return 1;
    ++i_;
    skip();
    if (i_ >= t_.size() || !std::isdigit(static_cast<unsigned char>(t_[i_]))) fail("an integer exponent");
    return integer().get_ui();
  }

  mpz_class integer() {
    const std::size_t start = i_;
    while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_]))) ++i_;
    if (i_ - start > 4000) raise(Errc::ParseError, "integer literal too long");
    return mpz_class(t_.substr(start, i_ - start));
  }

  BiPoly factor() {
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return BiPoly{ZPoly{integer()}};
    if (c == '(') {
      ++i_;
      BiPoly inner = poly();
      if (peek() != ')') fail("')'");
      ++i_;
      return inner;
    }
    if (c == outer_) {
      ++i_;
      const unsigned long e = exponent();
      BiPoly out(e + 1);
      out[e] = ZPoly{1};
      return out;
    }
    if (c == 's') {
      ++i_;
      uses_s_ = true;
      const unsigned long e = exponent();
      ZPoly z(e + 1, 0);
      z[e] = 1;
      return BiPoly{z};
    }
    fail(outer_ == 's' ? "an integer, 's' or '('" : "an integer, 's', 'X' or '('");
  }

  std::string t_;
  char outer_;
  std::size_t i_ = 0;
  bool uses_s_ = false;
};

std::string strip(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(',', start);
    out.push_back(strip(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

bool is_inf(const std::string& s) { return s == "inf" || s == "oo" || s == "\xe2\x88\x9e"; }

}  // namespace

ParsedRatio parse_ratio(const std::string& text, char outer) { return Parser(text, outer).run(); }

FieldElem coeff_in(const ZPoly& c, const FieldCtx& ctx) {
  FieldElem acc = ctx.zero();
  const FieldElem g = ctx.generator();
  FieldElem pw = ctx.one();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i > 0) {
      if (ctx.r() == 1) raise(Errc::InvalidArgument, "'s' needs an extension field; " + ctx.describe() + " is prime");
      pw = ctx.mul(pw, g);
    }
    const long long v = mpz_class(c[i] % ctx.p()).get_si();
    acc = ctx.add(acc, ctx.mul(ctx.from_int(v), pw));
  }
  return acc;
}

RatFunc coeff_in(const ZPoly& c, const FunctionField& k) {
  Poly<FieldCtx> p;
  for (const auto& v : c) p.push_back(k.base().from_int(mpz_class(v % k.base().p()).get_si()));
  return k.from_poly(std::move(p));
}

RationalMap to_map(const ParsedRatio& e, const FieldCtx& ctx) {
  Poly<FieldCtx> num, den;
  for (const auto& c : e.num) num.push_back(coeff_in(c, ctx));
  for (const auto& c : e.den) den.push_back(coeff_in(c, ctx));
  return RationalMap(ctx, std::move(num), std::move(den));
}

RationalMapQ to_map(const ParsedRatio& e, const Rationals& k) {
  if (e.uses_s) raise(Errc::ParseError, "'s' is not an element of Q");
  Poly<Rationals> num, den;
  for (const auto& c : e.num) num.push_back(c.empty() ? mpq_class(0) : mpq_class(c[0]));
  for (const auto& c : e.den) den.push_back(c.empty() ? mpq_class(0) : mpq_class(c[0]));
  return RationalMapQ(k, std::move(num), std::move(den));
}

FamilyMap to_map(const ParsedRatio& e, const FunctionField& k) {
  Poly<FunctionField> num, den;
  for (const auto& c : e.num) num.push_back(coeff_in(c, k));
  for (const auto& c : e.den) den.push_back(coeff_in(c, k));
  return FamilyMap(k, std::move(num), std::move(den));
}

mpq_class parse_rational(const std::string& text) {
  const ParsedRatio e = parse_ratio(text, 's');
  if (e.uses_s || e.num.size() > 1 || e.den.size() > 1) raise(Errc::ParseError, "'" + text + "' is not a rational number");
  mpq_class out(e.num.empty() ? mpz_class(0) : e.num[0][0], e.den[0][0]);
  out.canonicalize();
  return out;
}

RatFunc parse_ratfunc(const std::string& text, const FunctionField& k) {
  const ParsedRatio e = parse_ratio(text, 's');
  auto lower = [&](const BiPoly& b) {
    Poly<FieldCtx> p;
    for (const auto& c : b) p.push_back(k.base().from_int(c.empty() ? 0 : mpz_class(c[0] % k.base().p()).get_si()));
    return k.ring().trimmed(std::move(p));
  };
  const Poly<FieldCtx> den = lower(e.den);
  if (den.empty()) raise(Errc::ZeroDenominator, "'" + text + "' has a denominator vanishing mod " + std::to_string(k.base().p()));
  return k.make(lower(e.num), den);
}

FieldElem parse_field_elem(const std::string& text, const FieldCtx& ctx) {
  const ParsedRatio e = parse_ratio(text, 's');
  auto lower = [&](const BiPoly& b) {
    ZPoly z;
    for (const auto& c : b) z.push_back(c.empty() ? mpz_class(0) : c[0]);
    return coeff_in(z, ctx);
  };
  const FieldElem den = lower(e.den);
  if (ctx.is_zero(den)) raise(Errc::ZeroDenominator, "'" + text + "' has a zero denominator in " + ctx.describe());
  return ctx.div(lower(e.num), den);
}

std::vector<P1Point<mpq_class>> parse_points(const std::string& text, const Rationals&) {
  std::vector<P1Point<mpq_class>> out;
  for (const auto& s : split_commas(text)) out.push_back(is_inf(s) ? P1Point<mpq_class>() : parse_rational(s));
  return out;
}

std::vector<P1Point<RatFunc>> parse_points(const std::string& text, const FunctionField& k) {
  std::vector<P1Point<RatFunc>> out;
  for (const auto& s : split_commas(text)) out.push_back(is_inf(s) ? P1Point<RatFunc>() : parse_ratfunc(s, k));
  return out;
}

std::vector<P1Point<FieldElem>> parse_points(const std::string& text, const FieldCtx& ctx) {
  std::vector<P1Point<FieldElem>> out;
  for (const auto& s : split_commas(text)) out.push_back(is_inf(s) ? P1Point<FieldElem>() : parse_field_elem(s, ctx));
  return out;
}

GlobalFieldSpec parse_global_field(const std::string& text) {
  const std::string t = strip(text);
  if (t == "Q") return {true, 0};
  if (t.size() > 4 && t[0] == 'F' && t.substr(t.size() - 3) == "(s)") {
    const std::string digits = t.substr(1, t.size() - 4);
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos) {
      const std::uint64_t q = std::stoull(digits);
      if (!prime_power(q)) raise(Errc::NotPrime, std::to_string(q) + " is not a prime power");
      return {false, q};
    }
  }
  raise(Errc::ParseError, "expected 'Q' or 'F<q>(s)', found '" + text + "'");
}

}  // namespace perdyn
