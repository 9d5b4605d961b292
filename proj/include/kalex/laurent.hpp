#pragma once

// Laurent polynomials F[t, t^-1] over an exact coefficient field.  Units are
// the monomials c*t^m, and every nonzero element factors uniquely as
// unit * q with q monic and q(0) != 0; that q is the canonical form all
// invariants are reported in.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "exact_field.hpp"

namespace kalex {

class LaurentPoly {
public:
  using TermMap = std::map<long long, ExactScalar>;

  explicit LaurentPoly(FieldContext ctx = {}) : ctx_(std::move(ctx)) {}

  static LaurentPoly zero(const FieldContext& ctx) { return LaurentPoly(ctx); }

  static LaurentPoly constant(const ExactScalar& c) {
    LaurentPoly p(c.context());
    p.add_term(0, c);
    return p;
  }

  static LaurentPoly monomial(const FieldContext& ctx, const ExactScalar& c, long long e) {
    LaurentPoly p(ctx);
    p.add_term(e, ExactScalar::embed(c, ctx));
    return p;
  }

  static LaurentPoly one(const FieldContext& ctx) {
    return monomial(ctx, ExactScalar::one(ctx), 0);
  }

  static LaurentPoly variable(const FieldContext& ctx) {
    return monomial(ctx, ExactScalar::one(ctx), 1);
  }

  const FieldContext& context() const { return ctx_; }
  const TermMap& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  bool is_one() const { return t_.size() == 1 && t_.begin()->first == 0 && t_.begin()->second.is_one(); }

  long long min_exp() const {
    require_nonzero();
    return t_.begin()->first;
  }
  long long max_exp() const {
    require_nonzero();
    return t_.rbegin()->first;
  }
  long long span() const { return max_exp() - min_exp(); }

  ExactScalar coeff(long long e) const {
    auto it = t_.find(e);
    return it == t_.end() ? ExactScalar::zero(ctx_) : it->second;
  }

  ExactScalar leading_coeff() const { return coeff(max_exp()); }

  void add_term(long long e, const ExactScalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  LaurentPoly mul_monomial(const ExactScalar& c, long long e) const {
    LaurentPoly r(ctx_);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : t_) r.add_term(k + e, v * c);
    return r;
  }

  friend LaurentPoly operator+(const LaurentPoly& x, const LaurentPoly& y) {
    auto [a, b] = promoted(x, y);
    for (const auto& [e, c] : b.t_) a.add_term(e, c);
    return a;
  }

  friend LaurentPoly operator-(const LaurentPoly& x, const LaurentPoly& y) {
    auto [a, b] = promoted(x, y);
    for (const auto& [e, c] : b.t_) a.add_term(e, -c);
    return a;
  }

  LaurentPoly operator-() const {
    LaurentPoly r(ctx_);
    for (const auto& [e, c] : t_) r.t_.emplace(e, -c);
    return r;
  }

  friend LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y) {
    auto [a, b] = promoted(x, y);
    LaurentPoly r(a.ctx_);
    for (const auto& [e1, c1] : a.t_)
      for (const auto& [e2, c2] : b.t_) r.add_term(e1 + e2, c1 * c2);
    return r;
  }

  friend LaurentPoly operator*(const ExactScalar& c, const LaurentPoly& p) {
    return p * constant(c);
  }

  LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend bool operator==(const LaurentPoly& x, const LaurentPoly& y) {
    if (x.ctx_ == y.ctx_) return x.t_ == y.t_;
    if (!x.ctx_.is_rational() && !y.ctx_.is_rational()) return false;
    auto [a, b] = promoted(x, y);
    return a.t_ == b.t_;
  }
  friend bool operator!=(const LaurentPoly& x, const LaurentPoly& y) { return !(x == y); }

  LaurentPoly embedded(const FieldContext& ctx) const {
    if (ctx_ == ctx) return *this;
    LaurentPoly r(ctx);
    for (const auto& [e, c] : t_) r.add_term(e, ExactScalar::embed(c, ctx));
    return r;
  }

  // Text form with terms in decreasing exponent order.  spaced gives
  // " + " separators for reports; compact packs everything into one token
  // so matrices stay whitespace-delimited.
  std::string str(bool spaced = true) const;

private:
  void require_nonzero() const {
    if (t_.empty()) throw error(errc::zero_polynomial, "operation undefined for the zero polynomial");
  }

  static std::pair<LaurentPoly, LaurentPoly> promoted(const LaurentPoly& a, const LaurentPoly& b) {
    FieldContext ctx = common_context(a.ctx_, b.ctx_);
    return {a.embedded(ctx), b.embedded(ctx)};
  }

  FieldContext ctx_;
  TermMap t_;
};

struct Normalized {
  LaurentPoly unit;  // c * t^m
  LaurentPoly q;     // monic, q(0) != 0
};

// Factors p = unit * q.  The zero polynomial has no such factorization.
inline Normalized normalize(const LaurentPoly& p) {
  if (p.is_zero()) throw error(errc::zero_polynomial, "cannot normalize the zero polynomial");
  long long m = p.min_exp();
  ExactScalar c = p.leading_coeff();
  return {LaurentPoly::monomial(p.context(), c, m), p.mul_monomial(c.inverse(), -m)};
}

// Division with remainder for ordinary (nonnegative-exponent) polynomials.
inline std::pair<LaurentPoly, LaurentPoly> poly_divmod(LaurentPoly a, const LaurentPoly& b) {
  if (b.is_zero()) throw error(errc::division_by_zero, "polynomial division by zero");
  LaurentPoly q(a.context());
  long long db = b.max_exp();
  ExactScalar lead = b.leading_coeff();
  while (!a.is_zero() && a.max_exp() >= db) {
    ExactScalar c = a.leading_coeff() / lead;
    long long sh = a.max_exp() - db;
    q.add_term(sh, c);
    a -= b.mul_monomial(c, sh);
  }
  return {q, a};
}

// Laurent-aware division: e = q*p + r with span(r) < span(p) (or r = 0).
// Both arguments are shifted honest before ordinary division, so negative
// exponents never leak into the quotient computation.
inline std::pair<LaurentPoly, LaurentPoly> laurent_divmod(const LaurentPoly& e, const LaurentPoly& p) {
  if (p.is_zero()) throw error(errc::division_by_zero, "polynomial division by zero");
  if (e.is_zero()) return {LaurentPoly::zero(e.context()), LaurentPoly::zero(e.context())};
  long long me = e.min_exp(), mp = p.min_exp();
  ExactScalar one = ExactScalar::one(e.context());
  auto [qh, rh] = poly_divmod(e.mul_monomial(one, -me), p.mul_monomial(one, -mp));
  return {qh.mul_monomial(one, me - mp), rh.mul_monomial(one, me)};
}

inline bool divides(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) return b.is_zero();
  if (b.is_zero()) return true;
  return laurent_divmod(b, a).second.is_zero();
}

inline LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) return LaurentPoly::zero(a.context());
  auto [q, r] = laurent_divmod(a, b);
  if (!r.is_zero())
    throw error(errc::internal_check_failed,
                "inexact division: " + a.str(false) + " by " + b.str(false));
  return q;
}

// Monic Euclidean gcd, reported in canonical form.  gcd(p, 0) = normalize(p).q.
inline LaurentPoly gcd(const LaurentPoly& x, const LaurentPoly& y) {
  if (x.is_zero() && y.is_zero())
    throw error(errc::both_zero, "gcd(0, 0) is undefined");
  if (x.is_zero()) return normalize(y).q;
  if (y.is_zero()) return normalize(x).q;
  LaurentPoly a = normalize(x).q, b = normalize(y).q;
  while (!b.is_zero()) {
    LaurentPoly r = poly_divmod(a, b).second;
    a = std::move(b);
    if (r.is_zero())
      b = std::move(r);
    else
      b = r.mul_monomial(r.leading_coeff().inverse(), 0);
  }
  return normalize(a).q;
}

// Evaluation t = alpha.  alpha = 0 is allowed only when p has no negative
// exponents; contexts promote as usual.
inline ExactScalar evaluate(const LaurentPoly& p, const ExactScalar& alpha) {
  FieldContext ctx = common_context(p.context(), alpha.context());
  if (p.is_zero()) return ExactScalar::zero(ctx);
  LaurentPoly pe = p.embedded(ctx);
  ExactScalar a = ExactScalar::embed(alpha, ctx);
  long long m = pe.min_exp();
  if (a.is_zero()) {
    if (m < 0) throw error(errc::zero_base, "cannot evaluate negative powers of t at t = 0");
    return pe.coeff(0);
  }
  ExactScalar v = ExactScalar::zero(ctx);
  long long prev = pe.max_exp();
  for (auto it = pe.terms().rbegin(); it != pe.terms().rend(); ++it) {
    v = v * pow(a, prev - it->first) + it->second;
    prev = it->first;
  }
  return v * pow(a, m);
}

// p(c*t) for a nonzero scalar c.
inline LaurentPoly scale_variable(const LaurentPoly& p, const ExactScalar& c) {
  if (c.is_zero()) throw error(errc::zero_base, "variable scale by zero");
  FieldContext ctx = common_context(p.context(), c.context());
  LaurentPoly pe = p.embedded(ctx);
  LaurentPoly r(ctx);
  ExactScalar ce = ExactScalar::embed(c, ctx);
  for (const auto& [e, v] : pe.terms()) r.add_term(e, v * pow(ce, e));
  return r;
}

// p(1/t): exponent negation.  Up to units this is the reversal of p.
inline LaurentPoly reverse_variable(const LaurentPoly& p) {
  LaurentPoly r(p.context());
  for (const auto& [e, v] : p.terms()) r.add_term(-e, v);
  return r;
}

inline LaurentPoly derivative(const LaurentPoly& p) {
  LaurentPoly r(p.context());
  for (const auto& [e, v] : p.terms()) {
    if (e != 0) r.add_term(e - 1, v * ExactScalar(Rational(e)));
  }
  return r;
}

// q / gcd(q, q'): same roots as q, all simple.
inline LaurentPoly squarefree_part(const LaurentPoly& p) {
  LaurentPoly q = normalize(p).q;
  LaurentPoly d = derivative(q);
  if (d.is_zero()) return q;
  return normalize(exact_div(q, gcd(q, d))).q;
}

// True iff every root of minpoly is a root of p, i.e. minpoly divides the
// canonical part of p.  Both polynomials live over Q.
inline bool vanishes_at_algebraic(const LaurentPoly& p, const LaurentPoly& minpoly) {
  if (!p.context().is_rational() || !minpoly.context().is_rational())
    throw error(errc::context_mismatch, "vanishes_at_algebraic expects rational coefficients");
  if (minpoly.is_zero() || minpoly.min_exp() < 0 || !minpoly.leading_coeff().is_one())
    throw error(errc::not_monic, "minimal polynomial must be monic with nonnegative exponents");
  return divides(minpoly, normalize(p).q);
}

// Whether the zero set of p is closed under z -> 1/z: compare squarefree
// parts of the canonical form and of its reversal.
inline bool inversion_closed(const LaurentPoly& p) {
  if (p.is_zero()) throw error(errc::zero_polynomial, "inversion_closed is undefined for 0");
  LaurentPoly q = normalize(p).q;
  LaurentPoly s1 = squarefree_part(q);
  LaurentPoly s2 = squarefree_part(normalize(reverse_variable(q)).q);
  return s1 == s2;
}

inline std::string LaurentPoly::str(bool spaced) const {
  if (t_.empty()) return "0";
  std::string out;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    long long e = it->first;
    const ExactScalar& c = it->second;
    bool neg = false;
    std::string mag;
    if (c.is_rational_value()) {
      Rational r = c.coeffs()[0];
      neg = r < 0;
      mag = rat_str(neg ? Rational(-r) : r);
    } else {
      std::string s = c.str();
      bool interior = false;
      for (std::size_t k = 1; k < s.size(); ++k)
        if (s[k] == '+' || s[k] == '-') interior = true;
      if (interior) {
        mag = "(" + s + ")";
      } else if (s[0] == '-') {
        neg = true;
        mag = s.substr(1);
      } else {
        mag = s;
      }
    }
    if (out.empty())
      out += neg ? "-" : "";
    else if (spaced)
      out += neg ? " - " : " + ";
    else
      out += neg ? "-" : "+";
    if (e == 0) {
      out += mag;
    } else {
      if (mag != "1") out += mag + "*";
      out += "t";
      if (e != 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.str(); }

// Parses a Laurent polynomial literal; the variable may be written t or x.
inline LaurentPoly parse_poly(std::string_view text, const FieldContext& ctx) {
  detail::Cursor cur{text};
  LaurentPoly out(ctx);
  bool first = true;
  while (!cur.eof()) {
    Rational sign(1);
    if (cur.consume('-'))
      sign = -1;
    else if (!cur.consume('+') && !first)
      cur.fail("expected + or -");
    cur.skip_ws();

    ExactScalar coeff = ExactScalar::one(ctx);
    bool saw_coeff = false;
    char pk = cur.peek();
    bool at_theta = cur.s.substr(cur.pos, 5) == "theta" || cur.s.substr(cur.pos, 2) == "θ";
    bool at_var = (pk == 't' || pk == 'x') && !at_theta;
    if (pk == '(') {
      cur.consume('(');
      std::size_t close = cur.s.find(')', cur.pos);
      if (close == std::string_view::npos) cur.fail("missing )");
      coeff = parse_scalar(cur.s.substr(cur.pos, close - cur.pos), ctx);
      cur.pos = close + 1;
      cur.consume('*');
      saw_coeff = true;
    } else if (!at_var) {
      qpoly::Vec acc;
      detail::scalar_atom(cur, ctx, acc, Rational(1));
      coeff = ExactScalar(ctx, std::move(acc));
      cur.consume('*');
      saw_coeff = true;
    }

    long long e = 0;
    cur.skip_ws();
    pk = cur.peek();
    at_theta = cur.s.substr(cur.pos, 5) == "theta" || cur.s.substr(cur.pos, 2) == "θ";
    if ((pk == 't' || pk == 'x') && !at_theta) {
      ++cur.pos;
      e = 1;
      if (cur.consume('^')) e = cur.exponent();
    } else if (!saw_coeff) {
      cur.fail("expected a term");
    }
    LaurentPoly term = LaurentPoly::monomial(ctx, coeff * ExactScalar(Rational(sign)), e);
    out += term;
    first = false;
  }
  if (first) cur.fail("empty polynomial");
  return out;
}

// Builds the extension field Q[x]/(p) from a minimal-polynomial literal.
inline FieldContext extension_context(std::string_view minpoly) {
  LaurentPoly mp = parse_poly(minpoly, FieldContext::rationals());
  qpoly::Vec v;
  if (!mp.is_zero()) {
    if (mp.min_exp() < 0)
      throw error(errc::syntax_error, "minimal polynomial has negative exponents");
    v.resize(static_cast<std::size_t>(mp.max_exp()) + 1);
    for (const auto& [e, c] : mp.terms()) v[static_cast<std::size_t>(e)] = c.coeffs()[0];
  }
  return FieldContext::extension(v);
}

// A quotient of Laurent polynomials, kept in lowest terms with numerator and
// denominator each in canonical form.  Exactly the right amount of data for
// an invariant that is only defined up to units.
struct RationalFunction {
  LaurentPoly num, den;

  static RationalFunction reduced(const LaurentPoly& n, const LaurentPoly& d) {
    if (d.is_zero()) throw error(errc::division_by_zero, "rational function with zero denominator");
    if (n.is_zero()) {
      FieldContext ctx = common_context(n.context(), d.context());
      return {LaurentPoly::zero(ctx), LaurentPoly::one(ctx)};
    }
    LaurentPoly g = gcd(n, d);
    return {normalize(exact_div(normalize(n).q, g)).q, normalize(exact_div(normalize(d).q, g)).q};
  }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num == b.num && a.den == b.den;
  }

  std::string str(bool spaced = true) const {
    if (spaced) return "(" + num.str(true) + ") / (" + den.str(true) + ")";
    return "(" + num.str(false) + ")/(" + den.str(false) + ")";
  }
};

}  // namespace kalex
