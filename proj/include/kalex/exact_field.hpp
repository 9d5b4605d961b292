#pragma once

// Exact coefficient fields: the rationals Q, the Gaussian rationals Q(i),
// and simple extensions Q(θ) = Q[x]/(p) for a monic squarefree p with no
// rational roots.  Irreducibility of p is not decided up front; a reducible
// modulus surfaces later as ZeroDivisorDetected during inversion, which is
// exactly when it matters.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace kalex {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string rat_str(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

// Dense polynomials over Q with ascending coefficients, used for minimal
// polynomial bookkeeping.  Zero is the empty vector; deg(0) = -1.
namespace qpoly {

using Vec = std::vector<Rational>;

inline void trim(Vec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int deg(const Vec& a) { return static_cast<int>(a.size()) - 1; }

inline bool is_zero(const Vec& a) { return a.empty(); }

inline Vec add(const Vec& a, const Vec& b) {
  Vec r(std::max(a.size(), b.size()));
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (k < a.size()) r[k] += a[k];
    if (k < b.size()) r[k] += b[k];
  }
  trim(r);
  return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(std::max(a.size(), b.size()));
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (k < a.size()) r[k] += a[k];
    if (k < b.size()) r[k] -= b[k];
  }
  trim(r);
  return r;
}

inline Vec mul(const Vec& a, const Vec& b) {
  if (a.empty() || b.empty()) return {};
  Vec r(a.size() + b.size() - 1);
  for (std::size_t p = 0; p < a.size(); ++p)
    for (std::size_t q = 0; q < b.size(); ++q) r[p + q] += a[p] * b[q];
  trim(r);
  return r;
}

inline Vec scale(Vec a, const Rational& c) {
  for (auto& x : a) x *= c;
  trim(a);
  return a;
}

// a = q*b + r with deg r < deg b; b must be nonzero.
inline std::pair<Vec, Vec> divmod(Vec a, const Vec& b) {
  if (is_zero(b)) throw error(errc::division_by_zero, "polynomial division by zero");
  Vec q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
  const Rational& lead = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    Rational c = a.back() / lead;
    std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= c * b[k];
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline Vec mod(const Vec& a, const Vec& m) { return divmod(a, m).second; }

inline Vec make_monic(Vec a) {
  if (a.empty()) return a;
  Rational lead = a.back();
  for (auto& c : a) c /= lead;
  return a;
}

inline Vec gcd_monic(Vec a, Vec b) {
  trim(a);
  trim(b);
  while (!is_zero(b)) {
    Vec r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

inline Vec derivative(const Vec& a) {
  if (a.size() <= 1) return {};
  Vec r(a.size() - 1);
  for (std::size_t k = 1; k < a.size(); ++k) r[k - 1] = a[k] * Rational(static_cast<long>(k));
  trim(r);
  return r;
}

inline Rational eval(const Vec& a, const Rational& x) {
  Rational v = 0;
  for (std::size_t k = a.size(); k-- > 0;) v = v * x + a[k];
  return v;
}

inline std::string to_string(const Vec& a, const char* var) {
  if (is_zero(a)) return "0";
  std::string out;
  for (std::size_t k = a.size(); k-- > 0;) {
    const Rational& c = a[k];
    if (c == 0) continue;
    bool neg = c < 0;
    Rational ab = neg ? Rational(-c) : c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? "-" : "+";
    if (k == 0) {
      out += rat_str(ab);
    } else {
      if (ab != 1) out += rat_str(ab);
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

}  // namespace qpoly

enum class FieldKind { rational, gaussian, extension };

class FieldContext {
public:
  FieldContext() : kind_(FieldKind::rational) {}

  static FieldContext rationals() { return FieldContext(); }

  static FieldContext gaussian() {
    FieldContext c;
    c.kind_ = FieldKind::gaussian;
    c.minpoly_ = shared_vec({Rational(1), Rational(0), Rational(1)});
    return c;
  }

  // Builds Q[x]/(p).  Degree 1 collapses to Q, and x^2+1 is identified with
  // the Gaussian context so the two spellings compare equal.
  static FieldContext extension(qpoly::Vec p) {
    qpoly::trim(p);
    if (qpoly::deg(p) < 1)
      throw error(errc::not_monic, "minimal polynomial must have degree >= 1");
    if (p.back() != 1)
      throw error(errc::not_monic,
                  "minimal polynomial must be monic, got leading coefficient " + rat_str(p.back()));
    if (qpoly::deg(p) == 1) return rationals();
    qpoly::Vec g = qpoly::gcd_monic(p, qpoly::derivative(p));
    if (qpoly::deg(g) > 0)
      throw error(errc::not_squarefree,
                  "minimal polynomial is not squarefree; repeated factor " + qpoly::to_string(g, "x"));
    check_no_rational_root(p);
    if (p == qpoly::Vec{Rational(1), Rational(0), Rational(1)}) return gaussian();
    FieldContext c;
    c.kind_ = FieldKind::extension;
    c.minpoly_ = shared_vec(std::move(p));
    return c;
  }

  FieldKind kind() const { return kind_; }
  bool is_rational() const { return kind_ == FieldKind::rational; }
  bool is_gaussian() const { return kind_ == FieldKind::gaussian; }

  std::size_t degree() const {
    if (kind_ == FieldKind::rational) return 1;
    return minpoly_->size() - 1;
  }

  const qpoly::Vec& minpoly() const {
    if (!minpoly_) throw error(errc::context_mismatch, "rational context has no minimal polynomial");
    return *minpoly_;
  }

  std::string generator_name() const { return kind_ == FieldKind::gaussian ? "i" : "θ"; }

  std::string description() const {
    switch (kind_) {
      case FieldKind::rational: return "Q";
      case FieldKind::gaussian: return "Q(i)";
      case FieldKind::extension:
        return "Q[θ]/(" + qpoly::to_string(*minpoly_, "θ") + ")";
    }
    return "?";
  }

  friend bool operator==(const FieldContext& a, const FieldContext& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.kind_ != FieldKind::extension) return true;
    return a.minpoly_ == b.minpoly_ || *a.minpoly_ == *b.minpoly_;
  }
  friend bool operator!=(const FieldContext& a, const FieldContext& b) { return !(a == b); }

private:
  static std::shared_ptr<const qpoly::Vec> shared_vec(qpoly::Vec v) {
    return std::make_shared<const qpoly::Vec>(std::move(v));
  }

  // Rational root test on the primitive integer form of p.  Divisor
  // enumeration is trial division; moduli at desk scale keep this cheap.
  static void check_no_rational_root(const qpoly::Vec& p) {
    Integer lcm = 1;
    for (const auto& c : p) {
      Integer d = boost::multiprecision::denominator(c);
      lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
    }
    std::vector<Integer> ip(p.size());
    for (std::size_t k = 0; k < p.size(); ++k)
      ip[k] = boost::multiprecision::numerator(p[k] * Rational(lcm));
    if (ip.front() == 0)
      throw error(errc::has_rational_root, "minimal polynomial has rational root 0");
    std::vector<Integer> nums = positive_divisors(boost::multiprecision::abs(ip.front()));
    std::vector<Integer> dens = positive_divisors(boost::multiprecision::abs(ip.back()));
    for (const Integer& n : nums) {
      for (const Integer& d : dens) {
        Rational cand(n, d);
        if (qpoly::eval(p, cand) == 0)
          throw error(errc::has_rational_root,
                      "minimal polynomial has rational root " + rat_str(cand));
        if (qpoly::eval(p, -cand) == 0)
          throw error(errc::has_rational_root,
                      "minimal polynomial has rational root -" + rat_str(cand));
      }
    }
  }

  static std::vector<Integer> positive_divisors(Integer n) {
    std::vector<Integer> low, high;
    for (Integer d = 1; d * d <= n; ++d) {
      if (n % d == 0) {
        low.push_back(d);
        if (d * d != n) high.push_back(n / d);
      }
    }
    low.insert(low.end(), high.rbegin(), high.rend());
    return low;
  }

  FieldKind kind_;
  std::shared_ptr<const qpoly::Vec> minpoly_;  // ascending, monic; null for Q
};

// One element of a coefficient field.  The representation is the coefficient
// vector over Q in the power basis of the context's generator, always of
// length context().degree().
class ExactScalar {
public:
  ExactScalar() : c_(1, Rational(0)) {}
  ExactScalar(const Rational& r) : c_(1, r) {}
  ExactScalar(long long n) : c_(1, Rational(n)) {}

  ExactScalar(FieldContext ctx, qpoly::Vec coeffs) : ctx_(std::move(ctx)) {
    qpoly::trim(coeffs);
    if (!ctx_.is_rational() && coeffs.size() > ctx_.degree())
      coeffs = qpoly::mod(coeffs, ctx_.minpoly());
    if (ctx_.is_rational() && coeffs.size() > 1)
      throw error(errc::size_mismatch, "rational scalar given " + std::to_string(coeffs.size()) +
                                           " coefficients");
    coeffs.resize(ctx_.degree(), Rational(0));
    c_ = std::move(coeffs);
  }

  static ExactScalar zero(const FieldContext& ctx) { return ExactScalar(ctx, {}); }
  static ExactScalar one(const FieldContext& ctx) { return ExactScalar(ctx, {Rational(1)}); }

  static ExactScalar generator(const FieldContext& ctx) {
    if (ctx.is_rational())
      throw error(errc::context_mismatch, "the rational field has no generator element");
    return ExactScalar(ctx, {Rational(0), Rational(1)});
  }

  const FieldContext& context() const { return ctx_; }
  const qpoly::Vec& coeffs() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x == 0; });
  }
  bool is_one() const {
    if (c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& x) { return x == 0; });
  }

  bool is_rational_value() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& x) { return x == 0; });
  }

  Rational rational_value() const {
    if (!is_rational_value())
      throw error(errc::non_rational_coefficients, "scalar " + str() + " is not rational");
    return c_[0];
  }

  // Lifts a/b into the common context; only Q embeds into a larger field,
  // anything else must match exactly.
  static std::pair<ExactScalar, ExactScalar> promoted(const ExactScalar& a, const ExactScalar& b) {
    if (a.ctx_ == b.ctx_) return {a, b};
    if (a.ctx_.is_rational()) return {embed(a, b.ctx_), b};
    if (b.ctx_.is_rational()) return {a, embed(b, a.ctx_)};
    throw error(errc::context_mismatch,
                "cannot mix scalars from " + a.ctx_.description() + " and " + b.ctx_.description());
  }

  static ExactScalar embed(const ExactScalar& a, const FieldContext& ctx) {
    if (a.ctx_ == ctx) return a;
    if (!a.ctx_.is_rational())
      throw error(errc::context_mismatch,
                  "cannot embed " + a.ctx_.description() + " into " + ctx.description());
    return ExactScalar(ctx, {a.c_[0]});
  }

  friend ExactScalar operator+(const ExactScalar& x, const ExactScalar& y) {
    auto [a, b] = promoted(x, y);
    qpoly::Vec r = a.c_;
    for (std::size_t k = 0; k < r.size(); ++k) r[k] += b.c_[k];
    return ExactScalar(a.ctx_, std::move(r));
  }

  friend ExactScalar operator-(const ExactScalar& x, const ExactScalar& y) {
    auto [a, b] = promoted(x, y);
    qpoly::Vec r = a.c_;
    for (std::size_t k = 0; k < r.size(); ++k) r[k] -= b.c_[k];
    return ExactScalar(a.ctx_, std::move(r));
  }

  ExactScalar operator-() const {
    qpoly::Vec r = c_;
    for (auto& x : r) x = -x;
    return ExactScalar(ctx_, std::move(r));
  }

  friend ExactScalar operator*(const ExactScalar& x, const ExactScalar& y) {
    auto [a, b] = promoted(x, y);
    if (a.ctx_.is_rational()) return ExactScalar(a.ctx_, {a.c_[0] * b.c_[0]});
    return ExactScalar(a.ctx_, qpoly::mul(a.c_, b.c_));
  }

  // Extended Euclid against the minimal polynomial.  A nontrivial gcd means
  // the modulus was reducible after all; report the factor and stop.
  ExactScalar inverse() const {
    if (is_zero()) throw error(errc::division_by_zero, "inverse of zero");
    if (ctx_.is_rational()) return ExactScalar(ctx_, {Rational(1) / c_[0]});
    qpoly::Vec r0 = ctx_.minpoly(), r1 = c_;
    qpoly::trim(r1);
    qpoly::Vec s0 = {}, s1 = {Rational(1)};
    while (!qpoly::is_zero(r1)) {
      auto [q, r] = qpoly::divmod(r0, r1);
      qpoly::Vec s2 = qpoly::sub(s0, qpoly::mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    if (qpoly::deg(r0) > 0)
      throw error(errc::zero_divisor_detected,
                  "zero divisor: the minimal polynomial is reducible with factor " +
                      qpoly::to_string(qpoly::make_monic(r0), "x"));
    qpoly::Vec inv = qpoly::scale(s0, Rational(1) / r0[0]);
    return ExactScalar(ctx_, std::move(inv));
  }

  friend ExactScalar operator/(const ExactScalar& x, const ExactScalar& y) {
    auto [a, b] = promoted(x, y);
    return a * b.inverse();
  }

  ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
  ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
  ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
  ExactScalar& operator/=(const ExactScalar& o) { return *this = *this / o; }

  friend bool operator==(const ExactScalar& x, const ExactScalar& y) {
    if (x.ctx_ == y.ctx_) return x.c_ == y.c_;
    if (x.ctx_.is_rational() || y.ctx_.is_rational()) {
      auto [a, b] = promoted(x, y);
      return a.c_ == b.c_;
    }
    return false;
  }
  friend bool operator!=(const ExactScalar& x, const ExactScalar& y) { return !(x == y); }

  std::string str() const {
    if (ctx_.is_rational()) return rat_str(c_[0]);
    if (ctx_.is_gaussian()) return gaussian_str();
    return extension_str();
  }

private:
  std::string gaussian_str() const {
    const Rational &a = c_[0], &b = c_[1];
    if (b == 0) return rat_str(a);
    std::string out;
    if (a != 0)
      out = rat_str(a) + (b > 0 ? "+" : "-");
    else if (b < 0)
      out = "-";
    Rational ab = b < 0 ? Rational(-b) : b;
    out += ab == 1 ? "i" : rat_str(ab) + "i";
    return out;
  }

  std::string extension_str() const {
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const Rational& c = c_[k];
      if (c == 0) continue;
      bool neg = c < 0;
      Rational ab = neg ? Rational(-c) : c;
      if (out.empty())
        out += neg ? "-" : "";
      else
        out += neg ? "-" : "+";
      if (k == 0) {
        out += rat_str(ab);
      } else {
        if (ab != 1) out += rat_str(ab);
        out += "θ^" + std::to_string(k);
      }
    }
    return out.empty() ? "0" : out;
  }

  FieldContext ctx_;
  qpoly::Vec c_;
};

inline std::ostream& operator<<(std::ostream& os, const ExactScalar& s) { return os << s.str(); }

inline ExactScalar pow(ExactScalar base, long long e) {
  if (e < 0) {
    base = base.inverse();
    e = -e;
  }
  ExactScalar acc = ExactScalar::one(base.context());
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

// The smallest context containing both; only Q embeds into anything else.
inline FieldContext common_context(const FieldContext& a, const FieldContext& b) {
  if (a == b) return a;
  if (a.is_rational()) return b;
  if (b.is_rational()) return a;
  throw error(errc::context_mismatch,
              "cannot mix scalars from " + a.description() + " and " + b.description());
}

// Total order on elements of one context, used only to key containers.
inline bool lex_less(const ExactScalar& a, const ExactScalar& b) {
  const qpoly::Vec &x = a.coeffs(), &y = b.coeffs();
  for (std::size_t k = 0; k < std::min(x.size(), y.size()); ++k) {
    if (x[k] != y[k]) return x[k] < y[k];
  }
  return x.size() < y.size();
}

namespace detail {

struct Cursor {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool consume(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool consume_word(std::string_view w) {
    skip_ws();
    if (s.substr(pos, w.size()) == w) {
      pos += w.size();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw error(errc::syntax_error, msg + " at column " + std::to_string(pos + 1) + " in \"" +
                                        std::string(s) + "\"");
  }

  Integer integer() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == start) fail("expected an integer");
    return Integer(std::string(s.substr(start, pos - start)));
  }

  Rational rational() {
    Integer num = integer();
    if (consume('/')) {
      Integer den = integer();
      if (den == 0) fail("zero denominator");
      return Rational(num, den);
    }
    return Rational(num);
  }

  long long exponent() {
    skip_ws();
    bool neg = consume('-');
    Integer e = integer();
    if (e > 1000000) fail("exponent out of range");
    long long v = e.convert_to<long long>();
    return neg ? -v : v;
  }
};

// One generator symbol: 'i', 'θ' (UTF-8), or the spelled-out "theta".
// Returns 0 if none is present.
inline char scan_generator(Cursor& cur) {
  cur.skip_ws();
  if (cur.consume_word("θ") || cur.consume_word("theta")) return 'q';
  std::string_view rest = cur.s.substr(cur.pos);
  if (!rest.empty() && rest[0] == 'i') {
    cur.pos += 1;
    return 'i';
  }
  return 0;
}

// Shared by the scalar and Laurent parsers: one term of a scalar sum,
// already stripped of its sign.  var is the polynomial variable to stop at
// ('\0' when parsing a standalone scalar).
inline void scalar_atom(Cursor& cur, const FieldContext& ctx, qpoly::Vec& acc, const Rational& sign) {
  cur.skip_ws();
  Rational coeff(1);
  bool saw_number = false;
  if (cur.peek() >= '0' && cur.peek() <= '9') {
    coeff = cur.rational();
    saw_number = true;
    cur.consume('*');
  }
  char gen = scan_generator(cur);
  if (gen == 0) {
    if (!saw_number) cur.fail("expected a number or generator symbol");
    if (acc.empty()) acc.resize(1);
    acc[0] += sign * coeff;
    return;
  }
  long long e = 1;
  if (gen == 'q') {
    if (!ctx.is_gaussian() && ctx.kind() != FieldKind::extension)
      cur.fail("θ is only valid in an extension context");
    if (ctx.is_gaussian()) cur.fail("θ is not the Gaussian generator; use i");
    if (cur.consume('^')) {
      e = cur.exponent();
      if (e < 0) cur.fail("negative generator power");
    }
  } else {
    if (!ctx.is_gaussian()) cur.fail("symbol i is only valid in the Gaussian context");
  }
  if (acc.size() <= static_cast<std::size_t>(e)) acc.resize(e + 1);
  acc[e] += sign * coeff;
}

}  // namespace detail

// Parses the whole of text as one scalar of the given context: a rational
// "n" or "n/d", a Gaussian "a+bi", or an extension element in powers of θ.
inline ExactScalar parse_scalar(std::string_view text, const FieldContext& ctx) {
  detail::Cursor cur{text};
  qpoly::Vec acc;
  bool first = true;
  while (!cur.eof()) {
    Rational sign(1);
    if (cur.consume('-'))
      sign = -1;
    else if (!cur.consume('+') && !first)
      cur.fail("expected + or -");
    detail::scalar_atom(cur, ctx, acc, sign);
    first = false;
  }
  if (first) cur.fail("empty scalar");
  return ExactScalar(ctx, std::move(acc));
}

}  // namespace kalex
