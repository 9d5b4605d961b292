#include "helpers.hpp"

#include <kalex/exact_field.hpp>

using namespace kalex;
using testutil::code_of;
using testutil::Rng;

static qpoly::Vec qv(std::initializer_list<long long> c) {
  qpoly::Vec v;
  for (long long x : c) v.emplace_back(x);
  return v;
}

TEST_CASE("context construction") {
  FieldContext q = FieldContext::rationals();
  CHECK(q.is_rational());
  CHECK(q.degree() == 1);

  // x^2 - x + 1
  FieldContext e = FieldContext::extension(qv({1, -1, 1}));
  CHECK(e.kind() == FieldKind::extension);
  CHECK(e.degree() == 2);

  // x^2 + 1 is the Gaussian field under either spelling
  FieldContext g = FieldContext::extension(qv({1, 0, 1}));
  CHECK(g.is_gaussian());
  CHECK(g == FieldContext::gaussian());

  // degree 1 collapses to Q
  CHECK(FieldContext::extension(qv({-5, 1})).is_rational());

  CHECK(e != g);
  CHECK(e == FieldContext::extension(qv({1, -1, 1})));
}

TEST_CASE("context rejection") {
  // x^2 - 1 has rational roots
  CHECK(code_of([] { FieldContext::extension(qv({-1, 0, 1})); }) == errc::has_rational_root);
  // 2x^2 + 1 is not monic
  CHECK(code_of([] { FieldContext::extension(qv({1, 0, 2})); }) == errc::not_monic);
  // (x+1)^2
  CHECK(code_of([] { FieldContext::extension(qv({1, 2, 1})); }) == errc::not_squarefree);
  // (x - 3/2)(x^2 + x + 1): the non-integer root 3/2 must be caught too
  CHECK(code_of([] {
          FieldContext::extension(
              {Rational(-3, 2), Rational(-1, 2), Rational(-1, 2), Rational(1)});
        }) == errc::has_rational_root);
  // constant
  CHECK(code_of([] { FieldContext::extension(qv({1})); }) == errc::not_monic);
}

TEST_CASE("basic arithmetic") {
  FieldContext g = FieldContext::gaussian();
  ExactScalar i = ExactScalar::generator(g);
  ExactScalar one = ExactScalar::one(g);

  CHECK((one + i) * (one - i) == ExactScalar(g, qv({2})));
  CHECK(i * i == -one);

  FieldContext e = FieldContext::extension(qv({1, -1, 1}));
  ExactScalar th = ExactScalar::generator(e);
  CHECK(th * th == th - ExactScalar::one(e));  // θ^2 = θ - 1

  ExactScalar a(Rational(1, 3)), b(Rational(1, 6));
  CHECK(a + b == ExactScalar(Rational(1, 2)));
}

TEST_CASE("inversion") {
  CHECK(ExactScalar(Rational(2)).inverse() == ExactScalar(Rational(1, 2)));

  FieldContext g = FieldContext::gaussian();
  ExactScalar i = ExactScalar::generator(g);
  CHECK(i.inverse() == -i);

  FieldContext e = FieldContext::extension(qv({1, -1, 1}));
  ExactScalar th = ExactScalar::generator(e);
  CHECK(th.inverse() == ExactScalar::one(e) - th);  // θ^-1 = 1 - θ

  CHECK(code_of([] { ExactScalar(Rational(0)).inverse(); }) == errc::division_by_zero);
  CHECK(code_of([&] { ExactScalar::zero(g).inverse(); }) == errc::division_by_zero);
}

TEST_CASE("reducible modulus surfaces as zero divisor") {
  // x^4 + 4 = (x^2-2x+2)(x^2+2x+2): squarefree, no rational roots, reducible
  FieldContext e = FieldContext::extension(qv({4, 0, 0, 0, 1}));
  ExactScalar z(e, qv({2, -2, 1}));
  CHECK(code_of([&] { z.inverse(); }) == errc::zero_divisor_detected);
  try {
    z.inverse();
  } catch (const error& err) {
    CHECK(std::string(err.what()).find("x^2") != std::string::npos);
  }
}

TEST_CASE("context mismatch") {
  FieldContext g = FieldContext::gaussian();
  FieldContext e = FieldContext::extension(qv({1, -1, 1}));
  ExactScalar i = ExactScalar::generator(g);
  ExactScalar th = ExactScalar::generator(e);
  CHECK(code_of([&] { (void)(i + th); }) == errc::context_mismatch);
  CHECK(i != th);

  // Q embeds into anything
  CHECK(ExactScalar(Rational(2)) + i == ExactScalar(g, qv({2, 1})));
  CHECK(ExactScalar(Rational(3)) == ExactScalar(e, qv({3})));
}

TEST_CASE("printing") {
  FieldContext g = FieldContext::gaussian();
  FieldContext e = FieldContext::extension(qv({1, -1, 1}));

  CHECK(ExactScalar(Rational(3, 2)).str() == "3/2");
  CHECK(ExactScalar(Rational(-5)).str() == "-5");
  CHECK(ExactScalar(g, qv({1, -2})).str() == "1-2i");
  CHECK(ExactScalar(g, qv({0, 1})).str() == "i");
  CHECK(ExactScalar(g, qv({0, -1})).str() == "-i");
  CHECK(ExactScalar(g, qv({0, 3})).str() == "3i");
  CHECK(ExactScalar(e, qv({-1, 2})).str() == "2θ^1-1");
  CHECK(ExactScalar::zero(e).str() == "0");
}

TEST_CASE("parsing") {
  FieldContext q = FieldContext::rationals();
  FieldContext g = FieldContext::gaussian();
  FieldContext e = FieldContext::extension(qv({1, -1, 1}));

  CHECK(parse_scalar("22/7", q) == ExactScalar(Rational(22, 7)));
  CHECK(parse_scalar("-3", q) == ExactScalar(Rational(-3)));
  CHECK(parse_scalar("1-2i", g) == ExactScalar(g, qv({1, -2})));
  CHECK(parse_scalar("-i", g) == ExactScalar(g, qv({0, -1})));
  CHECK(parse_scalar("3/2i", g) == ExactScalar(g, {Rational(0), Rational(3, 2)}));
  CHECK(parse_scalar("2θ^1-1", e) == ExactScalar(e, qv({-1, 2})));
  CHECK(parse_scalar("theta", e) == ExactScalar::generator(e));
  CHECK(parse_scalar("1/2*theta + 1/3", e) == ExactScalar(e, {Rational(1, 3), Rational(1, 2)}));
  // θ^2 reduces modulo the minimal polynomial
  CHECK(parse_scalar("theta^2", e) == ExactScalar(e, qv({-1, 1})));

  CHECK(code_of([&] { parse_scalar("i", q); }) == errc::syntax_error);
  CHECK(code_of([&] { parse_scalar("theta", g); }) == errc::syntax_error);
  CHECK(code_of([&] { parse_scalar("", q); }) == errc::syntax_error);
  CHECK(code_of([&] { parse_scalar("1 + + 2", q); }) == errc::syntax_error);
  CHECK(code_of([&] { parse_scalar("1/0", q); }) == errc::syntax_error);
}

TEST_CASE("field axioms hold on random samples") {
  std::vector<FieldContext> ctxs = {FieldContext::rationals(), FieldContext::gaussian(),
                                    FieldContext::extension(qv({1, -1, 1})),
                                    FieldContext::extension(qv({1, 0, -1, 0, 1}))};
  Rng rng(20260819);
  for (const auto& ctx : ctxs) {
    for (int n = 0; n < 250; ++n) {
      ExactScalar a = rng.scalar(ctx), b = rng.scalar(ctx), c = rng.scalar(ctx);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      if (!a.is_zero()) {
        CHECK(a * a.inverse() == ExactScalar::one(ctx));
        CHECK(a.inverse().inverse() == a);
      }
      if (!b.is_zero()) CHECK((a / b) * b == a);
    }
  }
}

TEST_CASE("rational embedding is a field homomorphism") {
  Rng rng(7);
  FieldContext g = FieldContext::gaussian();
  FieldContext e = FieldContext::extension(qv({1, -1, 1}));
  for (const auto& ctx : {g, e}) {
    for (int n = 0; n < 200; ++n) {
      ExactScalar r(rng.rat()), s(rng.rat());
      CHECK(ExactScalar::embed(r, ctx) * ExactScalar::embed(s, ctx) ==
            ExactScalar::embed(r * s, ctx));
      CHECK(ExactScalar::embed(r, ctx) + ExactScalar::embed(s, ctx) ==
            ExactScalar::embed(r + s, ctx));
    }
  }
}

TEST_CASE("scalar literals round-trip") {
  std::vector<FieldContext> ctxs = {FieldContext::rationals(), FieldContext::gaussian(),
                                    FieldContext::extension(qv({1, -1, 1})),
                                    FieldContext::extension(qv({2, 0, 1, 1}))};
  Rng rng(99);
  for (const auto& ctx : ctxs) {
    for (int n = 0; n < 300; ++n) {
      ExactScalar s = rng.scalar(ctx);
      CHECK(parse_scalar(s.str(), ctx) == s);
    }
  }
}
