#include "helpers.hpp"

#include <kalex/dilation.hpp>

using namespace kalex;
using testutil::code_of;

static const FieldContext Q = FieldContext::rationals();

static Dilation d1(const char* ratio, const char* b, const FieldContext& ctx = Q) {
  return Dilation(parse_scalar(ratio, ctx), {parse_scalar(b, ctx)});
}

static Representation sl2_trefoil() {
  auto m = [](long long a, long long b, long long c, long long d) {
    ScalarMatrix x(2, 2, FieldContext::rationals());
    x.at(0, 0) = ExactScalar(Rational(a));
    x.at(0, 1) = ExactScalar(Rational(b));
    x.at(1, 0) = ExactScalar(Rational(c));
    x.at(1, 1) = ExactScalar(Rational(d));
    return x;
  };
  Representation rep;
  rep.dimension = 2;
  rep.images = {m(1, 1, 0, 1), m(1, 0, -1, 1), m(0, 1, -1, 2)};
  return rep;
}

static Dilation random_dilation(testutil::Rng& rng, const FieldContext& ctx, std::size_t n) {
  std::vector<ExactScalar> b;
  for (std::size_t i = 0; i < n; ++i) b.push_back(rng.scalar(ctx));
  return Dilation(rng.nonzero_scalar(ctx), std::move(b));
}

static ScalarMatrix random_invertible(testutil::Rng& rng, const FieldContext& ctx, std::size_t n) {
  for (;;) {
    ScalarMatrix m(n, n, ctx);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rng.scalar(ctx);
    if (!determinant(m).is_zero()) return m;
  }
}

TEST_CASE("dilation composition") {
  Dilation d = compose(d1("2", "1"), d1("3", "5"));
  CHECK(d.ratio == parse_scalar("6", Q));
  CHECK(d.translation[0] == parse_scalar("11", Q));

  Dilation g = d1("3", "-2");
  CHECK(compose(g, inverse(g)) == Dilation::identity(Q, 1));
  CHECK(compose(inverse(g), g) == Dilation::identity(Q, 1));

  CHECK(code_of([&] { Dilation(ExactScalar(Rational(0)), {ExactScalar(Rational(1))}); }) ==
        errc::zero_alpha);
  CHECK(code_of([&] { compose(g, Dilation::identity(Q, 2)); }) == errc::dimension_mismatch);

  std::vector<ExactScalar> z = {parse_scalar("7", Q)};
  CHECK(g(z)[0] == parse_scalar("19", Q));
  CHECK(code_of([&] { g({}); }) == errc::dimension_mismatch);
}

TEST_CASE("dilation group axioms") {
  testutil::Rng rng(20260819);
  std::vector<FieldContext> ctxs = {Q, FieldContext::gaussian(),
                                    extension_context("x^2-x+1")};
  for (const FieldContext& ctx : ctxs) {
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t n = static_cast<std::size_t>(rng.i(1, 3));
      Dilation a = random_dilation(rng, ctx, n);
      Dilation b = random_dilation(rng, ctx, n);
      Dilation c = random_dilation(rng, ctx, n);

      CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
      CHECK(compose(a, inverse(a)) == Dilation::identity(ctx, n));
      CHECK(compose(Dilation::identity(ctx, n), a) == a);
      CHECK(compose(a, Dilation::identity(ctx, n)) == a);

      // composition acts like composition
      std::vector<ExactScalar> z;
      for (std::size_t i = 0; i < n; ++i) z.push_back(rng.scalar(ctx));
      CHECK(compose(a, b)(z) == a(b(z)));

      // conjugate dilations share the ratio
      CHECK(compose(compose(a, b), inverse(a)).ratio == b.ratio);
    }
  }
}

TEST_CASE("matrix action on dilations") {
  Dilation d(parse_scalar("5", Q), {parse_scalar("1", Q), parse_scalar("-3", Q)});
  ScalarMatrix id = ScalarMatrix::identity(2, Q);
  CHECK(act(id, d) == d);

  ScalarMatrix two(2, 2, Q);
  two.at(0, 0) = two.at(1, 1) = ExactScalar(Rational(2));
  Dilation dd = act(two, d);
  CHECK(dd.ratio == d.ratio);
  CHECK(dd.translation[0] == parse_scalar("2", Q));
  CHECK(dd.translation[1] == parse_scalar("-6", Q));

  CHECK(code_of([&] { act(ScalarMatrix::identity(3, Q), d); }) == errc::dimension_mismatch);
  ScalarMatrix rect(2, 3, Q);
  CHECK(code_of([&] { act(rect, d); }) == errc::dimension_mismatch);

  testutil::Rng rng(31415);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.i(1, 3));
    Dilation a = random_dilation(rng, Q, n);
    Dilation b = random_dilation(rng, Q, n);
    ScalarMatrix A = random_invertible(rng, Q, n);
    ScalarMatrix B = random_invertible(rng, Q, n);

    CHECK(act(A * B, a) == act(A, act(B, a)));
    CHECK(act(A, compose(a, b)) == compose(act(A, a), act(A, b)));
  }
}

TEST_CASE("based representation space of the trefoil") {
  WirtingerPresentation tre = builtin_knot("trefoil");
  Representation triv = trivial_representation(tre);

  FieldContext F = extension_context("x^2-x+1");
  ExactScalar theta = ExactScalar::generator(F);
  ExactScalar alpha = theta.inverse();

  BasedRepSpace space = solve_based_reps(tre, triv, alpha);
  REQUIRE(space.dimension == 1);
  REQUIRE(space.basis.size() == 1);
  REQUIRE(space.basis[0].size() == 2);
  CHECK(space.basis[0][0] == parse_scalar("1-theta", F));
  CHECK(space.basis[0][1] == parse_scalar("1", F));
  CHECK(space.alpha == alpha);

  // independent check of the defining relations alpha*b_i + b_j = alpha*b_k + b_i
  std::vector<ExactScalar> b = {ExactScalar::zero(F), space.basis[0][0], space.basis[0][1]};
  for (const auto& rel : tre.relations) {
    CHECK(alpha * b[rel[0]] + b[rel[1]] == alpha * b[rel[2]] + b[rel[0]]);
  }

  // the inverse ratio works too: zeros of the untwisted polynomial come in pairs
  CHECK(solve_based_reps(tre, triv, theta).dimension == 1);

  CHECK(solve_based_reps(tre, triv, parse_scalar("2", Q)).dimension == 0);
  CHECK(solve_based_reps(tre, triv, ExactScalar::generator(FieldContext::gaussian())).dimension ==
        0);

  CHECK(code_of([&] { solve_based_reps(tre, triv, ExactScalar(Rational(0))); }) ==
        errc::zero_alpha);
  CHECK(code_of([&] {
          solve_based_reps(tre, scalar_representation(tre, ExactScalar::generator(
                                                               FieldContext::gaussian())),
                           theta);
        }) == errc::context_mismatch);
}

TEST_CASE("based spaces of the other builtins") {
  WirtingerPresentation unknot = builtin_knot("unknot");
  CHECK(solve_based_reps(unknot, trivial_representation(unknot), parse_scalar("7", Q)).dimension ==
        0);

  WirtingerPresentation f8 = builtin_knot("figure8");
  FieldContext F = extension_context("x^2-3x+1");
  ExactScalar theta = ExactScalar::generator(F);
  CHECK(solve_based_reps(f8, trivial_representation(f8), theta.inverse()).dimension == 1);
  CHECK(solve_based_reps(f8, trivial_representation(f8), parse_scalar("-1", Q)).dimension == 0);

  // scalar twist by 2: zeros of D move to zeros of t^2 - t/2 + 1/4
  WirtingerPresentation tre = builtin_knot("trefoil");
  Representation two = scalar_representation(tre, ExactScalar(Rational(2)));
  FieldContext G = extension_context("x^2-1/2x+1/4");
  ExactScalar mu = ExactScalar::generator(G);
  CHECK(solve_based_reps(tre, two, mu.inverse()).dimension == 1);
  CHECK(solve_based_reps(tre, two, parse_scalar("1", Q)).dimension == 0);

  // redundant relations are re-verified and harmless
  WirtingerPresentation padded = parse_presentation(
      "generators 3\nrel 0 1 2\nrel 1 2 0\nrel 2 0 1\nrel 0 1 2\n");
  FieldContext E = extension_context("x^2-x+1");
  CHECK(solve_based_reps(padded, trivial_representation(padded),
                         ExactScalar::generator(E).inverse())
            .dimension == 1);
}

TEST_CASE("theorem verification at exact roots") {
  WirtingerPresentation tre = builtin_knot("trefoil");
  Representation triv = trivial_representation(tre);

  FieldContext F = extension_context("x^2-x+1");
  ExactScalar theta = ExactScalar::generator(F);

  TheoremReport r = verify_theorem(tre, triv, theta.inverse(), true);
  CHECK(r.nullity == 1);
  CHECK(r.max_r == 1);
  CHECK(r.agree);
  CHECK(r.alpha_inv == theta);
  REQUIRE(r.polynomials.size() == 2);
  CHECK(r.polynomials[0] == parse_poly("t^2 - t + 1", Q).embedded(F));

  r = verify_theorem(tre, triv, parse_scalar("1", Q));
  CHECK(r.nullity == 0);
  CHECK(r.max_r == 0);
  CHECK(r.agree);

  r = verify_theorem(tre, triv, parse_scalar("2", Q));
  CHECK(r.nullity == 0);
  CHECK(r.max_r == 0);
  CHECK(r.agree);

  WirtingerPresentation f8 = builtin_knot("figure8");
  FieldContext F8 = extension_context("x^2-3x+1");
  r = verify_theorem(f8, trivial_representation(f8), ExactScalar::generator(F8).inverse(), true);
  CHECK(r.nullity == 1);
  CHECK(r.max_r == 1);
  CHECK(r.agree);

  WirtingerPresentation unknot = builtin_knot("unknot");
  r = verify_theorem(unknot, trivial_representation(unknot), parse_scalar("-3/2", Q));
  CHECK(r.nullity == 0);
  CHECK(r.max_r == 0);
  CHECK(r.agree);
  REQUIRE(r.polynomials.size() == 1);
  CHECK(r.polynomials[0].is_one());
}

TEST_CASE("theorem verification for the parabolic twist") {
  WirtingerPresentation tre = builtin_knot("trefoil");
  Representation gamma = sl2_trefoil();

  // D_1 = (t-1)^2 (t^2+1); the dilation space is 1-dimensional at each zero
  TheoremReport r = verify_theorem(tre, gamma, parse_scalar("1", Q), true);
  CHECK(r.nullity == 1);
  CHECK(r.max_r == 1);
  CHECK(r.agree);

  FieldContext G = FieldContext::gaussian();
  for (const char* a : {"i", "-i"}) {
    r = verify_theorem(tre, gamma, parse_scalar(a, G));
    CHECK(r.nullity == 1);
    CHECK(r.max_r == 1);
    CHECK(r.agree);
  }

  r = verify_theorem(tre, gamma, parse_scalar("2", Q));
  CHECK(r.nullity == 0);
  CHECK(r.agree);
}

TEST_CASE("a composite knot gives a two-dimensional space") {
  // granny knot: zeros of t^2 - t + 1 annihilate both factors of D_1, and D_2
  WirtingerPresentation granny = from_braid({3, {1, 1, 1, 2, 2, 2}});
  Representation triv = trivial_representation(granny);

  auto inv = alexander_report(granny, 3, true);
  LaurentPoly d1 = parse_poly("t^2 - t + 1", Q);
  CHECK(inv.polynomials[0] == normalize(d1 * d1).q);
  CHECK(inv.polynomials[1] == d1);
  CHECK(inv.polynomials[2].is_one());

  FieldContext F = extension_context("x^2-x+1");
  ExactScalar theta = ExactScalar::generator(F);
  TheoremReport r = verify_theorem(granny, triv, theta.inverse(), true);
  CHECK(r.nullity == 2);
  CHECK(r.max_r == 2);
  CHECK(r.agree);
  REQUIRE(r.space.basis.size() == 2);

  // basis vectors are independent solutions, not proportional
  CHECK(code_of([&] { conjugacy_witness(r.space.basis[0], r.space.basis[1]); }) ==
        errc::not_proportional);
}

TEST_CASE("theorem holds at random ratios") {
  testutil::Rng rng(271828);
  WirtingerPresentation unknot = builtin_knot("unknot");
  WirtingerPresentation tre = builtin_knot("trefoil");
  WirtingerPresentation f8 = builtin_knot("figure8");

  struct Case {
    WirtingerPresentation p;
    Representation gamma;
  };
  std::vector<Case> cases = {
      {unknot, trivial_representation(unknot)},
      {tre, trivial_representation(tre)},
      {f8, trivial_representation(f8)},
      {tre, scalar_representation(tre, ExactScalar(Rational(2)))},
      {f8, scalar_representation(f8, ExactScalar(Rational(-1)))},
      {tre, sl2_trefoil()},
  };
  for (const Case& c : cases) {
    for (int trial = 0; trial < 20; ++trial) {
      ExactScalar alpha = rng.nonzero_scalar(Q, 5);
      TheoremReport r = verify_theorem(c.p, c.gamma, alpha);
      CHECK(r.agree);
    }
  }
}

TEST_CASE("conjugacy witnesses") {
  FieldContext F = extension_context("x^2-x+1");
  std::vector<ExactScalar> s1 = {parse_scalar("1-theta", F), parse_scalar("1", F)};

  CHECK(conjugacy_witness(s1, s1) == ExactScalar::one(F));

  std::vector<ExactScalar> half = {s1[0] / ExactScalar(Rational(2)),
                                   s1[1] / ExactScalar(Rational(2))};
  ExactScalar beta = conjugacy_witness(s1, half);
  CHECK(beta == parse_scalar("2", F));

  // conjugating by z -> beta*z carries the first representation to the second
  for (std::size_t i = 0; i < s1.size(); ++i) {
    Dilation d(parse_scalar("1-theta", F), {s1[i]});
    Dilation g(beta, {ExactScalar::zero(F)});
    Dilation conj = compose(inverse(g), compose(d, g));
    CHECK(conj.ratio == d.ratio);
    CHECK(conj.translation[0] == half[i]);
  }

  std::vector<ExactScalar> zero = {ExactScalar::zero(F), ExactScalar::zero(F)};
  CHECK(code_of([&] { conjugacy_witness(zero, s1); }) == errc::zero_representation);
  CHECK(code_of([&] { conjugacy_witness(s1, zero); }) == errc::zero_representation);

  std::vector<ExactScalar> skew = {parse_scalar("1", F), parse_scalar("0", F)};
  CHECK(code_of([&] { conjugacy_witness(s1, skew); }) == errc::not_proportional);
  std::vector<ExactScalar> longer = {s1[0], s1[1], parse_scalar("1", F)};
  CHECK(code_of([&] { conjugacy_witness(s1, longer); }) == errc::not_proportional);
  std::vector<ExactScalar> other = {parse_scalar("1", F), parse_scalar("2", F)};
  CHECK(code_of([&] { conjugacy_witness(s1, other); }) == errc::not_proportional);
}

TEST_CASE("witnesses pair up solutions from a one-dimensional space") {
  WirtingerPresentation tre = builtin_knot("trefoil");
  FieldContext F = extension_context("x^2-x+1");
  ExactScalar alpha = ExactScalar::generator(F).inverse();
  BasedRepSpace space = solve_based_reps(tre, trivial_representation(tre), alpha);
  REQUIRE(space.dimension == 1);

  testutil::Rng rng(1618);
  for (int trial = 0; trial < 25; ++trial) {
    ExactScalar c = rng.nonzero_scalar(F);
    std::vector<ExactScalar> scaled;
    for (const ExactScalar& x : space.basis[0]) scaled.push_back(c * x);
    ExactScalar beta = conjugacy_witness(space.basis[0], scaled);
    CHECK(beta == c.inverse());
    for (std::size_t i = 0; i < scaled.size(); ++i)
      CHECK(beta.inverse() * space.basis[0][i] == scaled[i]);
  }
}
