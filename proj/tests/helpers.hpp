#pragma once

// Shared test utilities: error-code capture and seeded random generators
// for scalars and polynomials.  All random tests fix their seeds so a
// failure is reproducible.

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <stdexcept>

#include <kalex/laurent.hpp>

namespace testutil {

template <class F>
kalex::errc code_of(F&& f) {
  try {
    f();
  } catch (const kalex::error& e) {
    return e.code();
  }
  throw std::runtime_error("expected a kalex::error, none was thrown");
}

struct Rng {
  std::mt19937 g;
  explicit Rng(std::uint32_t seed) : g(seed) {}

  long long i(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(g);
  }

  kalex::Rational rat(long long mag = 9, long long dmax = 6) {
    kalex::Rational num(i(-mag, mag));
    kalex::Rational den(i(1, dmax));
    return num / den;
  }

  kalex::ExactScalar scalar(const kalex::FieldContext& ctx, long long mag = 9) {
    kalex::qpoly::Vec c(ctx.degree());
    for (auto& x : c) x = rat(mag);
    return kalex::ExactScalar(ctx, std::move(c));
  }

  kalex::ExactScalar nonzero_scalar(const kalex::FieldContext& ctx, long long mag = 9) {
    for (;;) {
      kalex::ExactScalar s = scalar(ctx, mag);
      if (!s.is_zero()) return s;
    }
  }

  kalex::LaurentPoly poly(const kalex::FieldContext& ctx, long long emin, long long emax,
                          long long mag = 6) {
    kalex::LaurentPoly p(ctx);
    for (long long e = emin; e <= emax; ++e) {
      if (i(0, 2) == 0) continue;  // keep some sparsity
      p.add_term(e, scalar(ctx, mag));
    }
    return p;
  }

  kalex::LaurentPoly nonzero_poly(const kalex::FieldContext& ctx, long long emin, long long emax,
                                  long long mag = 6) {
    for (;;) {
      kalex::LaurentPoly p = poly(ctx, emin, emax, mag);
      if (!p.is_zero()) return p;
    }
  }
};

}  // namespace testutil
