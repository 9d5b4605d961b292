#pragma once

// Alexander invariants, classical and twisted.  From a Wirtinger relation
// x_i x_j = x_k x_i the free-calculus row has coefficient 1 - t on x_i,
// t on x_j and -1 on x_k; twisting by a representation gamma turns those
// into the blocks I - tX_k, tX_i and -I.  Basing drops the x_0 column
// (block) and one redundant relation row (block), the last by default.

#include <cstddef>
#include <string>
#include <vector>

#include "knot_presentation.hpp"

namespace kalex {

constexpr std::size_t kDropLast = static_cast<std::size_t>(-1);

namespace detail {

inline std::size_t resolve_dropped(const WirtingerPresentation& p, std::size_t drop_relation) {
  if (p.relations.empty()) return 0;
  if (drop_relation == kDropLast) return p.relations.size() - 1;
  if (drop_relation >= p.relations.size())
    throw error(errc::index_out_of_range,
                "cannot drop relation " + std::to_string(drop_relation) + " of " +
                    std::to_string(p.relations.size()));
  return drop_relation;
}

}  // namespace detail

// Based Alexander matrix over Q: one row per retained relation, one column
// per generator x_1..x_n.  Coinciding indices accumulate.
inline PolyMatrix alexander_matrix(const WirtingerPresentation& p,
                                   std::size_t drop_relation = kDropLast) {
  p.validate();
  FieldContext ctx = FieldContext::rationals();
  std::size_t dropped = detail::resolve_dropped(p, drop_relation);
  std::size_t rows = p.relations.empty() ? 0 : p.relations.size() - 1;
  std::size_t cols = p.num_generators - 1;
  PolyMatrix m(rows, cols, ctx);
  LaurentPoly t = LaurentPoly::variable(ctx);
  LaurentPoly one = LaurentPoly::one(ctx);
  std::size_t row = 0;
  for (std::size_t r = 0; r < p.relations.size(); ++r) {
    if (r == dropped && !p.relations.empty()) continue;
    auto [i, j, k] = p.relations[r];
    if (i != 0) m.at(row, i - 1) += one - t;
    if (j != 0) m.at(row, j - 1) += t;
    if (k != 0) m.at(row, k - 1) -= one;
    ++row;
  }
  return m;
}

// Based twisted Alexander matrix M_gamma: the same layout with N x N blocks.
inline PolyMatrix twisted_alexander_matrix(const WirtingerPresentation& p,
                                           const Representation& rep,
                                           std::size_t drop_relation = kDropLast) {
  p.validate();
  validate_representation(p, rep);
  FieldContext ctx = rep.context();
  std::size_t N = rep.dimension;
  std::size_t dropped = detail::resolve_dropped(p, drop_relation);
  std::size_t rows = (p.relations.empty() ? 0 : p.relations.size() - 1) * N;
  std::size_t cols = (p.num_generators - 1) * N;
  PolyMatrix m(rows, cols, ctx);

  auto add_block = [&](std::size_t row_block, std::size_t col_gen, const ScalarMatrix& x,
                       long long texp, int sign) {
    // adds sign * t^texp * x to the block for generator col_gen
    if (col_gen == 0) return;
    std::size_t r0 = row_block * N, c0 = (col_gen - 1) * N;
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b) {
        ExactScalar v = sign < 0 ? -x.at(a, b) : x.at(a, b);
        m.at(r0 + a, c0 + b) += LaurentPoly::monomial(ctx, v, texp);
      }
  };

  ScalarMatrix eye = ScalarMatrix::identity(N, ctx);
  std::size_t row = 0;
  for (std::size_t r = 0; r < p.relations.size(); ++r) {
    if (r == dropped && !p.relations.empty()) continue;
    auto [i, j, k] = p.relations[r];
    add_block(row, i, eye, 0, +1);                  // I
    add_block(row, i, rep.images[k], 1, -1);        // - t X_k
    add_block(row, j, rep.images[i], 1, +1);        // + t X_i
    add_block(row, k, eye, 0, -1);                  // - I
    ++row;
  }
  return m;
}

// Elementary polynomials Delta_r = d_1 ... d_{m-r+1} from the Smith diagonal
// of the based matrix with m columns.  When m - r + 1 <= 0 there is nothing
// left to measure and Delta_r = 1; when the matrix has too few rows for
// minors of that size the ideal is empty and Delta_r = 0.  With the oracle
// enabled, every value is recomputed as a gcd of minors and compared.
inline std::vector<LaurentPoly> elementary_polynomials(const PolyMatrix& m, std::size_t rmax,
                                                       bool check_with_minors_oracle = false) {
  std::vector<LaurentPoly> diag = smith_normal_form(m);
  long long cols = static_cast<long long>(m.cols());
  long long limit = static_cast<long long>(diag.size());
  std::vector<LaurentPoly> out;
  for (std::size_t r = 1; r <= rmax; ++r) {
    long long k = cols - static_cast<long long>(r) + 1;
    LaurentPoly value(m.context());
    if (k <= 0) {
      value = LaurentPoly::one(m.context());
    } else if (k > limit) {
      value = LaurentPoly::zero(m.context());
    } else {
      LaurentPoly prod = LaurentPoly::one(m.context());
      bool zero = false;
      for (long long s = 0; s < k; ++s) {
        if (diag[static_cast<std::size_t>(s)].is_zero()) zero = true;
        prod *= diag[static_cast<std::size_t>(s)];
      }
      value = zero ? LaurentPoly::zero(m.context()) : normalize(prod).q;
    }
    if (check_with_minors_oracle && k >= 1 && k <= limit) {
      LaurentPoly byMinors = gcd_of_minors(m, static_cast<std::size_t>(k));
      if (!(byMinors == value))
        throw error(errc::internal_check_failed,
                    "Smith route gives " + value.str(false) + " but the minors gcd is " +
                        byMinors.str(false) + " for r=" + std::to_string(r));
    }
    out.push_back(std::move(value));
  }
  return out;
}

struct InvariantReport {
  PolyMatrix matrix;
  std::vector<LaurentPoly> polynomials;  // index r-1 holds Delta_r (or D_r)
  std::size_t dropped_generator = 0;
  std::size_t dropped_relation = 0;
  bool twisted = false;
  bool oracle_checked = false;
};

inline InvariantReport alexander_report(const WirtingerPresentation& p, std::size_t rmax,
                                        bool oracle = false,
                                        std::size_t drop_relation = kDropLast) {
  InvariantReport rep;
  rep.matrix = alexander_matrix(p, drop_relation);
  rep.polynomials = elementary_polynomials(rep.matrix, rmax, oracle);
  rep.dropped_relation = detail::resolve_dropped(p, drop_relation);
  rep.oracle_checked = oracle;
  return rep;
}

inline InvariantReport twisted_report(const WirtingerPresentation& p, const Representation& gamma,
                                      std::size_t rmax, bool oracle = false,
                                      std::size_t drop_relation = kDropLast) {
  InvariantReport rep;
  rep.matrix = twisted_alexander_matrix(p, gamma, drop_relation);
  rep.polynomials = elementary_polynomials(rep.matrix, rmax, oracle);
  rep.dropped_relation = detail::resolve_dropped(p, drop_relation);
  rep.twisted = true;
  rep.oracle_checked = oracle;
  return rep;
}

// Wada's invariant W_gamma = D_gamma,1 / det(t X_0 - I).  The denominator
// uses the full (unbased) image of the dropped generator, and the quotient
// is reported reduced with both parts canonical.
inline RationalFunction wada_invariant(const WirtingerPresentation& p, const Representation& gamma) {
  p.validate();
  validate_representation(p, gamma);
  FieldContext ctx = gamma.context();
  std::size_t N = gamma.dimension;
  PolyMatrix den(N, N, ctx);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      den.at(a, b) = LaurentPoly::monomial(ctx, gamma.images[0].at(a, b), 1);
      if (a == b) den.at(a, b) -= LaurentPoly::one(ctx);
    }
  LaurentPoly d1 = elementary_polynomials(twisted_alexander_matrix(p, gamma), 1)[0];
  return RationalFunction::reduced(d1, determinant(den));
}

struct ReciprocityReport {
  LaurentPoly polynomial;  // normalized D_gamma,1 (Delta_1 untwisted)
  bool closed = false;
};

inline ReciprocityReport reciprocity_report(const WirtingerPresentation& p,
                                            const Representation& gamma) {
  if (!gamma.context().is_rational())
    throw error(errc::non_rational_coefficients,
                "reciprocity is only tested over Q; the polynomial lives in " +
                    gamma.context().description());
  LaurentPoly d = elementary_polynomials(twisted_alexander_matrix(p, gamma), 1)[0];
  return {d, inversion_closed(d)};
}

inline ReciprocityReport reciprocity_report(const WirtingerPresentation& p) {
  LaurentPoly d = elementary_polynomials(alexander_matrix(p), 1)[0];
  return {d, inversion_closed(d)};
}

}  // namespace kalex
