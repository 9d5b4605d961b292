#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <kalex/alexander.hpp>
#include <kalex/errors.hpp>
#include <kalex/exact_field.hpp>
#include <kalex/knot_presentation.hpp>
#include <kalex/poly_matrix.hpp>

namespace kalex {

// Affine self-map z |-> ratio*z + translation of F^N.
struct Dilation {
  ExactScalar ratio;
  std::vector<ExactScalar> translation;

  Dilation(ExactScalar a, std::vector<ExactScalar> b)
      : ratio(std::move(a)), translation(std::move(b)) {
    if (ratio.is_zero()) throw error(errc::zero_alpha, "dilation ratio must be nonzero");
  }

  static Dilation identity(const FieldContext& ctx, std::size_t n) {
    return Dilation(ExactScalar::one(ctx),
                    std::vector<ExactScalar>(n, ExactScalar::zero(ctx)));
  }

  std::size_t dimension() const { return translation.size(); }

  std::vector<ExactScalar> operator()(const std::vector<ExactScalar>& z) const {
    if (z.size() != translation.size())
      throw error(errc::dimension_mismatch, "dilation applied to a vector of the wrong length");
    std::vector<ExactScalar> out;
    out.reserve(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) out.push_back(ratio * z[i] + translation[i]);
    return out;
  }
};

inline bool operator==(const Dilation& a, const Dilation& b) {
  return a.ratio == b.ratio && a.translation == b.translation;
}

inline Dilation compose(const Dilation& d1, const Dilation& d2) {
  if (d1.dimension() != d2.dimension())
    throw error(errc::dimension_mismatch, "cannot compose dilations of different dimensions");
  std::vector<ExactScalar> b;
  b.reserve(d1.dimension());
  for (std::size_t i = 0; i < d1.dimension(); ++i)
    b.push_back(d1.ratio * d2.translation[i] + d1.translation[i]);
  return Dilation(d1.ratio * d2.ratio, std::move(b));
}

inline Dilation inverse(const Dilation& d) {
  ExactScalar r = d.ratio.inverse();
  std::vector<ExactScalar> b;
  b.reserve(d.dimension());
  for (const ExactScalar& t : d.translation) b.push_back(-(r * t));
  return Dilation(std::move(r), std::move(b));
}

// The linear action A.d : z |-> ratio*z + A*translation; the ratio is untouched.
inline Dilation act(const ScalarMatrix& A, const Dilation& d) {
  if (A.rows() != A.cols() || A.rows() != d.dimension())
    throw error(errc::dimension_mismatch, "acting matrix must be square of the dilation dimension");
  return Dilation(d.ratio, mat_vec(A, d.translation));
}

// Based representation space: translation vectors (b_1, ..., b_n), b_0 = 0,
// giving generator images z |-> alpha*z + b_i for a fixed nonzero ratio alpha.
struct BasedRepSpace {
  ExactScalar alpha;
  std::size_t dimension = 0;
  std::vector<std::vector<ExactScalar>> basis;
};

namespace detail {

// Block b_g of a concatenated translation vector; generator 0 reads as the zero block.
inline std::vector<ExactScalar> translation_block(const std::vector<ExactScalar>& v,
                                                  std::size_t g, std::size_t N,
                                                  const FieldContext& ctx) {
  std::vector<ExactScalar> out(N, ExactScalar::zero(ctx));
  if (g == 0) return out;
  for (std::size_t c = 0; c < N; ++c) out[c] = v[(g - 1) * N + c];
  return out;
}

inline ScalarMatrix embed_matrix(const ScalarMatrix& m, const FieldContext& ctx) {
  ScalarMatrix out(m.rows(), m.cols(), ctx);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = ExactScalar::embed(m.at(i, j), ctx);
  return out;
}

}  // namespace detail

inline BasedRepSpace solve_based_reps(const WirtingerPresentation& p, const Representation& gamma,
                                      const ExactScalar& alpha) {
  p.validate();
  validate_representation(p, gamma);
  if (alpha.is_zero()) throw error(errc::zero_alpha, "dilation ratio must be nonzero");

  FieldContext ctx = common_context(alpha.context(), gamma.context());
  ExactScalar a = ExactScalar::embed(alpha, ctx);
  ExactScalar a_inv = a.inverse();
  std::size_t N = gamma.dimension;

  PolyMatrix m = twisted_alexander_matrix(p, gamma);
  BasedRepSpace space;
  space.alpha = a;
  space.basis = null_space(evaluate_matrix(m, a_inv));
  space.dimension = space.basis.size();

  // the null space came from the based matrix, which omits one relation; confirm
  // every solution honors alpha*b_i + X_i b_j = alpha*b_k + X_k b_i across all of them
  std::vector<ScalarMatrix> images;
  images.reserve(gamma.images.size());
  for (const ScalarMatrix& X : gamma.images) images.push_back(detail::embed_matrix(X, ctx));
  for (const std::vector<ExactScalar>& v : space.basis) {
    for (const auto& rel : p.relations) {
      std::vector<ExactScalar> bi = detail::translation_block(v, rel[0], N, ctx);
      std::vector<ExactScalar> bj = detail::translation_block(v, rel[1], N, ctx);
      std::vector<ExactScalar> bk = detail::translation_block(v, rel[2], N, ctx);
      std::vector<ExactScalar> xibj = mat_vec(images[rel[0]], bj);
      std::vector<ExactScalar> xkbi = mat_vec(images[rel[2]], bi);
      for (std::size_t c = 0; c < N; ++c) {
        if (!(a * bi[c] + xibj[c] == a * bk[c] + xkbi[c]))
          throw error(errc::internal_check_failed,
                      "based solution violates a dilation relation it should satisfy");
      }
    }
  }
  return space;
}

struct TheoremReport {
  ExactScalar alpha;
  ExactScalar alpha_inv;
  std::size_t nullity = 0;
  std::size_t max_r = 0;
  bool agree = false;
  std::vector<LaurentPoly> polynomials;
  BasedRepSpace space;
};

// Executable statement of the Burde-de Rham correspondence: the dimension of the
// based representation space at ratio alpha equals max{r : D_r(alpha^-1) = 0}.
inline TheoremReport verify_theorem(const WirtingerPresentation& p, const Representation& gamma,
                                    const ExactScalar& alpha, bool oracle = false) {
  TheoremReport rep;
  rep.space = solve_based_reps(p, gamma, alpha);
  rep.alpha = rep.space.alpha;
  rep.alpha_inv = rep.space.alpha.inverse();
  rep.nullity = rep.space.dimension;

  PolyMatrix m = twisted_alexander_matrix(p, gamma);
  rep.polynomials = elementary_polynomials(m, std::max<std::size_t>(m.cols(), 1), oracle);
  for (std::size_t r = 0; r < rep.polynomials.size(); ++r) {
    if (evaluate(rep.polynomials[r], rep.alpha_inv).is_zero()) rep.max_r = r + 1;
  }
  rep.agree = rep.nullity == rep.max_r;
  return rep;
}

// For a one-dimensional space: the scalar beta with s2 = beta^-1 * s1, so that
// conjugating the first representation by z |-> beta*z gives the second.
inline ExactScalar conjugacy_witness(const std::vector<ExactScalar>& s1,
                                     const std::vector<ExactScalar>& s2) {
  auto nonzero = [](const std::vector<ExactScalar>& v) {
    for (const ExactScalar& x : v)
      if (!x.is_zero()) return true;
    return false;
  };
  if (!nonzero(s1) || !nonzero(s2))
    throw error(errc::zero_representation, "conjugacy witness requires nonzero representations");
  if (s1.size() != s2.size())
    throw error(errc::not_proportional, "representation vectors have different lengths");

  FieldContext ctx = s1[0].context();
  ExactScalar beta = ExactScalar::zero(ctx);
  for (std::size_t i = 0; i < s1.size(); ++i) {
    if (s1[i].is_zero() != s2[i].is_zero())
      throw error(errc::not_proportional, "representation vectors are not proportional");
    if (!s2[i].is_zero() && beta.is_zero()) beta = s1[i] / s2[i];
  }
  for (std::size_t i = 0; i < s1.size(); ++i) {
    if (!(s1[i] == beta * s2[i]))
      throw error(errc::not_proportional, "representation vectors are not proportional");
  }
  return beta;
}

}  // namespace kalex
