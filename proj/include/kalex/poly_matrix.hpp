#pragma once

// Exact linear algebra: matrices over a coefficient field or over the
// Laurent ring, fraction-free determinants, Smith normal form over F[t,t^-1]
// (a PID, so diagonalization with a divisibility chain exists), the gcd-of-
// minors oracle, and exact null spaces.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "laurent.hpp"

namespace kalex {

template <class T>
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}

  Matrix(std::size_t rows, std::size_t cols, FieldContext ctx)
      : rows_(rows), cols_(cols), ctx_(std::move(ctx)), a_(rows * cols, T::zero(ctx_)) {}

  static Matrix identity(std::size_t n, const FieldContext& ctx) {
    Matrix m(n, n, ctx);
    for (std::size_t k = 0; k < n; ++k) m.at(k, k) = T::one(ctx);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldContext& context() const { return ctx_; }

  T& at(std::size_t i, std::size_t j) {
    check(i, j);
    return a_[i * cols_ + j];
  }
  const T& at(std::size_t i, std::size_t j) const {
    check(i, j);
    return a_[i * cols_ + j];
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.a_.size(); ++k)
      if (!(a.a_[k] == b.a_[k])) return false;
    return true;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_)
      throw error(errc::index_out_of_range,
                  "matrix index (" + std::to_string(i) + "," + std::to_string(j) + ") outside " +
                      std::to_string(rows_) + "x" + std::to_string(cols_));
  }

  std::size_t rows_, cols_;
  FieldContext ctx_;
  std::vector<T> a_;
};

using ScalarMatrix = Matrix<ExactScalar>;
using PolyMatrix = Matrix<LaurentPoly>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows())
    throw error(errc::size_mismatch, "cannot multiply " + std::to_string(a.rows()) + "x" +
                                         std::to_string(a.cols()) + " by " +
                                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  Matrix<T> r(a.rows(), b.cols(), a.context());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return r;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw error(errc::size_mismatch, "matrix shapes differ");
  Matrix<T> r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) += b.at(i, j);
  return r;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw error(errc::size_mismatch, "matrix shapes differ");
  Matrix<T> r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) -= b.at(i, j);
  return r;
}

template <class T>
std::vector<T> mat_vec(const Matrix<T>& m, const std::vector<T>& v) {
  if (m.cols() != v.size())
    throw error(errc::size_mismatch, "matrix-vector size mismatch");
  std::vector<T> r(m.rows(), T::zero(m.context()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m.at(i, j) * v[j];
  return r;
}

inline ExactScalar exact_div(const ExactScalar& a, const ExactScalar& b) { return a / b; }

// Fraction-free Gaussian elimination (Bareiss).  Every division is exact
// by Sylvester's identity, so entries never leave the ring.
template <class T>
T determinant(Matrix<T> m) {
  if (m.rows() != m.cols())
    throw error(errc::not_square, "determinant of a " + std::to_string(m.rows()) + "x" +
                                      std::to_string(m.cols()) + " matrix");
  std::size_t n = m.rows();
  if (n == 0) return T::one(m.context());
  bool negate = false;
  T prev = T::one(m.context());
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && m.at(p, k).is_zero()) ++p;
    if (p == n) return T::zero(m.context());
    if (p != k) {
      m.swap_rows(p, k);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m.at(i, j) = exact_div(m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j), prev);
      m.at(i, k) = T::zero(m.context());
    }
    prev = m.at(k, k);
  }
  T det = m.at(n - 1, n - 1);
  return negate ? -det : det;
}

namespace detail {

// span of a nonzero Laurent entry; the pivot measure for Smith reduction.
inline long long entry_span(const LaurentPoly& p) { return p.span(); }

inline void row_submul(PolyMatrix& a, std::size_t dst, std::size_t src, const LaurentPoly& q) {
  for (std::size_t j = 0; j < a.cols(); ++j) a.at(dst, j) -= q * a.at(src, j);
}

inline void col_submul(PolyMatrix& a, std::size_t dst, std::size_t src, const LaurentPoly& q) {
  for (std::size_t i = 0; i < a.rows(); ++i) a.at(i, dst) -= q * a.at(i, src);
}

inline void row_add(PolyMatrix& a, std::size_t dst, std::size_t src) {
  for (std::size_t j = 0; j < a.cols(); ++j) a.at(dst, j) += a.at(src, j);
}

}  // namespace detail

// Smith normal form over F[t, t^-1].  Returns the diagonal d_1 | d_2 | ...,
// each nonzero entry in canonical (monic, honest) form, zeros trailing.
// Pivots are chosen by minimal exponent span; the Laurent-aware division
// step guarantees every remainder has strictly smaller span, which is what
// makes the reduction terminate.
inline std::vector<LaurentPoly> smith_normal_form(PolyMatrix a) {
  const FieldContext& ctx = a.context();
  ExactScalar unit_one = ExactScalar::one(ctx);

  // Units are free: shift each row so no entry keeps a negative exponent.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    long long m = 0;
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a.at(i, j).is_zero()) m = std::min(m, a.at(i, j).min_exp());
    if (m < 0)
      for (std::size_t j = 0; j < a.cols(); ++j)
        a.at(i, j) = a.at(i, j).mul_monomial(unit_one, -m);
  }

  std::size_t n = std::min(a.rows(), a.cols());
  std::vector<LaurentPoly> diag(n, LaurentPoly::zero(ctx));

  for (std::size_t s = 0; s < n; ++s) {
    bool any = false;
    for (std::size_t i = s; i < a.rows() && !any; ++i)
      for (std::size_t j = s; j < a.cols() && !any; ++j)
        if (!a.at(i, j).is_zero()) any = true;
    if (!any) break;

    for (;;) {
      std::size_t pi = 0, pj = 0;
      bool have = false;
      long long best = 0;
      for (std::size_t i = s; i < a.rows(); ++i)
        for (std::size_t j = s; j < a.cols(); ++j) {
          if (a.at(i, j).is_zero()) continue;
          long long sp = detail::entry_span(a.at(i, j));
          if (!have || sp < best) {
            have = true;
            best = sp;
            pi = i;
            pj = j;
          }
        }
      if (!have) throw error(errc::internal_check_failed, "Smith pivot vanished mid-reduction");
      if (pi != s) a.swap_rows(pi, s);
      if (pj != s) a.swap_cols(pj, s);

      bool dirty = false;
      for (std::size_t i = s + 1; i < a.rows(); ++i) {
        if (a.at(i, s).is_zero()) continue;
        auto [q, r] = laurent_divmod(a.at(i, s), a.at(s, s));
        detail::row_submul(a, i, s, q);
        if (!r.is_zero()) dirty = true;
      }
      if (dirty) continue;
      for (std::size_t j = s + 1; j < a.cols(); ++j) {
        if (a.at(s, j).is_zero()) continue;
        auto [q, r] = laurent_divmod(a.at(s, j), a.at(s, s));
        detail::col_submul(a, j, s, q);
        if (!r.is_zero()) dirty = true;
      }
      if (dirty) continue;

      bool fixed = false;
      for (std::size_t i = s + 1; i < a.rows() && !fixed; ++i)
        for (std::size_t j = s + 1; j < a.cols() && !fixed; ++j)
          if (!a.at(i, j).is_zero() && !divides(a.at(s, s), a.at(i, j))) {
            detail::row_add(a, s, i);
            fixed = true;
          }
      if (!fixed) break;
    }
    diag[s] = a.at(s, s);
  }

  for (auto& d : diag)
    if (!d.is_zero()) d = normalize(d).q;
  for (std::size_t s = 0; s + 1 < diag.size(); ++s)
    if (!divides(diag[s], diag[s + 1]))
      throw error(errc::internal_check_failed, "Smith diagonal lost its divisibility chain");
  return diag;
}

namespace detail {

inline bool next_combination(std::vector<std::size_t>& idx, std::size_t limit) {
  std::size_t k = idx.size();
  for (std::size_t p = k; p-- > 0;) {
    if (idx[p] + (k - p) < limit) {
      ++idx[p];
      for (std::size_t q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail

// gcd of all k x k minors, in canonical form (0 when every minor vanishes).
// Deliberately combinatorial: this is the verification oracle for the Smith
// route, so it must stay an independent computation.  Gated to small
// matrices because the number of minors explodes.
inline LaurentPoly gcd_of_minors(const PolyMatrix& m, std::size_t k) {
  if (k > std::min(m.rows(), m.cols()))
    throw error(errc::k_too_large, "no " + std::to_string(k) + "x" + std::to_string(k) +
                                       " minors in a " + std::to_string(m.rows()) + "x" +
                                       std::to_string(m.cols()) + " matrix");
  if (std::max(m.rows(), m.cols()) > 8)
    throw error(errc::k_too_large, "minors oracle is gated to matrices of size <= 8");
  if (k == 0) return LaurentPoly::one(m.context());

  LaurentPoly acc = LaurentPoly::zero(m.context());
  std::vector<std::size_t> ri(k), ci(k);
  for (std::size_t p = 0; p < k; ++p) ri[p] = p;
  do {
    for (std::size_t p = 0; p < k; ++p) ci[p] = p;
    do {
      PolyMatrix sub(k, k, m.context());
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = m.at(ri[i], ci[j]);
      LaurentPoly d = determinant(sub);
      if (!d.is_zero()) acc = acc.is_zero() ? normalize(d).q : gcd(acc, d);
    } while (detail::next_combination(ci, m.cols()));
  } while (detail::next_combination(ri, m.rows()));
  return acc;
}

// Reduced row echelon form in place; returns the pivot column of each of the
// first rank rows.
inline std::vector<std::size_t> rref(ScalarMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m.at(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r) m.swap_rows(p, r);
    ExactScalar inv = m.at(r, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      ExactScalar f = m.at(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(ScalarMatrix m) { return rref(m).size(); }

// Canonical basis of the right null space: one vector per free column, with
// a 1 in that column.  Deterministic by construction.
inline std::vector<std::vector<ExactScalar>> null_space(ScalarMatrix m) {
  std::size_t cols = m.cols();
  std::vector<std::size_t> pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;

  std::vector<std::vector<ExactScalar>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<ExactScalar> v(cols, ExactScalar::zero(m.context()));
    v[f] = ExactScalar::one(m.context());
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline ScalarMatrix evaluate_matrix(const PolyMatrix& m, const ExactScalar& alpha) {
  FieldContext ctx = common_context(m.context(), alpha.context());
  ScalarMatrix out(m.rows(), m.cols(), ctx);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = evaluate(m.at(i, j), alpha);
  return out;
}

inline std::string matrix_str(const PolyMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += m.at(i, j).str(false);
    }
    out += '\n';
  }
  return out;
}

inline std::string matrix_str(const ScalarMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += m.at(i, j).str();
    }
    out += '\n';
  }
  return out;
}

}  // namespace kalex
