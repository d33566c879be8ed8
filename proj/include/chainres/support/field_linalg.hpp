#pragma once

#include <optional>
#include <vector>

#include "chainres/support/matrix.hpp"

namespace chainres::linalg {

template <class F>
using Vec = std::vector<typename F::value_type>;
template <class F>
using Mat = Matrix<typename F::value_type>;

template <class F>
Mat<F> zeros(const F& k, std::size_t r, std::size_t c) {
  return Mat<F>(r, c, k.zero());
}

template <class F>
Mat<F> identity(const F& k, std::size_t n) {
  Mat<F> m = zeros(k, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = k.one();
  return m;
}

template <class F>
Vec<F> zero_vec(const F& k, std::size_t n) {
  return Vec<F>(n, k.zero());
}

template <class F>
bool is_zero(const F& k, const Vec<F>& v) {
  for (const auto& x : v)
    if (!k.is_zero(x)) return false;
  return true;
}

template <class F>
bool is_zero(const F& k, const Mat<F>& m) {
  for (const auto& x : m.data())
    if (!k.is_zero(x)) return false;
  return true;
}

template <class F>
Mat<F> mul(const F& k, const Mat<F>& a, const Mat<F>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  Mat<F> c = zeros(k, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const auto& x = a(i, l);
      if (k.is_zero(x)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const auto& y = b(l, j);
        if (!k.is_zero(y)) c(i, j) = k.add(c(i, j), k.mul(x, y));
      }
    }
  return c;
}

template <class F>
Vec<F> apply(const F& k, const Mat<F>& a, const Vec<F>& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
  Vec<F> out = zero_vec(k, a.rows());
  for (std::size_t l = 0; l < a.cols(); ++l) {
    if (k.is_zero(v[l])) continue;
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (!k.is_zero(a(i, l))) out[i] = k.add(out[i], k.mul(a(i, l), v[l]));
  }
  return out;
}

template <class F>
Mat<F> add(const F& k, const Mat<F>& a, const Mat<F>& b) {
  Mat<F> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = k.add(a(i, j), b(i, j));
  return c;
}

template <class F>
Mat<F> sub(const F& k, const Mat<F>& a, const Mat<F>& b) {
  Mat<F> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = k.sub(a(i, j), b(i, j));
  return c;
}

template <class F>
void axpy(const F& k, Vec<F>& y, const typename F::value_type& a, const Vec<F>& x) {
  if (k.is_zero(a)) return;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!k.is_zero(x[i])) y[i] = k.add(y[i], k.mul(a, x[i]));
}

template <class F>
struct Echelon {
  Mat<F> reduced;                     // reduced row echelon form
  std::vector<std::size_t> pivots;    // pivot column of each nonzero row, ascending
};

/// Reduced row echelon form by Gauss-Jordan elimination.
template <class F>
Echelon<F> rref(const F& k, Mat<F> a) {
  Echelon<F> out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && k.is_zero(a(piv, col))) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
    auto inv = k.inv(a(row, col));
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) = k.mul(a(row, j), inv);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || k.is_zero(a(i, col))) continue;
      auto factor = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) = k.sub(a(i, j), k.mul(factor, a(row, j)));
    }
    out.pivots.push_back(col);
    ++row;
  }
  Mat<F> trimmed(row, a.cols());
  for (std::size_t i = 0; i < row; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) trimmed(i, j) = a(i, j);
  out.reduced = std::move(trimmed);
  return out;
}

template <class F>
std::size_t rank(const F& k, const Mat<F>& a) {
  return rref(k, a).pivots.size();
}

/// A subspace of F^n given by a basis whose restriction to `coords` is the identity,
/// so coordinates of a member vector are read off at those positions.
template <class F>
struct Subspace {
  Mat<F> basis;                    // n x dim
  std::vector<std::size_t> coords; // dim positions
  std::size_t dim() const { return coords.size(); }
  std::size_t ambient() const { return basis.rows(); }
};

/// Kernel of a: basis vector j has 1 at free column j and -reduced entries at pivots.
template <class F>
Subspace<F> nullspace(const F& k, const Mat<F>& a) {
  auto e = rref(k, a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  Subspace<F> s;
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!is_pivot[j]) s.coords.push_back(j);
  s.basis = zeros(k, a.cols(), s.coords.size());
  for (std::size_t b = 0; b < s.coords.size(); ++b) {
    std::size_t j = s.coords[b];
    s.basis(j, b) = k.one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r) s.basis(e.pivots[r], b) = k.neg(e.reduced(r, j));
  }
  return s;
}

/// Span of the columns of a: basis = transposed reduced rows, coords = pivots.
template <class F>
Subspace<F> column_span(const F& k, const Mat<F>& a) {
  auto e = rref(k, a.transpose());
  Subspace<F> s;
  s.coords = e.pivots;
  s.basis = e.reduced.transpose();
  if (s.basis.rows() != a.rows()) s.basis = zeros(k, a.rows(), 0);
  return s;
}

/// Coordinates of v in s, or nullopt when v is not a member.
template <class F>
std::optional<Vec<F>> coordinates(const F& k, const Subspace<F>& s, const Vec<F>& v) {
  Vec<F> c(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) c[i] = v[s.coords[i]];
  if (apply(k, s.basis, c) != v) return std::nullopt;
  return c;
}

/// Solve a x = b; free variables set to zero.
template <class F>
std::optional<Vec<F>> solve(const F& k, const Mat<F>& a, const Vec<F>& b) {
  Mat<F> aug = Mat<F>::hstack(a, Mat<F>::from_columns(a.rows(), {b}));
  auto e = rref(k, aug);
  Vec<F> x = zero_vec(k, a.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == a.cols()) return std::nullopt;
    x[e.pivots[r]] = e.reduced(r, a.cols());
  }
  return x;
}

/// Solve a X = b column by column.
template <class F>
std::optional<Mat<F>> solve_matrix(const F& k, const Mat<F>& a, const Mat<F>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve shape mismatch");
  Mat<F> aug = Mat<F>::hstack(a, b);
  auto e = rref(k, aug);
  Mat<F> x = zeros(k, a.cols(), b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] >= a.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[r], j) = e.reduced(r, a.cols() + j);
  }
  return x;
}

/// Inverse of a square matrix, if invertible.
template <class F>
std::optional<Mat<F>> inverse(const F& k, const Mat<F>& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  if (rank(k, a) != a.rows()) return std::nullopt;
  return solve_matrix(k, a, identity(k, a.rows()));
}

}  // namespace chainres::linalg
