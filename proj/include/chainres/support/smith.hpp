#pragma once

#include <optional>
#include <vector>

#include "chainres/support/arith.hpp"
#include "chainres/support/matrix.hpp"

namespace chainres::intlinalg {

using IntMat = Matrix<i64>;
using IntVec = std::vector<i64>;

inline IntMat identity(std::size_t n) {
  IntMat m(n, n, 0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

inline IntMat mul(const IntMat& a, const IntMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("integer matrix product shape mismatch");
  IntMat c(a.rows(), b.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      i64 x = a(i, l);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(l, j) != 0) c(i, j) = checked_add(c(i, j), checked_mul(x, b(l, j)));
    }
  return c;
}

inline IntVec apply(const IntMat& a, const IntVec& v) {
  IntVec out(a.rows(), 0);
  for (std::size_t l = 0; l < a.cols(); ++l) {
    if (v[l] == 0) continue;
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (a(i, l) != 0) out[i] = checked_add(out[i], checked_mul(a(i, l), v[l]));
  }
  return out;
}

/// U * A * V = S with S diagonal, diagonal entries nonnegative and each dividing the next
/// (zeros last). U, V unimodular; Uinv is kept alongside U.
struct Smith {
  IntMat U, Uinv, V, S;
  std::vector<i64> diag;  // length min(rows, cols)
  std::size_t rank = 0;
};

namespace detail {

struct SmithState {
  IntMat S, U, Uinv, V;

  void row_swap(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < S.cols(); ++j) std::swap(S(a, j), S(b, j));
    for (std::size_t j = 0; j < U.cols(); ++j) std::swap(U(a, j), U(b, j));
    for (std::size_t i = 0; i < Uinv.rows(); ++i) std::swap(Uinv(i, a), Uinv(i, b));
  }
  void col_swap(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < S.rows(); ++i) std::swap(S(i, a), S(i, b));
    for (std::size_t i = 0; i < V.rows(); ++i) std::swap(V(i, a), V(i, b));
  }
  // row_t += q * row_s
  void row_add(std::size_t t, std::size_t s, i64 q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < S.cols(); ++j) S(t, j) = checked_add(S(t, j), checked_mul(q, S(s, j)));
    for (std::size_t j = 0; j < U.cols(); ++j) U(t, j) = checked_add(U(t, j), checked_mul(q, U(s, j)));
    for (std::size_t i = 0; i < Uinv.rows(); ++i)
      Uinv(i, s) = checked_sub(Uinv(i, s), checked_mul(q, Uinv(i, t)));
  }
  // col_t += q * col_s
  void col_add(std::size_t t, std::size_t s, i64 q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < S.rows(); ++i) S(i, t) = checked_add(S(i, t), checked_mul(q, S(i, s)));
    for (std::size_t i = 0; i < V.rows(); ++i) V(i, t) = checked_add(V(i, t), checked_mul(q, V(i, s)));
  }
  void row_negate(std::size_t t) {
    for (std::size_t j = 0; j < S.cols(); ++j) S(t, j) = -S(t, j);
    for (std::size_t j = 0; j < U.cols(); ++j) U(t, j) = -U(t, j);
    for (std::size_t i = 0; i < Uinv.rows(); ++i) Uinv(i, t) = -Uinv(i, t);
  }
};

inline i64 abs64(i64 x) { return x < 0 ? -x : x; }

}  // namespace detail

inline Smith smith(const IntMat& a) {
  detail::SmithState st{a, identity(a.rows()), identity(a.rows()), identity(a.cols())};
  auto& S = st.S;
  const std::size_t m = a.rows(), n = a.cols();
  const std::size_t lim = std::min(m, n);
  std::size_t t = 0;
  for (; t < lim; ++t) {
    // smallest nonzero entry of the trailing block becomes the pivot
    bool found = false;
    std::size_t pr = t, pc = t;
    i64 best = 0;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (S(i, j) != 0 && (!found || detail::abs64(S(i, j)) < best)) {
          found = true;
          best = detail::abs64(S(i, j));
          pr = i;
          pc = j;
        }
    if (!found) break;
    st.row_swap(t, pr);
    st.col_swap(t, pc);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i)
        if (S(i, t) != 0) {
          st.row_add(i, t, -(S(i, t) / S(t, t)));
          if (S(i, t) != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < n; ++j)
        if (S(t, j) != 0) {
          st.col_add(j, t, -(S(t, j) / S(t, t)));
          if (S(t, j) != 0) clean = false;
        }
      if (!clean) {
        // move the smallest remainder into the pivot and repeat
        std::size_t br = t, bc = t;
        i64 b = detail::abs64(S(t, t));
        for (std::size_t i = t + 1; i < m; ++i)
          if (S(i, t) != 0 && detail::abs64(S(i, t)) < b) {
            b = detail::abs64(S(i, t));
            br = i;
            bc = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(t, j) != 0 && detail::abs64(S(t, j)) < b) {
            b = detail::abs64(S(t, j));
            br = t;
            bc = j;
          }
        st.row_swap(t, br);
        st.col_swap(t, bc);
        continue;
      }
      // divisibility of the trailing block by the pivot
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(i, j) % S(t, t) != 0) {
            st.row_add(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (S(t, t) < 0) st.row_negate(t);
  }
  Smith out;
  out.rank = t;
  out.diag.assign(lim, 0);
  for (std::size_t i = 0; i < t; ++i) out.diag[i] = S(i, i);
  out.S = std::move(st.S);
  out.U = std::move(st.U);
  out.Uinv = std::move(st.Uinv);
  out.V = std::move(st.V);
  return out;
}

/// Basis (as columns) of the integer kernel {x : a x = 0}.
inline IntMat kernel(const IntMat& a) {
  Smith s = smith(a);
  std::vector<std::size_t> idx;
  for (std::size_t j = s.rank; j < a.cols(); ++j) idx.push_back(j);
  return s.V.columns(idx);
}

/// Integer solution of a x = b with free parameters zero, or nullopt.
inline std::optional<IntVec> solve(const IntMat& a, const IntVec& b) {
  Smith s = smith(a);
  IntVec ub = intlinalg::apply(s.U, b);
  IntVec w(a.cols(), 0);
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < s.rank) {
      if (ub[i] % s.diag[i] != 0) return std::nullopt;
      w[i] = ub[i] / s.diag[i];
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return intlinalg::apply(s.V, w);
}

}  // namespace chainres::intlinalg
