#pragma once

#include "cohobs/complex.hpp"
#include "cohobs/integer.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace cohobs {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_sparse(const IncidenceMatrix& s) {
    IntMatrix m(static_cast<std::size_t>(s.rows()), static_cast<std::size_t>(s.cols()));
    for (int k = 0; k < s.outerSize(); ++k)
      for (IncidenceMatrix::InnerIterator it(s, k); it; ++it)
        m(static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col())) = it.value();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& o) const {
    IntMatrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const auto& a = (*this)(i, k);
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
      }
    return out;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool operator==(const IntMatrix&) const = default;

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += factor * row[src], over columns from `from` on.
  void add_row(std::size_t dst, std::size_t src, const Integer& factor, std::size_t from = 0) {
    for (std::size_t j = from; j < cols_; ++j)
      if (!(*this)(src, j).is_zero()) (*this)(dst, j) += factor * (*this)(src, j);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& factor, std::size_t from = 0) {
    for (std::size_t i = from; i < rows_; ++i)
      if (!(*this)(i, src).is_zero()) (*this)(i, dst) += factor * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// M = U * S * V with U, V unimodular and S diagonal, d1 | d2 | ... .
struct SNFResult {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;
  /// Inverses of U and V, accumulated alongside them.
  IntMatrix U_inverse;
  IntMatrix V_inverse;

  /// Nonzero diagonal entries of S, in order.
  std::vector<Integer> divisors() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i)
      if (!S(i, i).is_zero()) d.push_back(S(i, i));
    return d;
  }
  std::size_t rank() const { return divisors().size(); }
};

namespace detail {

/// Smallest-nonzero-pivot Smith reduction. When `track` is false, U and V are
/// left empty and only S is computed.
inline SNFResult smith_reduce(IntMatrix S, bool track) {
  const std::size_t m = S.rows();
  const std::size_t n = S.cols();
  IntMatrix U = track ? IntMatrix::identity(m) : IntMatrix();
  IntMatrix V = track ? IntMatrix::identity(n) : IntMatrix();
  IntMatrix Ui = track ? IntMatrix::identity(m) : IntMatrix();
  IntMatrix Vi = track ? IntMatrix::identity(n) : IntMatrix();

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    while (true) {
      // Pivot: entry of least absolute value in the trailing block.
      std::size_t pi = m, pj = n;
      Integer best;
      for (std::size_t i = t; i < m && !(pi < m && best == 1); ++i)
        for (std::size_t j = t; j < n; ++j) {
          const auto& x = S(i, j);
          if (x.is_zero()) continue;
          Integer ax = abs(x);
          if (pi == m || ax < best) {
            best = std::move(ax);
            pi = i;
            pj = j;
            if (best == 1) break;
          }
        }
      if (pi == m) return {std::move(U), std::move(S), std::move(V), std::move(Ui), std::move(Vi)};

      S.swap_rows(t, pi);
      if (track) {
        U.swap_cols(t, pi);
        Ui.swap_rows(t, pi);
      }
      S.swap_cols(t, pj);
      if (track) {
        V.swap_rows(t, pj);
        Vi.swap_cols(t, pj);
      }

      const Integer p = S(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t).is_zero()) continue;
        const Integer q = S(i, t) / p;
        if (!q.is_zero()) {
          S.add_row(i, t, -q, t);
          if (track) {
            U.add_col(t, i, q);
            Ui.add_row(i, t, -q);
          }
        }
        if (!S(i, t).is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j).is_zero()) continue;
        const Integer q = S(t, j) / p;
        if (!q.is_zero()) {
          S.add_col(j, t, -q, t);
          if (track) {
            V.add_row(t, j, q);
            Vi.add_col(j, t, -q);
          }
        }
        if (!S(t, j).is_zero()) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold a row holding a non-multiple of p into row t.
      bool divides = true;
      if (abs(p) != 1) {
        for (std::size_t i = t + 1; i < m && divides; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (!S(i, j).is_zero() && Integer(S(i, j) % p) != 0) {
              S.add_row(t, i, 1, t);
              if (track) {
                U.add_col(i, t, -1);
                Ui.add_row(t, i, 1);
              }
              divides = false;
              break;
            }
      }
      if (divides) break;
    }
    if (S(t, t) < 0) {
      S.negate_row(t);
      if (track) {
        U.negate_col(t);
        Ui.negate_row(t);
      }
    }
  }
  return {std::move(U), std::move(S), std::move(V), std::move(Ui), std::move(Vi)};
}

}  // namespace detail

inline SNFResult smith_normal_form(const IntMatrix& M) { return detail::smith_reduce(M, true); }

/// Nonzero invariant factors only; skips the transform bookkeeping.
inline std::vector<Integer> elementary_divisors(const IntMatrix& M) {
  return detail::smith_reduce(M, false).divisors();
}

}  // namespace cohobs
