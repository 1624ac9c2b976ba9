#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "irrkit/rational.hpp"

namespace irrkit {

/// Dense row-major matrix over the rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw InputError("ragged matrix literal");
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static RationalMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    RationalMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw InputError("row length does not match column count");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  RationalMatrix transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Matrix with the listed rows removed (indices need not be sorted).
  RationalMatrix without_row(std::size_t skip) const {
    RationalMatrix out(rows_ - 1, cols_);
    for (std::size_t i = 0, k = 0; i < rows_; ++i) {
      if (i == skip) continue;
      for (std::size_t j = 0; j < cols_; ++j) out(k, j) = (*this)(i, j);
      ++k;
    }
    return out;
  }

  std::vector<Rational> apply(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw InputError("vector length does not match column count");
    std::vector<Rational> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  std::vector<Rational> apply(const IntVector& v) const {
    std::vector<Rational> q(v.begin(), v.end());
    return apply(q);
  }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

namespace detail {

/// Integer reduced echelon form produced by fraction-free Gauss-Jordan elimination.
/// Every pivot entry equals `pivot` (the last leading minor), and every pivot column is zero off its pivot row.
struct IntegerEchelon {
  std::vector<IntVector> rows;  // only the first pivot_cols.size() rows are meaningful
  std::vector<std::size_t> pivot_cols;
  Integer pivot = 1;
};

/// Scales each row by the lcm of its denominators so the matrix is integral; row scaling preserves rank and kernel.
inline std::vector<IntVector> clear_denominators(const RationalMatrix& m) {
  std::vector<IntVector> out(m.rows(), IntVector(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational& q = m(i, j);
      mpz_divexact(out[i][j].get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
      out[i][j] *= q.get_num();
    }
  }
  return out;
}

/// Bareiss-style fraction-free Gauss-Jordan. Each update
///   row_i <- (p_k * row_i - a_ik * row_k) / p_{k-1}
/// divides exactly: entries stay equal to minors of the input matrix.
inline IntegerEchelon fraction_free_reduce(std::vector<IntVector> a, std::size_t cols) {
  IntegerEchelon out;
  const std::size_t rows = a.size();
  Integer prev = 1;
  Integer tmp;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (a[i][c] != 0) {
        sel = i;
        break;
      }
    }
    if (sel == rows) continue;
    std::swap(a[r], a[sel]);
    const Integer p = a[r][c];
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Integer f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) {
        // a[i][j] = (p * a[i][j] - f * a[r][j]) / prev
        tmp = p * a[i][j];
        tmp -= f * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
    }
    // Row r is zero in every earlier pivot column, so earlier pivot entries become p * prev / prev = p.
    out.pivot_cols.push_back(c);
    prev = p;
    ++r;
  }
  out.pivot = prev;
  a.resize(r);
  out.rows = std::move(a);
  return out;
}

inline IntegerEchelon echelon(const RationalMatrix& m) { return fraction_free_reduce(clear_denominators(m), m.cols()); }

}  // namespace detail

/// Exact rank over Q.
inline std::size_t rank(const RationalMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return detail::echelon(m).pivot_cols.size();
}

/// Basis of the right kernel, one vector per free column in increasing column order.
/// Each vector is a primitive integer vector with its first nonzero entry positive.
inline std::vector<IntVector> nullspace_basis(const RationalMatrix& m) {
  const std::size_t n = m.cols();
  std::vector<IntVector> basis;
  if (n == 0) return basis;
  detail::IntegerEchelon ech;
  if (m.rows() > 0) ech = detail::echelon(m);
  std::vector<bool> is_pivot(n, false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    IntVector v(n);
    v[free] = ech.pivot;
    for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i) v[ech.pivot_cols[i]] = -ech.rows[i][free];
    make_primitive(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution of m x = b, or nullopt when the system is inconsistent. Free variables are set to zero.
inline std::optional<std::vector<Rational>> solve(const RationalMatrix& m, const std::vector<Rational>& b) {
  if (b.size() != m.rows()) throw InputError("right-hand side length does not match row count");
  RationalMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  std::vector<Rational> x(m.cols());
  if (m.rows() == 0) return x;
  auto ech = detail::echelon(aug);
  if (!ech.pivot_cols.empty() && ech.pivot_cols.back() == m.cols()) return std::nullopt;
  for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i) {
    x[ech.pivot_cols[i]] = Rational(ech.rows[i][m.cols()], ech.pivot);
    x[ech.pivot_cols[i]].canonicalize();
  }
  return x;
}

}  // namespace irrkit
