#pragma once

// Exact rational and integer linear algebra. Everything in the library is
// built on mpq_class; there are no tolerances anywhere.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tvbetti/error.hpp"

namespace tvb {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Immutable vector over Q. Used both for elements of N_Q and of M_Q.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n) : entries_(n) {}
  Vector(std::initializer_list<Rational> xs) : entries_(xs) {
    for (auto& x : entries_) x.canonicalize();
  }
  explicit Vector(std::vector<Rational> xs) : entries_(std::move(xs)) {
    for (auto& x : entries_) x.canonicalize();
  }

  std::size_t size() const noexcept { return entries_.size(); }
  const Rational& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Rational>& entries() const noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Rational& x) { return sgn(x) == 0; });
  }

  bool is_integral() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Rational& x) { return x.get_den() == 1; });
  }

  /// The vector with one more coordinate appended.
  Vector extended(const Rational& last) const {
    std::vector<Rational> xs = entries_;
    xs.push_back(last);
    return Vector(std::move(xs));
  }

  /// The first k coordinates.
  Vector head(std::size_t k) const {
    return Vector(std::vector<Rational>(entries_.begin(), entries_.begin() + k));
  }

  friend Vector operator+(const Vector& a, const Vector& b) {
    std::vector<Rational> xs(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) xs[i] = a[i] + b[i];
    return Vector(std::move(xs));
  }
  friend Vector operator-(const Vector& a, const Vector& b) {
    std::vector<Rational> xs(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) xs[i] = a[i] - b[i];
    return Vector(std::move(xs));
  }
  friend Vector operator-(const Vector& a) {
    std::vector<Rational> xs(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) xs[i] = -a[i];
    return Vector(std::move(xs));
  }
  friend Vector operator*(const Rational& s, const Vector& a) {
    std::vector<Rational> xs(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) xs[i] = s * a[i];
    return Vector(std::move(xs));
  }

  friend bool operator==(const Vector& a, const Vector& b) {
    return a.entries_ == b.entries_;
  }
  friend bool operator!=(const Vector& a, const Vector& b) { return !(a == b); }
  /// Lexicographic order; the deterministic ordering used everywhere.
  friend bool operator<(const Vector& a, const Vector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }

 private:
  std::vector<Rational> entries_;
};

inline Rational dot(const Vector& a, const Vector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vector unit_vector(std::size_t n, std::size_t i) {
  std::vector<Rational> xs(n);
  xs[i] = 1;
  return Vector(std::move(xs));
}

inline std::string to_string(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

inline std::ostream& operator<<(std::ostream& os, const Vector& v) {
  return os << to_string(v);
}

/// Rectangular matrix stored by rows.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows, Vector(cols)), n_cols_(cols) {}
  Matrix(std::vector<Vector> rows, std::size_t n_cols)
      : rows_(std::move(rows)), n_cols_(n_cols) {
    for (const auto& r : rows_)
      if (r.size() != n_cols_)
        throw Error(ErrorCategory::Precondition, "matrix rows have unequal length");
  }
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    for (const auto& r : rows) rows_.emplace_back(r);
    n_cols_ = rows_.empty() ? 0 : rows_.front().size();
    for (const auto& r : rows_)
      if (r.size() != n_cols_)
        throw Error(ErrorCategory::Precondition, "matrix rows have unequal length");
  }

  static Matrix identity(std::size_t n) {
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(unit_vector(n, i));
    return Matrix(std::move(rows), n);
  }

  std::size_t n_rows() const noexcept { return rows_.size(); }
  std::size_t n_cols() const noexcept { return n_cols_; }
  const Vector& row(std::size_t i) const { return rows_[i]; }
  const std::vector<Vector>& rows() const noexcept { return rows_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }

  Matrix transposed() const {
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < n_cols_; ++j) {
      std::vector<Rational> xs(rows_.size());
      for (std::size_t i = 0; i < rows_.size(); ++i) xs[i] = rows_[i][j];
      cols.emplace_back(std::move(xs));
    }
    return Matrix(std::move(cols), rows_.size());
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < a.n_rows(); ++i) {
      std::vector<Rational> xs(b.n_cols());
      for (std::size_t j = 0; j < b.n_cols(); ++j)
        for (std::size_t k = 0; k < a.n_cols(); ++k) xs[j] += a(i, k) * b(k, j);
      out.emplace_back(std::move(xs));
    }
    return Matrix(std::move(out), b.n_cols());
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.n_cols_ == b.n_cols_ && a.rows_ == b.rows_;
  }

 private:
  std::vector<Vector> rows_;
  std::size_t n_cols_ = 0;
};

namespace detail {

using Dense = std::vector<std::vector<Rational>>;

inline Dense to_dense(std::span<const Vector> rows) {
  Dense m;
  m.reserve(rows.size());
  for (const auto& r : rows) m.push_back(r.entries());
  return m;
}

/// In-place reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref_in_place(Dense& m, std::size_t n_cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n_cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t k = c; k < n_cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

}  // namespace detail

inline std::size_t rank(std::span<const Vector> rows, std::size_t n_cols) {
  auto m = detail::to_dense(rows);
  return detail::rref_in_place(m, n_cols).size();
}

inline std::size_t rank(const Matrix& m) { return rank(m.rows(), m.n_cols()); }

/// Row space basis in reduced row echelon form (pivot entries 1).
inline std::vector<Vector> row_echelon_basis(std::span<const Vector> rows, std::size_t n_cols) {
  auto m = detail::to_dense(rows);
  detail::rref_in_place(m, n_cols);
  std::vector<Vector> out;
  for (auto& r : m) out.emplace_back(std::move(r));
  return out;
}

/// Basis of { x : <row, x> = 0 for every row }.
inline std::vector<Vector> nullspace(std::span<const Vector> rows, std::size_t n_cols) {
  auto m = detail::to_dense(rows);
  const auto pivots = detail::rref_in_place(m, n_cols);
  std::vector<bool> is_pivot(n_cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < n_cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> x(n_cols);
    x[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -m[i][free];
    basis.emplace_back(std::move(x));
  }
  return basis;
}

/// Determinant of a square matrix by fraction-free elimination over Q.
inline Rational determinant(const Matrix& a) {
  if (a.n_rows() != a.n_cols())
    throw Error(ErrorCategory::Precondition, "determinant of a non-square matrix");
  auto m = detail::to_dense(a.rows());
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[i][k] -= f * m[c][k];
    }
  }
  return det;
}

/// The primitive integer generator of the ray through v.
inline Vector primitive(const Vector& v) {
  if (v.is_zero())
    throw Error(ErrorCategory::Precondition, "degenerate ray: the zero vector has no primitive generator");
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> ints;
  Integer g = 0;
  for (const auto& x : v) {
    Integer n = x.get_num() * (l / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    ints.push_back(std::move(n));
  }
  std::vector<Rational> out;
  out.reserve(ints.size());
  for (auto& n : ints) out.emplace_back(Integer(n / g));
  return Vector(std::move(out));
}

/// Result of smith_normal_form: left * m * right = diag(diag).
struct SmithForm {
  Matrix left;
  std::vector<Integer> diag;
  Matrix right;
};

namespace detail {

using IntDense = std::vector<std::vector<Integer>>;

inline void swap_rows(IntDense& a, std::size_t i, std::size_t j) { std::swap(a[i], a[j]); }
inline void swap_cols(IntDense& a, std::size_t i, std::size_t j) {
  for (auto& r : a) std::swap(r[i], r[j]);
}
// row_i += f * row_j
inline void add_row(IntDense& a, std::size_t i, std::size_t j, const Integer& f) {
  for (std::size_t k = 0; k < a[i].size(); ++k) a[i][k] += f * a[j][k];
}
inline void add_col(IntDense& a, std::size_t i, std::size_t j, const Integer& f) {
  for (auto& r : a) r[i] += f * r[j];
}

inline Matrix to_matrix(const IntDense& a, std::size_t cols) {
  std::vector<Vector> rows;
  for (const auto& r : a) {
    std::vector<Rational> xs;
    for (const auto& x : r) xs.emplace_back(x);
    rows.emplace_back(std::move(xs));
  }
  return Matrix(std::move(rows), cols);
}

inline IntDense identity_int(std::size_t n) {
  IntDense id(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

}  // namespace detail

/// Smith normal form of an integer matrix with unimodular transforms.
inline SmithForm smith_normal_form(const Matrix& m) {
  using namespace detail;
  const std::size_t rows = m.n_rows(), cols = m.n_cols();
  IntDense a(rows, std::vector<Integer>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      if (m(i, j).get_den() != 1)
        throw Error(ErrorCategory::Precondition, "smith_normal_form needs an integer matrix");
      a[i][j] = m(i, j).get_num();
    }
  IntDense left = identity_int(rows), right = identity_int(cols);

  const std::size_t steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // Smallest non-zero entry of the trailing block becomes the pivot.
      bool found = false;
      std::size_t pi = t, pj = t;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (sgn(a[i][j]) != 0 && (!found || abs(a[i][j]) < abs(a[pi][pj]))) {
            found = true;
            pi = i;
            pj = j;
          }
      if (!found) break;
      swap_rows(a, t, pi);
      swap_rows(left, t, pi);
      swap_cols(a, t, pj);
      swap_cols(right, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sgn(a[i][t]) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        add_row(a, i, t, -q);
        add_row(left, i, t, -q);
        if (sgn(a[i][t]) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(a[t][j]) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        add_col(a, j, t, -q);
        add_col(right, j, t, -q);
        if (sgn(a[t][j]) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce divisibility of the trailing block by the pivot.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
            add_row(a, t, i, 1);
            add_row(left, t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (sgn(a[t][t]) < 0) {
      for (auto& x : a[t]) x = -x;
      for (auto& x : left[t]) x = -x;
    }
  }

  SmithForm out{to_matrix(left, rows), {}, to_matrix(right, cols)};
  for (std::size_t t = 0; t < steps; ++t) out.diag.push_back(a[t][t]);
  return out;
}

}  // namespace tvb
