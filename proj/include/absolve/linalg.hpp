#pragma once

// Dense row-major vectors and matrices over double and over arbitrary
// precision integers, plus the handful of elementary kernels the solvers use.

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "absolve/errors.hpp"

namespace absolve {

using Integer = mpz_class;

namespace detail {

template <class T>
void check_finite(std::span<const T> values) {
  if constexpr (std::is_floating_point_v<T>) {
    for (const T& v : values)
      if (!std::isfinite(v)) throw ValueError("non-finite entry");
  }
}

}  // namespace detail

template <class T>
class Vector {
 public:
  using value_type = T;

  Vector() = default;
  explicit Vector(std::size_t n, const T& fill = T(0)) : data_(n, fill) {
    if (n == 0) throw ShapeError("vector length must be at least 1");
  }
  explicit Vector(std::vector<T> values) : data_(std::move(values)) {
    if (data_.empty()) throw ShapeError("vector length must be at least 1");
    detail::check_finite<T>(data_);
  }
  Vector(std::initializer_list<T> values) : Vector(std::vector<T>(values)) {}

  static Vector zeros(std::size_t n) { return Vector(n); }
  static Vector unit(std::size_t n, std::size_t k) {
    Vector e(n);
    e[k] = T(1);
    return e;
  }

  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }
  T* data() noexcept { return data_.data(); }
  const T* data() const noexcept { return data_.data(); }
  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }
  std::span<const T> view() const noexcept { return data_; }
  const std::vector<T>& values() const noexcept { return data_; }

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<T> data_;
};

template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> row_major)
      : rows_(rows), cols_(cols), data_(std::move(row_major)) {
    if (data_.size() != rows_ * cols_) throw ShapeError("matrix entry count does not match shape");
    detail::check_finite<T>(data_);
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw ShapeError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
    detail::check_finite<T>(data_);
  }

  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  T* data() noexcept { return data_.data(); }
  const T* data() const noexcept { return data_.data(); }
  std::span<T> row_span(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row_span(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  Vector<T> row(std::size_t i) const {
    return Vector<T>(std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_));
  }
  Vector<T> col(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return Vector<T>(std::move(out));
  }
  void set_row(std::size_t i, const Vector<T>& v) {
    if (v.size() != cols_) throw ShapeError("set_row: length mismatch");
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
  }
  void set_col(std::size_t j, const Vector<T>& v) {
    if (v.size() != rows_) throw ShapeError("set_col: length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealVector = Vector<double>;
using RealMatrix = Matrix<double>;
using IntVector = Vector<Integer>;
using IntMatrix = Matrix<Integer>;

// ---------------------------------------------------------------------------
// Generic kernels (double and Integer)

template <class T>
T dot(const Vector<T>& a, const Vector<T>& b) {
  if (a.size() != b.size()) throw ShapeError("dot: length mismatch");
  T acc(0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

template <class T>
Vector<T> matvec(const Matrix<T>& m, const Vector<T>& v) {
  if (m.cols() != v.size()) throw ShapeError("matvec: cols(M) != len(v)");
  Vector<T> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    T acc(0);
    const auto r = m.row_span(i);
    for (std::size_t j = 0; j < m.cols(); ++j) acc += r[j] * v[j];
    out[i] = acc;
  }
  return out;
}

/// Mᵀ·v without forming the transpose.
template <class T>
Vector<T> matvec_transposed(const Matrix<T>& m, const Vector<T>& v) {
  if (m.rows() != v.size()) throw ShapeError("matvec_transposed: rows(M) != len(v)");
  Vector<T> out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == T(0)) continue;
    const auto r = m.row_span(i);
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += r[j] * v[i];
  }
  return out;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& m) {
  Matrix<T> t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

template <class T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw ShapeError("matmul: inner dimensions differ");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == T(0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <class T>
Matrix<T> submatrix(const Matrix<T>& m, std::span<const std::size_t> rows,
                    std::span<const std::size_t> cols) {
  Matrix<T> out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (rows[i] >= m.rows() || cols[j] >= m.cols()) throw ShapeError("submatrix: index out of range");
      out(i, j) = m(rows[i], cols[j]);
    }
  return out;
}

template <class T>
Vector<T> operator+(const Vector<T>& a, const Vector<T>& b) {
  if (a.size() != b.size()) throw ShapeError("vector add: length mismatch");
  Vector<T> c = a;
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += b[i];
  return c;
}

template <class T>
Vector<T> operator-(const Vector<T>& a, const Vector<T>& b) {
  if (a.size() != b.size()) throw ShapeError("vector sub: length mismatch");
  Vector<T> c = a;
  for (std::size_t i = 0; i < a.size(); ++i) c[i] -= b[i];
  return c;
}

template <class T>
Vector<T> operator*(const T& s, const Vector<T>& a) {
  Vector<T> c = a;
  for (auto& x : c) x *= s;
  return c;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("matrix add: shape mismatch");
  Matrix<T> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("matrix sub: shape mismatch");
  Matrix<T> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

/// y ← y + s·x
template <class T>
void axpy(const T& s, const Vector<T>& x, Vector<T>& y) {
  if (x.size() != y.size()) throw ShapeError("axpy: length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

// ---------------------------------------------------------------------------
// Real-only kernels

double norm2(const RealVector& v);
double norm_inf(const RealVector& v);
double frobenius(const RealMatrix& m);
double max_abs(const RealMatrix& m);

/// Returns H − u·vᵀ/denom.
RealMatrix outer_update(const RealMatrix& h, const RealVector& u, const RealVector& v, double denom);
/// In-place form of outer_update for a uniquely owned H.
void outer_update_inplace(RealMatrix& h, const RealVector& u, const RealVector& v, double denom);

/// Dot product evaluated in doubled working precision (error-free
/// transformations), rounded once at the end.
double dot_compensated(std::span<const double> a, std::span<const double> b);

/// A·x − b with every component computed by dot_compensated.
RealVector residual(const RealMatrix& a, const RealVector& x, const RealVector& b);

/// Solves M·X = R by Gaussian elimination with partial pivoting. Throws
/// NumericalError when a pivot falls below tol·max|M|.
RealMatrix lu_solve(const RealMatrix& m, const RealMatrix& rhs, double tol);
RealVector lu_solve(const RealMatrix& m, const RealVector& rhs, double tol);

/// Orthonormal factor Q of a Householder QR of a square matrix.
RealMatrix householder_q(const RealMatrix& m);

}  // namespace absolve
