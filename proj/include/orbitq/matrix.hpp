#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "orbitq/errors.hpp"
#include "orbitq/field.hpp"

namespace orbitq {

/**
 * Dense row-major matrix over F, sized at runtime.
 *
 * Sizes are small (n <= ~16) throughout, so storage is a flat vector and all
 * products are the naive triple loop. Zero-row and zero-column shapes are
 * valid and model the zero space.
 */
template <FieldScalar T>
class Matrix {
 public:
  using Scalar = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0.0)) {}

  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw InvalidInput("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1.0);
    return m;
  }

  static Matrix diagonal(std::span<const T> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const T& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  Matrix adjoint() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = conj((*this)(i, j));
    return r;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw InvalidInput("block out of range");
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw InvalidInput("block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  friend Matrix operator-(Matrix a) { return a *= T(-1.0); }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InvalidInput("matrix product shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const T x = a(i, l);
        if (x == T(0.0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += x * b(l, j);
      }
    return r;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidInput("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Horizontal concatenation [a | b].
template <FieldScalar T>
Matrix<T> hcat(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw InvalidInput("hcat row mismatch");
  Matrix<T> r(a.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}

template <FieldScalar T>
double frobenius_norm(const Matrix<T>& m) {
  double s = 0.0;
  for (const auto& x : m.data()) s += abs2(x);
  return std::sqrt(s);
}

template <FieldScalar T>
double max_abs(const Matrix<T>& m) {
  double s = 0.0;
  for (const auto& x : m.data()) s = std::max(s, abs(x));
  return s;
}

template <FieldScalar T>
T trace(const Matrix<T>& m) {
  if (!m.is_square()) throw InvalidInput("trace of non-square matrix");
  T t(0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

/**
 * Element of S(W): a self-adjoint n x n matrix.
 *
 * Every construction re-symmetrizes to (M + M*)/2 with a real diagonal, so
 * the self-adjointness invariant holds exactly rather than approximately.
 */
template <FieldScalar T>
class Hermitian {
 public:
  Hermitian() = default;
  explicit Hermitian(std::size_t n) : m_(n, n) {}
  explicit Hermitian(const Matrix<T>& m) : m_(symmetrize(m)) {}

  static Hermitian identity(std::size_t n) { return Hermitian(Matrix<T>::identity(n)); }

  std::size_t dim() const { return m_.rows(); }
  const Matrix<T>& matrix() const { return m_; }
  const T& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) t += real_part(m_(i, i));
    return t;
  }

  /// this + s E
  Hermitian shifted(double s) const {
    Hermitian r = *this;
    for (std::size_t i = 0; i < dim(); ++i) r.m_(i, i) += T(s);
    return r;
  }

  /// C A C* for any conforming (possibly rectangular) C.
  Hermitian conjugated(const Matrix<T>& c) const { return Hermitian(c * m_ * c.adjoint()); }

  friend Hermitian operator+(const Hermitian& a, const Hermitian& b) { return Hermitian(a.m_ + b.m_); }
  friend Hermitian operator-(const Hermitian& a, const Hermitian& b) { return Hermitian(a.m_ - b.m_); }
  friend Hermitian operator*(double s, const Hermitian& a) { return Hermitian(a.m_ * T(s)); }
  friend bool operator==(const Hermitian&, const Hermitian&) = default;

  /// Exact predicate: entry(i,j) == conj(entry(j,i)) bitwise.
  static bool is_self_adjoint(const Matrix<T>& m) {
    if (!m.is_square()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = i; j < m.cols(); ++j)
        if (m(i, j) != conj(m(j, i))) return false;
    return true;
  }

 private:
  static Matrix<T> symmetrize(const Matrix<T>& m) {
    if (!m.is_square()) throw InvalidInput("self-adjoint matrix must be square");
    const std::size_t n = m.rows();
    Matrix<T> r(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      r(i, i) = T(real_part(m(i, i)));
      for (std::size_t j = i + 1; j < n; ++j) {
        const T v = (m(i, j) + conj(m(j, i))) * 0.5;
        r(i, j) = v;
        r(j, i) = conj(v);
      }
    }
    return r;
  }

  Matrix<T> m_;
};

}  // namespace orbitq
