#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "orbitq/errors.hpp"
#include "orbitq/matrix.hpp"

namespace orbitq {

template <FieldScalar T>
struct EigenDecomposition {
  std::vector<double> values;  // descending
  Matrix<T> vectors;           // columns are eigenvectors
};

namespace detail {

inline constexpr int kJacobiMaxSweeps = 64;

template <FieldScalar T>
double off_diagonal_norm2(const Matrix<T>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += abs2(a(i, j));
  return s;
}

}  // namespace detail

/**
 * Eigendecomposition of a self-adjoint matrix by the cyclic Jacobi method.
 *
 * Each rotation first rotates the phase of the (p, q) entry to the positive
 * real axis and then applies the classical real plane rotation, so the same
 * loop serves both fields. Eigenvalues come back sorted descending; equal
 * eigenvalues keep their Jacobi output order.
 */
template <FieldScalar T>
EigenDecomposition<T> herm_eigen(const Hermitian<T>& h) {
  const std::size_t n = h.dim();
  Matrix<T> a = h.matrix();
  Matrix<T> v = Matrix<T>::identity(n);

  const double fro2 = [&] {
    double s = 0.0;
    for (const auto& x : a.data()) s += abs2(x);
    return s;
  }();
  const double eps = std::numeric_limits<double>::epsilon();
  const double target = eps * eps * fro2;

  bool converged = n <= 1 || fro2 == 0.0;
  for (int sweep = 0; sweep < detail::kJacobiMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const T apq = a(p, q);
        const double mag = abs(apq);
        if (mag == 0.0) continue;
        const double app = real_part(a(p, p));
        const double aqq = real_part(a(q, q));
        // Skip entries already negligible against both diagonal neighbours.
        if (mag < 1e-3 * eps * std::abs(app) && mag < 1e-3 * eps * std::abs(aqq)) {
          a(p, q) = T(0.0);
          a(q, p) = T(0.0);
          continue;
        }
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const T ph = conj(apq / mag);
        // G = diag(1, ph) * [[c, s], [-s, c]] restricted to the (p, q) plane.
        const T gpp(c), gpq(s);
        const T gqp = -s * ph;
        const T gqq = c * ph;

        for (std::size_t r = 0; r < n; ++r) {
          const T x = a(r, p), y = a(r, q);
          a(r, p) = x * gpp + y * gqp;
          a(r, q) = x * gpq + y * gqq;
        }
        for (std::size_t col = 0; col < n; ++col) {
          const T x = a(p, col), y = a(q, col);
          a(p, col) = conj(gpp) * x + conj(gqp) * y;
          a(q, col) = conj(gpq) * x + conj(gqq) * y;
        }
        a(p, q) = T(0.0);
        a(q, p) = T(0.0);
        a(p, p) = T(real_part(a(p, p)));
        a(q, q) = T(real_part(a(q, q)));
        for (std::size_t r = 0; r < n; ++r) {
          const T x = v(r, p), y = v(r, q);
          v(r, p) = x * gpp + y * gqp;
          v(r, q) = x * gpq + y * gqq;
        }
      }
    }
    converged = detail::off_diagonal_norm2(a) <= target;
  }
  if (!converged) throw NumericalFailure("Jacobi eigensolver did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return real_part(a(i, i)) > real_part(a(j, j)); });

  EigenDecomposition<T> out{std::vector<double>(n), Matrix<T>(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = real_part(a(order[k], order[k]));
    if (!std::isfinite(out.values[k])) throw NumericalFailure("non-finite eigenvalue");
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

/// Determinant over F by LU with partial pivoting. The empty matrix has determinant 1.
template <FieldScalar T>
T det(Matrix<T> m) {
  if (!m.is_square()) throw InvalidInput("determinant of non-square matrix");
  const std::size_t n = m.rows();
  T d(1.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = abs(m(col, col));
    for (std::size_t r = col + 1; r < n; ++r)
      if (abs(m(r, col)) > best) {
        best = abs(m(r, col));
        piv = r;
      }
    if (best == 0.0) return T(0.0);
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      d = -d;
    }
    const T p = m(col, col);
    d *= p;
    for (std::size_t r = col + 1; r < n; ++r) {
      const T f = m(r, col) / p;
      if (f == T(0.0)) continue;
      for (std::size_t j = col + 1; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return d;
}

/// X X*
template <FieldScalar T>
Hermitian<T> gram(const Matrix<T>& x) {
  return Hermitian<T>(x * x.adjoint());
}

/// Z* Z
template <FieldScalar T>
Hermitian<T> gram_t(const Matrix<T>& z) {
  return Hermitian<T>(z.adjoint() * z);
}

/// U diag(d) U* for a real diagonal d.
template <FieldScalar T>
Hermitian<T> reconstruct(const Matrix<T>& u, const std::vector<double>& d) {
  Matrix<T> ud = u;
  for (std::size_t j = 0; j < d.size(); ++j)
    for (std::size_t i = 0; i < u.rows(); ++i) ud(i, j) *= d[j];
  return Hermitian<T>(ud * u.adjoint());
}

}  // namespace orbitq
