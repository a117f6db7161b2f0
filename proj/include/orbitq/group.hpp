#pragma once

#include <cmath>
#include <cstdint>

#include "orbitq/errors.hpp"
#include "orbitq/linalg.hpp"
#include "orbitq/point.hpp"
#include "orbitq/random.hpp"

namespace orbitq {

/// An element C of O(W) (unitary over C) with its determinant cached.
template <FieldScalar T>
struct GroupElement {
  Matrix<T> C;
  T detC{1.0};

  std::size_t dim() const { return C.rows(); }

  static GroupElement identity(std::size_t n) { return {Matrix<T>::identity(n), T(1.0)}; }

  /// Wraps a matrix assumed unitary, computing its determinant.
  static GroupElement from_matrix(Matrix<T> c) {
    if (!c.is_square()) throw InvalidInput("group element must be square");
    T d = det(c);
    return {std::move(c), d};
  }

  GroupElement inverse() const { return {C.adjoint(), conj(detC)}; }

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b) { return {a.C * b.C, a.detC * b.detC}; }
};

namespace detail {

/// Orthonormalizes the columns in place by Gram-Schmidt with one
/// reorthogonalization pass; equivalent to the Q factor of a QR with a
/// positive real diagonal in R.
template <FieldScalar T>
void orthonormalize_columns(Matrix<T>& g) {
  const std::size_t n = g.rows();
  for (std::size_t j = 0; j < g.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        T dot(0.0);
        for (std::size_t r = 0; r < n; ++r) dot += conj(g(r, i)) * g(r, j);
        for (std::size_t r = 0; r < n; ++r) g(r, j) -= dot * g(r, i);
      }
    }
    double nrm = 0.0;
    for (std::size_t r = 0; r < n; ++r) nrm += abs2(g(r, j));
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) throw NumericalFailure("degenerate Gaussian sample");
    for (std::size_t r = 0; r < n; ++r) g(r, j) /= nrm;
  }
}

}  // namespace detail

/// Haar-approximate sample of O(n) (real) or U(n) (complex).
template <FieldScalar T>
GroupElement<T> random_orthogonal(std::size_t n, Rng& rng) {
  if (n == 0) return GroupElement<T>::identity(0);
  Matrix<T> g = rng.gaussian_matrix<T>(n, n);
  detail::orthonormalize_columns(g);
  return GroupElement<T>::from_matrix(std::move(g));
}

template <FieldScalar T>
GroupElement<T> random_orthogonal(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_orthogonal<T>(n, rng);
}

/// Sample of SO(n) / SU(n): a random_orthogonal draw with its last column
/// rescaled by conj(det C).
template <FieldScalar T>
GroupElement<T> random_special(std::size_t n, Rng& rng) {
  auto g = random_orthogonal<T>(n, rng);
  if (n == 0) return g;
  const T fix = conj(phase<T>(g.detC));
  for (std::size_t r = 0; r < n; ++r) g.C(r, n - 1) *= fix;
  return GroupElement<T>::from_matrix(std::move(g.C));
}

template <FieldScalar T>
GroupElement<T> random_special(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_special<T>(n, rng);
}

/// R(C1) = diag(C1, E_k), the embedding O(W1) -> O(W1 + F^k).
template <FieldScalar T>
GroupElement<T> embed_R(const GroupElement<T>& c1, std::size_t k) {
  const std::size_t m = c1.dim();
  Matrix<T> c = Matrix<T>::identity(m + k);
  c.set_block(0, 0, c1.C);
  return {std::move(c), c1.detC};
}

/// C . (A + RE, B) = (C A C^-1 + RE, C B)
template <FieldScalar T>
ReprPoint<T> act_point(const GroupElement<T>& g, const ReprPoint<T>& p) {
  if (g.dim() != p.n) throw InvalidInput("group element does not match point dimension");
  return ReprPoint<T>(Coset<T>(p.cosetA.rep().conjugated(g.C)), g.C * p.B);
}

/// X -> X C^-1 on End(W).
template <FieldScalar T>
Matrix<T> act_end(const GroupElement<T>& g, const Matrix<T>& x) {
  if (!x.is_square() || x.cols() != g.dim()) throw InvalidInput("act_end shape mismatch");
  return x * g.C.adjoint();
}

/// X -> X C1^-1 on Hom(W1, W).
template <FieldScalar T>
Matrix<T> act_hom(const GroupElement<T>& g, const Matrix<T>& x) {
  if (x.cols() != g.dim()) throw InvalidInput("act_hom shape mismatch");
  return x * g.C.adjoint();
}

/// max(|C C* - E|, |det C cache - det C|, ||det C| - 1|)
template <FieldScalar T>
double group_residual(const GroupElement<T>& g) {
  const std::size_t n = g.dim();
  const double unitary = max_abs(g.C * g.C.adjoint() - Matrix<T>::identity(n));
  const double cache = abs(g.detC - det(g.C));
  const double modulus = std::abs(abs(g.detC) - 1.0);
  return std::max({unitary, cache, modulus});
}

}  // namespace orbitq
