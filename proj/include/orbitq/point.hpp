#pragma once

#include <cstddef>

#include "orbitq/factorizations.hpp"
#include "orbitq/matrix.hpp"
#include "orbitq/random.hpp"

namespace orbitq {

/// A point (A + RE, B) of (S(W)/RE) + Hom(F^k, W) with dim W = n.
template <FieldScalar T>
struct ReprPoint {
  using Scalar = T;

  std::size_t n = 0;
  std::size_t k = 1;
  Coset<T> cosetA;
  Matrix<T> B;

  ReprPoint() = default;
  ReprPoint(Coset<T> a, Matrix<T> b) : n(a.dim()), k(b.cols()), cosetA(std::move(a)), B(std::move(b)) { validate(); }

  void validate() const {
    if (k != 1 && k != 2) throw InvalidInput("k must be 1 or 2");
    if (n + k < 2) throw InvalidInput("dimension must satisfy n >= 2 - k");
    if (cosetA.dim() != n || B.rows() != n || B.cols() != k) throw InvalidInput("point shape mismatch");
  }
};

/// Distance between two points: coset distance (traceless forms) combined with the B distance.
template <FieldScalar T>
double point_distance(const ReprPoint<T>& a, const ReprPoint<T>& b) {
  const double dc = coset_distance(a.cosetA, b.cosetA);
  const double db = frobenius_norm(a.B - b.B);
  return std::sqrt(dc * dc + db * db);
}

/// Gaussian coset representative and Gaussian B.
template <FieldScalar T>
ReprPoint<T> random_point(std::size_t n, std::size_t k, Rng& rng) {
  return ReprPoint<T>(Coset<T>(rng.gaussian_hermitian<T>(n)), rng.gaussian_matrix<T>(n, k));
}

}  // namespace orbitq
