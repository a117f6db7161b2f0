#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "orbitq/errors.hpp"
#include "orbitq/linalg.hpp"
#include "orbitq/matrix.hpp"

namespace orbitq {

/// Relative tolerance for algebraic identities.
inline constexpr double kAlgebraicTol = 1e-9;

/**
 * Element A + RE of S(W)/RE.
 *
 * Stores whichever representative it was built from. Equality is decided on
 * the traceless normal form rep - (tr rep / n) E, which does not depend on the
 * stored representative.
 */
template <FieldScalar T>
class Coset {
 public:
  Coset() = default;
  explicit Coset(Hermitian<T> rep) : rep_(std::move(rep)) {}
  explicit Coset(std::size_t n) : rep_(n) {}

  std::size_t dim() const { return rep_.dim(); }
  const Hermitian<T>& rep() const { return rep_; }

  Hermitian<T> traceless() const {
    const std::size_t n = dim();
    if (n == 0) return rep_;
    return rep_.shifted(-rep_.trace() / static_cast<double>(n));
  }

 private:
  Hermitian<T> rep_;
};

/// Frobenius distance between traceless normal forms.
template <FieldScalar T>
double coset_distance(const Coset<T>& a, const Coset<T>& b) {
  if (a.dim() != b.dim()) throw InvalidInput("coset dimension mismatch");
  return frobenius_norm((a.traceless() - b.traceless()).matrix());
}

template <FieldScalar T>
bool coset_equal(const Coset<T>& a, const Coset<T>& b, double tol = kAlgebraicTol) {
  const double scale = std::max({1.0, frobenius_norm(a.traceless().matrix()), frobenius_norm(b.traceless().matrix())});
  return coset_distance(a, b) <= tol * scale;
}

/// A point (A, lambda) of S(W) + F; in M(W) when A >= 0 and det A = |lambda|^2.
template <FieldScalar T>
struct MPoint {
  Hermitian<T> A;
  T lambda{};
};

/**
 * The unique singular positive semidefinite representative of a coset:
 * rep - lambda_min(rep) E.
 */
template <FieldScalar T>
Hermitian<T> canonical_singular_rep(const Coset<T>& c) {
  if (c.dim() == 0) throw InvalidInput("canonical representative needs n >= 1");
  const auto eig = herm_eigen(c.rep());
  return c.rep().shifted(-eig.values.back());
}

namespace detail {

/// Eigenvalues at or below this fraction of the largest are treated as rounding noise.
inline double noise_floor(std::size_t n, double lambda_max) {
  return 16.0 * static_cast<double>(std::max<std::size_t>(n, 1)) * std::numeric_limits<double>::epsilon() *
         std::max(lambda_max, 0.0);
}

}  // namespace detail

/**
 * Factor a positive semidefinite A0 of rank <= m as Y Y* with Y of shape n x m.
 *
 * Y = U diag(sqrt(l_1), ..., sqrt(l_m)) over the m largest eigenpairs.
 * Throws RankTooHigh when a discarded eigenvalue exceeds 1e-9 max(1, l_max).
 */
template <FieldScalar T>
Matrix<T> psd_root_factor(const Hermitian<T>& a0, std::size_t m) {
  const std::size_t n = a0.dim();
  Matrix<T> y(n, m);
  if (n == 0 || m == 0) {
    if (n > 0 && max_abs(a0.matrix()) > kAlgebraicTol * std::max(1.0, max_abs(a0.matrix())))
      throw RankTooHigh("nonzero matrix cannot be factored through zero columns");
    return y;
  }
  const auto eig = herm_eigen(a0);
  const double lmax = eig.values.front();
  const double rank_tol = kAlgebraicTol * std::max(1.0, lmax);
  for (std::size_t i = m; i < n; ++i)
    if (eig.values[i] > rank_tol) throw RankTooHigh("matrix rank exceeds the requested number of columns");
  if (eig.values.back() < -rank_tol) throw InvalidInput("matrix is not positive semidefinite");

  const double floor = detail::noise_floor(n, lmax);
  for (std::size_t j = 0; j < std::min(m, n); ++j) {
    const double l = eig.values[j] <= floor ? 0.0 : eig.values[j];
    const double r = std::sqrt(l);
    for (std::size_t i = 0; i < n; ++i) y(i, j) = eig.vectors(i, j) * r;
  }
  return y;
}

/// The SO-orbit map X -> (X X*, det X) on End(W).
template <FieldScalar T>
std::pair<Hermitian<T>, T> pi_so(const Matrix<T>& x) {
  if (!x.is_square()) throw InvalidInput("pi_so expects a square matrix");
  return {gram(x), det(x)};
}

/// Membership in M(W) = {(A, l) : A >= 0, det A = |l|^2}, with relative tolerance.
template <FieldScalar T>
bool in_M(const MPoint<T>& p, double tol = kAlgebraicTol) {
  const std::size_t n = p.A.dim();
  if (n == 0) return std::abs(abs2(p.lambda) - 1.0) <= tol;
  const auto eig = herm_eigen(p.A);
  const double scale = std::max(1.0, std::abs(eig.values.front()));
  if (eig.values.back() < -tol * scale) return false;
  double d = 1.0;
  for (double l : eig.values) d *= l;
  const double target = abs2(p.lambda);
  return std::abs(d - target) <= tol * std::max({1.0, std::abs(d), target});
}

/**
 * A witness X with X X* + RE = c and det X = lambda.
 *
 * Bisects for the unique t >= -lambda_min(rep) with det(rep + tE) = |lambda|^2
 * (monotone on that ray), takes the full PSD root Y = U diag(sqrt(mu + t)),
 * and corrects the phase of det Y on the last column.
 */
template <FieldScalar T>
Matrix<T> preimage_cor22(const Coset<T>& c, const T& lambda) {
  const std::size_t n = c.dim();
  if (n == 0) throw InvalidInput("preimage needs n >= 1");
  const auto eig = herm_eigen(c.rep());
  const std::vector<double>& mu = eig.values;
  const double lo0 = -mu.back();
  const double target = abs2(lambda);

  auto f = [&](double t) {
    double p = 1.0;
    for (double m : mu) p *= std::max(m + t, 0.0);
    return p;
  };

  double t = lo0;
  if (target > 0.0) {
    double lo = lo0;
    double step = std::max({1.0, mu.front() - mu.back(), std::pow(target, 1.0 / static_cast<double>(n))});
    double hi = lo0 + step;
    int grow = 0;
    while (f(hi) < target) {
      lo = hi;
      step *= 2.0;
      hi = lo0 + step;
      if (++grow > 2000 || !std::isfinite(hi)) throw NumericalFailure("could not bracket the determinant root");
    }
    for (int it = 0; it < 4000; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = f(mid);
      if (std::abs(fm - target) <= 1e-12 * target) {
        lo = hi = mid;
        break;
      }
      if (mid <= lo || mid >= hi) break;  // interval collapsed to adjacent doubles
      (fm < target ? lo : hi) = mid;
    }
    t = 0.5 * (lo + hi);
    if (!std::isfinite(t)) throw NumericalFailure("determinant root is not finite");
  }

  Matrix<T> y(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double r = std::sqrt(std::max(mu[j] + t, 0.0));
    for (std::size_t i = 0; i < n; ++i) y(i, j) = eig.vectors(i, j) * r;
  }
  if (target > 0.0) {
    const T d = det(y);
    if (d == T(0.0)) throw NumericalFailure("factor is singular for a nonzero determinant target");
    const T unit = phase<T>(lambda / d);
    for (std::size_t i = 0; i < n; ++i) y(i, n - 1) *= unit;
  }
  return y;
}

}  // namespace orbitq
