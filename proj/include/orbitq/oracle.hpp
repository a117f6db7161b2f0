#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "orbitq/factorizations.hpp"
#include "orbitq/group.hpp"
#include "orbitq/linalg.hpp"
#include "orbitq/point.hpp"

namespace orbitq {

/**
 * O(W)-invariant functions of a point (A + RE, B).
 *
 * spectrum: eigenvalues of the singular PSD representative A0, descending.
 * moments:  entries of B* A0^j B for j = 0..n-1, row-major, re (and im over C).
 *
 * Sound for telling orbits apart; not claimed complete.
 */
struct InvariantSignature {
  std::vector<double> spectrum;
  std::vector<double> moments;
};

template <FieldScalar T>
InvariantSignature signature(const ReprPoint<T>& p) {
  if (p.n == 0) throw InvalidInput("signature needs n >= 1");
  const Hermitian<T> a0 = canonical_singular_rep(p.cosetA);
  InvariantSignature s;
  s.spectrum = herm_eigen(a0).values;
  Matrix<T> power_b = p.B;  // A0^j B
  const Matrix<T> b_adj = p.B.adjoint();
  for (std::size_t j = 0; j < p.n; ++j) {
    const Matrix<T> m = b_adj * power_b;
    for (const auto& x : m.data()) {
      s.moments.push_back(real_part(x));
      if constexpr (is_complex_v<T>) s.moments.push_back(imag_part(x));
    }
    power_b = a0.matrix() * power_b;
  }
  return s;
}

/// max abs difference over both components; infinite on layout mismatch.
inline double signature_distance(const InvariantSignature& a, const InvariantSignature& b) {
  if (a.spectrum.size() != b.spectrum.size() || a.moments.size() != b.moments.size())
    return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < a.spectrum.size(); ++i) d = std::max(d, std::abs(a.spectrum[i] - b.spectrum[i]));
  for (std::size_t i = 0; i < a.moments.size(); ++i) d = std::max(d, std::abs(a.moments[i] - b.moments[i]));
  return d;
}

/// Invariants of X under X -> X C^-1, C in SO(W): spectrum of X X* then (re, im) of det X.
template <FieldScalar T>
std::vector<double> end_signature(const Matrix<T>& x) {
  auto [g, d] = pi_so(x);
  std::vector<double> s = x.rows() ? herm_eigen(g).values : std::vector<double>{};
  s.push_back(real_part(d));
  s.push_back(imag_part(d));
  return s;
}

inline double max_abs_difference(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

/// Exact orbit test for X -> X C^-1 with C in SO(W): equal Gram matrices and determinants.
template <FieldScalar T>
bool so_orbit_equal(const Matrix<T>& x, const Matrix<T>& y, double tol = kAlgebraicTol) {
  if (!x.is_square() || x.rows() != y.rows() || x.cols() != y.cols()) throw InvalidInput("so_orbit_equal shape mismatch");
  const auto [gx, dx] = pi_so(x);
  const auto [gy, dy] = pi_so(y);
  const double gscale = std::max({1.0, max_abs(gx.matrix()), max_abs(gy.matrix())});
  const double dscale = std::max({1.0, abs(dx), abs(dy)});
  return max_abs((gx - gy).matrix()) <= tol * gscale && abs(dx - dy) <= tol * dscale;
}

enum class GroupKind { Orthogonal, Special };

namespace detail {

/// Restarts stop once a candidate is this close, relative to the target scale.
inline constexpr double kAlignmentStop = 1e-10;

/// A one-parameter subgroup t -> G(t) of O(n) (or SO(n)).
template <FieldScalar T>
struct Generator {
  enum class Kind { Rotation, ImaginaryRotation, Phase, PhasePair } kind;
  std::size_t i, j;

  /// C -> C G(theta), touching only columns i and j.
  void apply(Matrix<T>& c, double theta) const {
    const double cs = std::cos(theta), sn = std::sin(theta);
    const std::size_t n = c.rows();
    switch (kind) {
      case Kind::Rotation:
        for (std::size_t r = 0; r < n; ++r) {
          const T x = c(r, i), y = c(r, j);
          c(r, i) = x * cs + y * sn;
          c(r, j) = -x * sn + y * cs;
        }
        break;
      case Kind::ImaginaryRotation:
        if constexpr (is_complex_v<T>) {
          const T is(0.0, sn);
          for (std::size_t r = 0; r < n; ++r) {
            const T x = c(r, i), y = c(r, j);
            c(r, i) = x * cs + y * is;
            c(r, j) = x * is + y * cs;
          }
        }
        break;
      case Kind::Phase:
        if constexpr (is_complex_v<T>) {
          const T e(cs, sn);
          for (std::size_t r = 0; r < n; ++r) c(r, i) *= e;
        }
        break;
      case Kind::PhasePair:
        if constexpr (is_complex_v<T>) {
          const T e(cs, sn);
          for (std::size_t r = 0; r < n; ++r) {
            c(r, i) *= e;
            c(r, j) *= std::conj(e);
          }
        }
        break;
    }
  }
};

template <FieldScalar T>
std::vector<Generator<T>> generators(std::size_t n, GroupKind group) {
  using G = Generator<T>;
  std::vector<G> gens;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      gens.push_back({G::Kind::Rotation, i, j});
      if constexpr (is_complex_v<T>) gens.push_back({G::Kind::ImaginaryRotation, i, j});
    }
  if constexpr (is_complex_v<T>) {
    if (group == GroupKind::Orthogonal) {
      for (std::size_t i = 0; i < n; ++i) gens.push_back({G::Kind::Phase, i, i});
    } else {
      for (std::size_t i = 0; i + 1 < n; ++i) gens.push_back({G::Kind::PhasePair, i, i + 1});
    }
  }
  return gens;
}

/**
 * Exact minimizer of a trigonometric polynomial of degree <= 4 known from its
 * values at the nine points 2 pi m / 9. Returns (theta, fitted value).
 */
inline std::pair<double, double> trig_poly_min(const std::array<double, 9>& samples) {
  constexpr int kDeg = 4;
  constexpr double w = 2.0 * std::numbers::pi / 9.0;
  std::array<double, kDeg + 1> a{}, b{};
  for (int m = 0; m < 9; ++m) a[0] += samples[m] / 9.0;
  for (int h = 1; h <= kDeg; ++h)
    for (int m = 0; m < 9; ++m) {
      a[h] += 2.0 / 9.0 * samples[m] * std::cos(h * m * w);
      b[h] += 2.0 / 9.0 * samples[m] * std::sin(h * m * w);
    }
  auto eval = [&](double th, int deriv) {
    double s = deriv == 0 ? a[0] : 0.0;
    for (int h = 1; h <= kDeg; ++h) {
      const double c = std::cos(h * th), sn = std::sin(h * th);
      if (deriv == 0) s += a[h] * c + b[h] * sn;
      if (deriv == 1) s += h * (-a[h] * sn + b[h] * c);
      if (deriv == 2) s += -h * h * (a[h] * c + b[h] * sn);
    }
    return s;
  };
  constexpr int kGrid = 90;
  double best_th = 0.0, best_v = eval(0.0, 0);
  for (int g = 1; g < kGrid; ++g) {
    const double th = 2.0 * std::numbers::pi * g / kGrid;
    const double v = eval(th, 0);
    if (v < best_v) best_v = v, best_th = th;
  }
  for (int it = 0; it < 8; ++it) {
    const double d2 = eval(best_th, 2);
    if (d2 <= 0.0) break;
    const double next = best_th - eval(best_th, 1) / d2;
    const double v = eval(next, 0);
    if (!(v <= best_v)) break;
    best_th = next;
    best_v = v;
  }
  return {best_th, best_v};
}

inline double squared_norm(const std::vector<double>& r) {
  double s = 0.0;
  for (double x : r) s += x * x;
  return s;
}

/// Solves (M + mu diag(M)) x = rhs for symmetric positive semidefinite M by Cholesky; false if not positive definite.
inline bool solve_damped(std::vector<double> m, std::vector<double> rhs, std::size_t dim, double mu,
                         std::vector<double>& x) {
  for (std::size_t i = 0; i < dim; ++i) m[i * dim + i] += mu * m[i * dim + i] + 1e-300;
  for (std::size_t j = 0; j < dim; ++j) {
    double d = m[j * dim + j];
    for (std::size_t l = 0; l < j; ++l) d -= m[j * dim + l] * m[j * dim + l];
    if (!(d > 0.0)) return false;
    d = std::sqrt(d);
    m[j * dim + j] = d;
    for (std::size_t i = j + 1; i < dim; ++i) {
      double v = m[i * dim + j];
      for (std::size_t l = 0; l < j; ++l) v -= m[i * dim + l] * m[j * dim + l];
      m[i * dim + j] = v / d;
    }
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t l = 0; l < i; ++l) rhs[i] -= m[i * dim + l] * rhs[l];
    rhs[i] /= m[i * dim + i];
  }
  for (std::size_t i = dim; i-- > 0;) {
    for (std::size_t l = i + 1; l < dim; ++l) rhs[i] -= m[l * dim + i] * rhs[l];
    rhs[i] /= m[i * dim + i];
  }
  x = std::move(rhs);
  return true;
}

inline constexpr int kCoordinateSweeps = 8;
inline constexpr int kMarquardtIterations = 60;

/**
 * Minimizes ||r(C)||^2 over the group by random restarts. Each start gets a
 * few sweeps of coordinate descent along one-parameter subgroups, then a
 * Levenberg-Marquardt polish in the coordinates of those subgroups.
 *
 * Along one subgroup ||r||^2 is a trigonometric polynomial of degree <= 4
 * (it is at most quartic in the entries of C), so nine samples give an exact
 * line search. The identity is always the first start. Returns the smallest
 * ||r|| found.
 */
template <FieldScalar T, class Residual>
double minimize_over_group(Residual&& residual, std::size_t n, GroupKind group, std::size_t restarts,
                           std::uint64_t seed, double stop_below) {
  Rng rng(seed);
  const auto gens = generators<T>(n, group);
  const std::size_t ng = gens.size();
  std::vector<double> r, rp, rm;
  auto f = [&](const Matrix<T>& c) {
    residual(c, r);
    return squared_norm(r);
  };
  double best = std::numeric_limits<double>::infinity();
  const double stop2 = stop_below * stop_below;

  for (std::size_t start = 0; start < std::max<std::size_t>(restarts, 1); ++start) {
    Matrix<T> c = start == 0 ? Matrix<T>::identity(n)
                  : group == GroupKind::Special ? random_special<T>(n, rng).C
                                                : random_orthogonal<T>(n, rng).C;
    double fc = f(c);

    for (int sweep = 0; sweep < kCoordinateSweeps && fc > stop2 && ng > 0; ++sweep) {
      const double before = fc;
      for (const auto& g : gens) {
        std::array<double, 9> samples{};
        samples[0] = fc;
        for (int m = 1; m < 9; ++m) {
          Matrix<T> trial = c;
          g.apply(trial, 2.0 * std::numbers::pi * m / 9.0);
          samples[m] = f(trial);
        }
        Matrix<T> trial = c;
        g.apply(trial, trig_poly_min(samples).first);
        const double v = f(trial);
        if (v < fc) {
          c = std::move(trial);
          fc = v;
        }
      }
      if (before - fc <= 1e-3 * before) break;
    }

    double mu = 1e-3;
    for (int it = 0; it < kMarquardtIterations && fc > stop2 && ng > 0; ++it) {
      residual(c, r);
      const std::size_t m = r.size();
      std::vector<double> jac(m * ng);
      constexpr double h = 1e-6;
      for (std::size_t g = 0; g < ng; ++g) {
        Matrix<T> cp = c, cm = c;
        gens[g].apply(cp, h);
        gens[g].apply(cm, -h);
        residual(cp, rp);
        residual(cm, rm);
        for (std::size_t i = 0; i < m; ++i) jac[i * ng + g] = (rp[i] - rm[i]) / (2.0 * h);
      }
      std::vector<double> jtj(ng * ng, 0.0), jtr(ng, 0.0);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t a = 0; a < ng; ++a) {
          const double ja = jac[i * ng + a];
          jtr[a] -= ja * r[i];
          for (std::size_t b = 0; b < ng; ++b) jtj[a * ng + b] += ja * jac[i * ng + b];
        }
      bool accepted = false;
      for (int tries = 0; tries < 12 && !accepted; ++tries) {
        std::vector<double> step;
        if (solve_damped(jtj, jtr, ng, mu, step)) {
          Matrix<T> trial = c;
          for (std::size_t g = 0; g < ng; ++g) gens[g].apply(trial, step[g]);
          const double v = f(trial);
          if (v < fc) {
            accepted = true;
            const double gain = (fc - v) / fc;
            c = std::move(trial);
            fc = v;
            mu = std::max(mu / 5.0, 1e-12);
            if (gain < 1e-9) it = kMarquardtIterations;
            break;
          }
        }
        mu *= 8.0;
      }
      if (!accepted) break;
    }

    best = std::min(best, fc);
    if (best <= stop2) break;
  }
  return std::sqrt(std::max(best, 0.0));
}

}  // namespace detail

template <FieldScalar T>
void append_entries(const Matrix<T>& m, std::vector<double>& out) {
  for (const auto& x : m.data()) {
    out.push_back(real_part(x));
    if constexpr (is_complex_v<T>) out.push_back(imag_part(x));
  }
}

/**
 * Smallest distance found between C . p and q over sampled and locally refined
 * C in O(W) (or SO(W)), with the coset part measured on traceless forms. A
 * small value is evidence of a common orbit; a large value after many
 * restarts is evidence of distinct orbits.
 */
template <FieldScalar T>
double alignment_search(const ReprPoint<T>& p, const ReprPoint<T>& q, std::size_t trials, std::uint64_t seed,
                        GroupKind group = GroupKind::Orthogonal) {
  if (p.n != q.n || p.k != q.k) throw InvalidInput("alignment_search shape mismatch");
  if (p.n == 0) return frobenius_norm(p.B - q.B);
  const Hermitian<T> ap = p.cosetA.traceless();
  const Hermitian<T> aq = q.cosetA.traceless();
  auto residual = [&](const Matrix<T>& c, std::vector<double>& out) {
    out.clear();
    append_entries((c * ap.matrix() * c.adjoint() - aq.matrix()), out);
    append_entries((c * p.B - q.B), out);
  };
  const double scale = std::max({1.0, frobenius_norm(aq.matrix()), frobenius_norm(q.B)});
  return detail::minimize_over_group<T>(residual, p.n, group, trials, seed, detail::kAlignmentStop * scale);
}

/// Smallest distance found between X C^-1 and Y over C in SO(W).
template <FieldScalar T>
double alignment_search_end(const Matrix<T>& x, const Matrix<T>& y, std::size_t trials, std::uint64_t seed) {
  if (!x.is_square() || x.rows() != y.rows() || x.cols() != y.cols()) throw InvalidInput("alignment shape mismatch");
  auto residual = [&](const Matrix<T>& c, std::vector<double>& out) {
    out.clear();
    append_entries((x * c.adjoint() - y), out);
  };
  const double scale = std::max(1.0, frobenius_norm(y));
  return detail::minimize_over_group<T>(residual, x.rows(), GroupKind::Special, trials, seed,
                                        detail::kAlignmentStop * scale);
}

}  // namespace orbitq
