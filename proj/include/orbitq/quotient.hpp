#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "orbitq/errors.hpp"
#include "orbitq/factorizations.hpp"
#include "orbitq/linalg.hpp"
#include "orbitq/point.hpp"

namespace orbitq {

/// Relative tolerance for end-to-end comparisons of quotient values.
inline constexpr double kCompositeTol = 1e-7;

/**
 * Value of the quotient map.
 *
 * Layout of `v`, level by level from dim W = n downwards: the level's V'
 * block, then the tail produced by the next level, then (k = 1 only) the real
 * coordinate t = |lambda|^2 - |mu|^2 of that level. `nu` is present iff k = 1.
 *
 * V' blocks are written as the real diagonal followed by the strict upper
 * triangle (re, and im over C) in row order. The bottom level of the k = 2
 * tower writes a coset of S(F^2)/RE via its traceless form with the last
 * diagonal entry dropped.
 */
struct QuotientValue {
  std::vector<double> v;
  std::optional<Complex> nu;

  friend bool operator==(const QuotientValue&, const QuotientValue&) = default;
};

/// dim V for the target of the quotient map.
inline std::size_t dim_V(FieldTag field, std::size_t k, std::size_t n) {
  if (k != 1 && k != 2) throw InvalidInput("k must be 1 or 2");
  if (n + k < 2) throw InvalidInput("dimension must satisfy n >= 2 - k");
  if (k == 1) return 2 * (n - 1);
  const std::size_t s = field == FieldTag::Real ? 3 : 4;
  return n == 0 ? 0 : (n - 1) * s + (s - 1);
}

/// The V' component of the block split: a full k x k self-adjoint matrix
/// when W1 != 0, a coset of S(F^k)/RE when W1 = 0.
template <FieldScalar T>
using VPrime = std::variant<Hermitian<T>, Coset<T>>;

template <FieldScalar T>
struct PhiValue {
  VPrime<T> vPrime;
  Coset<T> cosetA1;
  Matrix<T> B1;
};

template <FieldScalar T>
void serialize_hermitian(const Hermitian<T>& h, bool drop_last_diagonal, std::vector<double>& out) {
  const std::size_t k = h.dim();
  const std::size_t ndiag = drop_last_diagonal && k > 0 ? k - 1 : k;
  for (std::size_t i = 0; i < ndiag; ++i) out.push_back(real_part(h(i, i)));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      out.push_back(real_part(h(i, j)));
      if constexpr (is_complex_v<T>) out.push_back(imag_part(h(i, j)));
    }
}

template <FieldScalar T>
void serialize_vprime(const VPrime<T>& vp, std::vector<double>& out) {
  if (const auto* h = std::get_if<Hermitian<T>>(&vp)) {
    serialize_hermitian(*h, false, out);
  } else {
    serialize_hermitian(std::get<Coset<T>>(vp).traceless(), true, out);
  }
}

/**
 * Splits a coset of S(W1 + F^k)/RE, dim W1 = n - 1, into (V', A1 + RE, B1)
 * along the blocks [[A1, B1], [B1*, A2]] of any representative.
 *
 * For n - 1 > 0, V' = A2 - (tr A1 / (n - 1)) E_k, which is unchanged by
 * adding a multiple of E to the representative and by conjugating A1.
 */
template <FieldScalar T>
PhiValue<T> phi_split(const Coset<T>& s, std::size_t n, std::size_t k) {
  if (k != 1 && k != 2) throw InvalidInput("k must be 1 or 2");
  if (n == 0 || s.dim() != n - 1 + k) throw InvalidInput("phi_split shape mismatch");
  const std::size_t m = n - 1;
  const Matrix<T>& rep = s.rep().matrix();
  const Hermitian<T> a1(rep.block(0, 0, m, m));
  const Hermitian<T> a2(rep.block(m, m, k, k));
  PhiValue<T> out;
  out.B1 = rep.block(0, m, m, k);
  if (m > 0) {
    out.vPrime = a2.shifted(-a1.trace() / static_cast<double>(m));
    out.cosetA1 = Coset<T>(a1);
  } else {
    out.vPrime = Coset<T>(a2);
    out.cosetA1 = Coset<T>(std::size_t{0});
  }
  return out;
}

/// Leaves the factor Y of a section untouched.
struct NoTwist {
  template <class M>
  void operator()(M&) const {}
};

/**
 * Z = [Y | B] with Y Y* the singular PSD representative of the coset, so that
 * Z -> (Z|W1 (Z|W1)* + RE, Z|F^k) returns the input point.
 *
 * `twist` may right-multiply Y by an element of O(W1); any such choice is an
 * equally valid section.
 */
template <FieldScalar T, class Twist = NoTwist>
Matrix<T> section_pi0(const ReprPoint<T>& p, Twist&& twist = {}) {
  if (p.n == 0) throw InvalidInput("section_pi0 needs n >= 1");
  Matrix<T> y = psd_root_factor(canonical_singular_rep(p.cosetA), p.n - 1);
  twist(y);
  return hcat(y, p.B);
}

/// (lambda, mu) -> (|lambda|^2 - |mu|^2, lambda mu); constant on (c lambda, c^-1 mu) for |c| = 1.
template <FieldScalar T>
std::pair<double, T> gamma(const T& lambda, const T& mu) {
  return {abs2(lambda) - abs2(mu), lambda * mu};
}

namespace detail {

template <FieldScalar T, class Twist>
T evaluate_k1_into(const ReprPoint<T>& p, Twist& twist, std::vector<double>& out) {
  if (p.n == 1) return p.B(0, 0);
  const Matrix<T> z = section_pi0(p, twist);
  const T mu = det(z);
  const auto phi = phi_split(Coset<T>(gram_t(z)), p.n, 1);
  serialize_vprime(phi.vPrime, out);
  const T lambda = evaluate_k1_into(ReprPoint<T>(phi.cosetA1, phi.B1), twist, out);
  const auto [t, nu] = gamma(lambda, mu);
  out.push_back(t);
  return nu;
}

template <FieldScalar T, class Twist>
void evaluate_k2_into(const ReprPoint<T>& p, Twist& twist, std::vector<double>& out) {
  if (p.n == 0) return;
  const Matrix<T> z = section_pi0(p, twist);
  const auto phi = phi_split(Coset<T>(gram_t(z)), p.n, 2);
  serialize_vprime(phi.vPrime, out);
  evaluate_k2_into(ReprPoint<T>(phi.cosetA1, phi.B1), twist, out);
}

}  // namespace detail

/**
 * Quotient map for k = 1. Fibres are the SO(W)-orbits; under C in O(W) the
 * vector part is invariant and nu is multiplied by det C.
 */
template <FieldScalar T, class Twist = NoTwist>
QuotientValue evaluate_k1(const ReprPoint<T>& p, Twist&& twist = {}) {
  p.validate();
  if (p.k != 1) throw InvalidInput("evaluate_k1 needs k = 1");
  QuotientValue q;
  q.v.reserve(dim_V(field_of<T>, 1, p.n));
  q.nu = to_complex(detail::evaluate_k1_into(p, twist, q.v));
  return q;
}

/// Quotient map for k = 2. Fibres are the O(W)-orbits.
template <FieldScalar T, class Twist = NoTwist>
QuotientValue evaluate_k2(const ReprPoint<T>& p, Twist&& twist = {}) {
  p.validate();
  if (p.k != 2) throw InvalidInput("evaluate_k2 needs k = 2");
  QuotientValue q;
  q.v.reserve(dim_V(field_of<T>, 2, p.n));
  detail::evaluate_k2_into(p, twist, q.v);
  return q;
}

template <FieldScalar T, class Twist = NoTwist>
QuotientValue evaluate(const ReprPoint<T>& p, Twist&& twist = {}) {
  return p.k == 1 ? evaluate_k1(p, twist) : evaluate_k2(p, twist);
}

/// v followed by (re nu, im nu) when nu is present.
inline std::vector<double> flatten(const QuotientValue& q) {
  std::vector<double> f = q.v;
  if (q.nu) {
    f.push_back(q.nu->real());
    f.push_back(q.nu->imag());
  }
  return f;
}

inline double euclidean_norm(const std::vector<double>& x) {
  double s = 0.0;
  for (double a : x) s += a * a;
  return std::sqrt(s);
}

/// max |a - b| over all coordinates; infinite on layout mismatch.
inline double quotient_distance(const QuotientValue& a, const QuotientValue& b) {
  const auto fa = flatten(a), fb = flatten(b);
  if (fa.size() != fb.size() || a.nu.has_value() != b.nu.has_value()) return INFINITY;
  double d = 0.0;
  for (std::size_t i = 0; i < fa.size(); ++i) d = std::max(d, std::abs(fa[i] - fb[i]));
  return d;
}

/// max(1, largest coordinate magnitude of either value)
inline double quotient_scale(const QuotientValue& a, const QuotientValue& b) {
  double s = 1.0;
  for (double x : flatten(a)) s = std::max(s, std::abs(x));
  for (double x : flatten(b)) s = std::max(s, std::abs(x));
  return s;
}

inline double relative_quotient_distance(const QuotientValue& a, const QuotientValue& b) {
  return quotient_distance(a, b) / quotient_scale(a, b);
}

}  // namespace orbitq
