#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <string_view>
#include <type_traits>

namespace orbitq {

/// Runtime selector for the ground field.
enum class FieldTag { Real, Complex };

constexpr std::string_view to_string(FieldTag f) { return f == FieldTag::Real ? "R" : "C"; }

using Complex = std::complex<double>;

template <class T>
concept FieldScalar = std::same_as<T, double> || std::same_as<T, Complex>;

/**
 * Compile-time traits of a field scalar.
 *
 * `real_dim` is the dimension of F over the reals; the unit group of F is
 * {+1, -1} for the reals and the unit circle for the complex numbers.
 */
template <FieldScalar T>
struct FieldTraits;

template <>
struct FieldTraits<double> {
  static constexpr FieldTag tag = FieldTag::Real;
  static constexpr int real_dim = 1;
  static constexpr bool is_complex = false;
};

template <>
struct FieldTraits<Complex> {
  static constexpr FieldTag tag = FieldTag::Complex;
  static constexpr int real_dim = 2;
  static constexpr bool is_complex = true;
};

template <FieldScalar T>
constexpr FieldTag field_of = FieldTraits<T>::tag;

template <FieldScalar T>
constexpr bool is_complex_v = FieldTraits<T>::is_complex;

inline double conj(double x) { return x; }
inline Complex conj(const Complex& z) { return std::conj(z); }

inline double real_part(double x) { return x; }
inline double real_part(const Complex& z) { return z.real(); }

inline double imag_part(double) { return 0.0; }
inline double imag_part(const Complex& z) { return z.imag(); }

/// |x|^2
inline double abs2(double x) { return x * x; }
inline double abs2(const Complex& z) { return z.real() * z.real() + z.imag() * z.imag(); }

inline double abs(double x) { return std::abs(x); }
inline double abs(const Complex& z) { return std::hypot(z.real(), z.imag()); }

/// Lossless widening to a complex value, used for field-agnostic reporting.
inline Complex to_complex(double x) { return {x, 0.0}; }
inline Complex to_complex(const Complex& z) { return z; }

/// Narrowing from a complex value; the imaginary part is dropped for the reals.
template <FieldScalar T>
T from_complex(const Complex& z) {
  if constexpr (is_complex_v<T>) {
    return z;
  } else {
    return z.real();
  }
}

/// Unit-modulus part of x, with phase(0) = 1.
template <FieldScalar T>
T phase(const T& x) {
  const double m = abs(x);
  if (m == 0.0) return T(1.0);
  return x / m;
}

}  // namespace orbitq
