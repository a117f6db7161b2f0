#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "orbitq/field.hpp"
#include "orbitq/matrix.hpp"

namespace orbitq {

/// splitmix64 finalizer; used to derive independent per-trial seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) { return mix_seed(mix_seed(a) ^ (b * 0xD1B54A32D192ED03ULL)); }

/**
 * Seedable, portable random stream.
 *
 * std::mt19937_64 is bit-reproducible across standard libraries, but the
 * standard distributions are not, so uniform and normal variates are derived
 * from raw 64-bit outputs here.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  /// Standard Gaussian in F; complex values have independent N(0, 1/2) parts.
  template <FieldScalar T>
  T gaussian() {
    if constexpr (is_complex_v<T>) {
      const double re = normal(), im = normal();
      return T(re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0);
    } else {
      return normal();
    }
  }

  /// Uniform element of the unit group of F: +-1 or the unit circle.
  template <FieldScalar T>
  T unit() {
    if constexpr (is_complex_v<T>) {
      return std::polar(1.0, uniform(-std::numbers::pi, std::numbers::pi));
    } else {
      return (engine_() >> 63) ? 1.0 : -1.0;
    }
  }

  template <FieldScalar T>
  Matrix<T> gaussian_matrix(std::size_t rows, std::size_t cols) {
    Matrix<T> m(rows, cols);
    for (auto& x : m.data()) x = gaussian<T>();
    return m;
  }

  template <FieldScalar T>
  Hermitian<T> gaussian_hermitian(std::size_t n) {
    return Hermitian<T>(gaussian_matrix<T>(n, n));
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace orbitq
