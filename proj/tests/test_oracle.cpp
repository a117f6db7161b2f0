#include <gtest/gtest.h>

#include <numbers>

#include "orbitq/group.hpp"
#include "orbitq/oracle.hpp"

using namespace orbitq;

namespace {

Matrix<double> rotation(double th) {
  return Matrix<double>{{std::cos(th), -std::sin(th)}, {std::sin(th), std::cos(th)}};
}

}  // namespace

TEST(SoOrbitEqual, Examples) {
  EXPECT_TRUE(so_orbit_equal(Matrix<double>::identity(2), rotation(0.7)));
  EXPECT_FALSE(so_orbit_equal(Matrix<double>::identity(2), Matrix<double>{{1.0, 0.0}, {0.0, -1.0}}));
  EXPECT_FALSE(so_orbit_equal(Matrix<double>{{2.0, 0.0}, {0.0, 1.0}}, Matrix<double>{{1.0, 0.0}, {0.0, 2.0}}));
  EXPECT_THROW(so_orbit_equal(Matrix<double>(2, 2), Matrix<double>(3, 3)), InvalidInput);
}

TEST(Signature, Examples) {
  const Matrix<double> a{{2.0, 0.0}, {0.0, 1.0}};  // A0 = diag(1, 0)
  const auto s1 = signature(ReprPoint<double>(Coset<double>(Hermitian<double>(a)), Matrix<double>{{1.0}, {0.0}}));
  EXPECT_EQ(s1.spectrum, (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(s1.moments, (std::vector<double>{1.0, 1.0}));
  const auto s2 = signature(ReprPoint<double>(Coset<double>(Hermitian<double>(a)), Matrix<double>{{0.0}, {1.0}}));
  EXPECT_EQ(s2.moments, (std::vector<double>{1.0, 0.0}));
  EXPECT_DOUBLE_EQ(signature_distance(s1, s2), 1.0);
}

template <class T>
class OracleRandom : public ::testing::Test {};
using Fields = ::testing::Types<double, Complex>;
TYPED_TEST_SUITE(OracleRandom, Fields);

TYPED_TEST(OracleRandom, SignatureIsInvariant) {
  using T = TypeParam;
  Rng rng(41);
  for (std::size_t n = 1; n <= 5; ++n)
    for (int t = 0; t < 30; ++t) {
      const auto p = random_point<T>(n, 1 + t % 2, rng);
      const auto q = act_point(random_orthogonal<T>(n, rng), p);
      const auto sp = signature(p);
      double scale = 1.0;
      for (double m : sp.moments) scale = std::max(scale, std::abs(m));
      EXPECT_LE(signature_distance(sp, signature(q)), 1e-9 * scale);
    }
}

TYPED_TEST(OracleRandom, EndSignatureIsSpecialInvariant) {
  using T = TypeParam;
  Rng rng(42);
  for (std::size_t n = 1; n <= 4; ++n)
    for (int t = 0; t < 30; ++t) {
      const Matrix<T> x = rng.gaussian_matrix<T>(n, n);
      const Matrix<T> y = act_end(random_special<T>(n, rng), x);
      EXPECT_LE(max_abs_difference(end_signature(x), end_signature(y)), 1e-10);
      EXPECT_TRUE(so_orbit_equal(x, y));
    }
}

TYPED_TEST(OracleRandom, AlignmentFindsPlantedPairs) {
  using T = TypeParam;
  Rng rng(43);
  for (std::size_t n : {2u, 3u})
    for (int t = 0; t < 6; ++t) {
      const auto p = random_point<T>(n, 1 + t % 2, rng);
      EXPECT_LE(alignment_search(p, p, 1, 0), 1e-9);
      const auto q = act_point(random_orthogonal<T>(n, rng), p);
      EXPECT_LE(alignment_search(p, q, 50, t), 1e-6);

      const Matrix<T> x = rng.gaussian_matrix<T>(n, n);
      const Matrix<T> y = act_end(random_special<T>(n, rng), x);
      EXPECT_LE(alignment_search_end(x, y, 50, t), 1e-6);
    }
}

// Alignment is an upper bound on the orbit distance, so signature-separated
// pairs can never be aligned closer than the separation allows.
TYPED_TEST(OracleRandom, AlignmentRespectsSignatureSeparation) {
  using T = TypeParam;
  Rng rng(44);
  for (std::size_t n : {2u, 3u})
    for (int t = 0; t < 6; ++t) {
      const Matrix<T> x = rng.gaussian_matrix<T>(n, n);
      const Matrix<T> y = rng.gaussian_matrix<T>(n, n);
      ASSERT_GT(max_abs_difference(end_signature(x), end_signature(y)), 1e-3);
      EXPECT_FALSE(so_orbit_equal(x, y));
      EXPECT_GT(alignment_search_end(x, y, 10, t), 1e-6);
    }
}

TEST(Alignment, ReflectionIsNotInTheSpecialOrbit) {
  Rng rng(45);
  const Matrix<double> x = rng.gaussian_matrix<double>(3, 3);
  Matrix<double> r = Matrix<double>::identity(3);
  r(2, 2) = -1.0;
  const Matrix<double> y = act_end(GroupElement<double>::from_matrix(r), x);
  EXPECT_FALSE(so_orbit_equal(x, y));
  EXPECT_GT(alignment_search_end(x, y, 20, 0), 1e-3);
}

TEST(Alignment, ShapeMismatch) {
  Rng rng(46);
  EXPECT_THROW(alignment_search(random_point<double>(2, 1, rng), random_point<double>(3, 1, rng), 1, 0),
               InvalidInput);
  EXPECT_THROW(alignment_search_end(Matrix<double>(2, 2), Matrix<double>(3, 3), 1, 0), InvalidInput);
}

TEST(TrigPolyMin, RecoversCosineMinimum) {
  std::array<double, 9> s{};
  const double shift = 0.4;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double th = 2.0 * std::numbers::pi * double(i) / 9.0;
    s[i] = 3.0 + std::cos(th - shift) + 0.25 * std::cos(2.0 * th);
  }
  const auto [th, val] = detail::trig_poly_min(s);
  double best = 1e9;
  for (int i = 0; i < 200000; ++i) {
    const double t = -std::numbers::pi + 2.0 * std::numbers::pi * i / 200000.0;
    best = std::min(best, 3.0 + std::cos(t - shift) + 0.25 * std::cos(2.0 * t));
  }
  EXPECT_NEAR(val, best, 1e-9);
  EXPECT_NEAR(3.0 + std::cos(th - shift) + 0.25 * std::cos(2.0 * th), best, 1e-9);
}
