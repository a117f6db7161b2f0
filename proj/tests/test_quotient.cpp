#include <gtest/gtest.h>

#include <numbers>

#include "orbitq/group.hpp"
#include "orbitq/quotient.hpp"

using namespace orbitq;

namespace {

ReprPoint<double> real_point(const Matrix<double>& a, const Matrix<double>& b) {
  return ReprPoint<double>(Coset<double>(Hermitian<double>(a)), b);
}

void expect_values(const QuotientValue& q, const std::vector<double>& v, double tol = 1e-12) {
  ASSERT_EQ(q.v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(q.v[i], v[i], tol) << "coordinate " << i;
}

// Closed form of the k = 2, n = 1 map: the traceless part of b* b, written as
// (s11, re s12[, im s12]).
template <FieldScalar T>
std::vector<double> k2_n1_oracle(const T& b1, const T& b2) {
  std::vector<double> v{0.5 * (abs2(b1) - abs2(b2))};
  const T s12 = conj(b1) * b2;
  v.push_back(real_part(s12));
  if constexpr (is_complex_v<T>) v.push_back(imag_part(s12));
  return v;
}

}  // namespace

TEST(PhiSplit, IdentityIsKilledByTheQuotient) {
  for (std::size_t k : {1u, 2u})
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto phi = phi_split(Coset<Complex>(Hermitian<Complex>::identity(n - 1 + k)), n, k);
      EXPECT_EQ(phi.B1.rows(), n - 1);
      EXPECT_LT(max_abs(phi.B1), 1e-15);
      if (n > 1) {
        EXPECT_LT(max_abs(std::get<Hermitian<Complex>>(phi.vPrime).matrix()), 1e-15);
        EXPECT_LT(max_abs(phi.cosetA1.traceless().matrix()), 1e-15);
      } else {
        EXPECT_LT(max_abs(std::get<Coset<Complex>>(phi.vPrime).traceless().matrix()), 1e-15);
      }
    }
}

TEST(PhiSplit, Examples) {
  const auto a = phi_split(Coset<double>(Hermitian<double>(Matrix<double>{{2.0, 0.0}, {0.0, 0.0}})), 2, 1);
  EXPECT_DOUBLE_EQ(std::get<Hermitian<double>>(a.vPrime)(0, 0), -2.0);
  EXPECT_DOUBLE_EQ(a.cosetA1.rep()(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(a.B1(0, 0), 0.0);

  const auto b = phi_split(Coset<double>(Hermitian<double>(Matrix<double>{{0.0, 1.0}, {1.0, 0.0}})), 2, 1);
  EXPECT_DOUBLE_EQ(std::get<Hermitian<double>>(b.vPrime)(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(b.cosetA1.traceless()(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(b.B1(0, 0), 1.0);
}

TEST(PhiSplit, ShapeMismatch) {
  EXPECT_THROW(phi_split(Coset<double>(3), 3, 2), InvalidInput);
  EXPECT_THROW(phi_split(Coset<double>(3), 0, 2), InvalidInput);
  EXPECT_THROW(phi_split(Coset<double>(3), 2, 3), InvalidInput);
}

template <class T>
class QuotientRandom : public ::testing::Test {};
using Fields = ::testing::Types<double, Complex>;
TYPED_TEST_SUITE(QuotientRandom, Fields);

TYPED_TEST(QuotientRandom, PhiSplitIsWellDefinedAndInvariant) {
  using T = TypeParam;
  Rng rng(31);
  for (std::size_t k : {1u, 2u})
    for (std::size_t n = 2; n <= 5; ++n) {
      const Hermitian<T> s = rng.gaussian_hermitian<T>(n - 1 + k);
      const auto base = phi_split(Coset<T>(s), n, k);
      const auto shifted = phi_split(Coset<T>(s.shifted(rng.normal() * 5.0)), n, k);
      const auto c1 = random_orthogonal<T>(n - 1, rng);
      const auto moved = phi_split(Coset<T>(s.conjugated(embed_R(c1, k).C)), n, k);
      const auto& v0 = std::get<Hermitian<T>>(base.vPrime);
      EXPECT_LT(max_abs((std::get<Hermitian<T>>(shifted.vPrime) - v0).matrix()), 1e-12);
      EXPECT_LT(max_abs((std::get<Hermitian<T>>(moved.vPrime) - v0).matrix()), 1e-12);
      EXPECT_LT(coset_distance(shifted.cosetA1, base.cosetA1), 1e-12);
      EXPECT_LT(max_abs(shifted.B1 - base.B1), 1e-12);
      // O(W1) acts on the remaining components as (C1 A1 C1^-1, C1 B1).
      EXPECT_LT(coset_distance(moved.cosetA1, Coset<T>(base.cosetA1.rep().conjugated(c1.C))), 1e-12);
      EXPECT_LT(max_abs(moved.B1 - c1.C * base.B1), 1e-12);
    }
}

TEST(SectionPi0, Examples) {
  const auto z1 = section_pi0(real_point(Matrix<double>{{2.0, 0.0}, {0.0, 1.0}}, Matrix<double>{{0.0}, {0.0}}));
  EXPECT_NEAR(std::abs(z1(0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(z1(1, 0), 0.0, 1e-15);
  EXPECT_EQ(z1(0, 1), 0.0);
  EXPECT_EQ(z1(1, 1), 0.0);

  const ReprPoint<double> p2(Coset<double>(1), Matrix<double>{{1.0, 0.0}});
  EXPECT_EQ(section_pi0(p2), (Matrix<double>{{1.0, 0.0}}));

  const auto z3 = section_pi0(real_point(Matrix<double>::identity(2), Matrix<double>{{0.0}, {1.0}}));
  EXPECT_LT(max_abs(z3 - Matrix<double>{{0.0, 0.0}, {0.0, 1.0}}), 1e-15);

  EXPECT_THROW(section_pi0(ReprPoint<double>(Coset<double>(std::size_t{0}), Matrix<double>(0, 2))), InvalidInput);
}

TEST(Gamma, Examples) {
  EXPECT_EQ(gamma(1.0, 0.0), (std::pair{1.0, 0.0}));
  EXPECT_EQ(gamma(0.0, 1.0), (std::pair{-1.0, 0.0}));
  const auto [t, nu] = gamma(Complex(0.0, 1.0), Complex(0.0, 1.0));
  EXPECT_EQ(t, 0.0);
  EXPECT_EQ(nu, Complex(-1.0, 0.0));
}

TYPED_TEST(QuotientRandom, GammaIsUnitInvariant) {
  using T = TypeParam;
  Rng rng(32);
  for (int i = 0; i < 1000; ++i) {
    const T l = rng.gaussian<T>(), m = rng.gaussian<T>(), c = rng.unit<T>();
    const auto [t0, n0] = gamma(l, m);
    const auto [t1, n1] = gamma(T(c * l), T(conj(c) * m));
    const double scale = abs2(l) + abs2(m);
    EXPECT_LE(std::abs(t1 - t0), 8e-16 * scale);
    EXPECT_LE(orbitq::abs(n1 - n0), 8e-16 * scale);
  }
}

TEST(EvaluateK1, BaseCase) {
  const auto q = evaluate_k1(ReprPoint<double>(Coset<double>(1), Matrix<double>{{3.0}}));
  EXPECT_TRUE(q.v.empty());
  EXPECT_EQ(q.nu, Complex(3.0, 0.0));
}

// Hand traces for n = 2 over R with coset diag(2, 1): A0 = diag(1, 0) and
// Y = +-e1, so Z = [[+-1, b1], [0, b2]] and Z*Z = [[1, +-b1], [+-b1, |b|^2]].
// Then v' = |b|^2 - 1, lambda = +-b1, mu = det Z = +-b2.
TEST(EvaluateK1, HandTracedTwoDimensional) {
  const Matrix<double> a{{2.0, 0.0}, {0.0, 1.0}};
  struct Case {
    double b1, b2;
    std::vector<double> v;
    double nu;
  };
  const std::vector<Case> cases{
      {0.0, 0.0, {-1.0, 0.0}, 0.0},  // lambda = 0, mu = 0
      {0.0, 1.0, {0.0, -1.0}, 0.0},  // lambda = 0, mu = +-1
      {1.0, 0.0, {0.0, 1.0}, 0.0},   // lambda = +-1, mu = 0
      {1.0, 1.0, {1.0, 0.0}, 1.0},   // lambda = mu = +-1
      {1.0, -1.0, {1.0, 0.0}, -1.0}, // reflection of the previous line
  };
  for (const auto& c : cases) {
    const auto q = evaluate_k1(real_point(a, Matrix<double>{{c.b1}, {c.b2}}));
    expect_values(q, c.v);
    EXPECT_NEAR(q.nu->real(), c.nu, 1e-12);
    EXPECT_EQ(q.nu->imag(), 0.0);
  }
}

TEST(EvaluateK1, PlanarRotationInvariance) {
  Rng rng(33);
  for (int t = 0; t < 200; ++t) {
    const auto p = random_point<double>(2, 1, rng);
    const double th = rng.uniform(-std::numbers::pi, std::numbers::pi);
    const auto c = GroupElement<double>::from_matrix(
        Matrix<double>{{std::cos(th), -std::sin(th)}, {std::sin(th), std::cos(th)}});
    EXPECT_LE(relative_quotient_distance(evaluate_k1(p), evaluate_k1(act_point(c, p))), 1e-12);
  }
}

TEST(EvaluateK2, Examples) {
  const auto q0 = evaluate_k2(ReprPoint<double>(Coset<double>(std::size_t{0}), Matrix<double>(0, 2)));
  EXPECT_TRUE(q0.v.empty());
  EXPECT_FALSE(q0.nu.has_value());

  const auto q1 = evaluate_k2(ReprPoint<double>(Coset<double>(1), Matrix<double>{{1.0, 0.0}}));
  expect_values(q1, {0.5, 0.0}, 0.0);
  const auto q2 = evaluate_k2(ReprPoint<double>(Coset<double>(1), Matrix<double>{{-1.0, 0.0}}));
  EXPECT_EQ(q1, q2);
}

TYPED_TEST(QuotientRandom, K2OneDimensionalMatchesClosedForm) {
  using T = TypeParam;
  Rng rng(34);
  for (int t = 0; t < 200; ++t) {
    const Matrix<T> b = rng.gaussian_matrix<T>(1, 2);
    // The coset representative of a 1 x 1 matrix is irrelevant.
    const ReprPoint<T> p(Coset<T>(rng.gaussian_hermitian<T>(1)), b);
    expect_values(evaluate_k2(p), k2_n1_oracle(b(0, 0), b(0, 1)), 1e-14);
  }
}

TEST(DimV, Examples) {
  EXPECT_EQ(dim_V(FieldTag::Real, 1, 1), 0u);
  EXPECT_EQ(dim_V(FieldTag::Real, 2, 1), 2u);
  EXPECT_EQ(dim_V(FieldTag::Complex, 1, 3), 4u);
  EXPECT_EQ(dim_V(FieldTag::Real, 2, 0), 0u);
  EXPECT_EQ(dim_V(FieldTag::Complex, 2, 1), 3u);
  EXPECT_EQ(dim_V(FieldTag::Complex, 2, 3), 11u);
  EXPECT_THROW(dim_V(FieldTag::Real, 1, 0), InvalidInput);
  EXPECT_THROW(dim_V(FieldTag::Real, 3, 2), InvalidInput);
}

TYPED_TEST(QuotientRandom, LengthMatchesDimV) {
  using T = TypeParam;
  Rng rng(35);
  for (std::size_t k : {1u, 2u})
    for (std::size_t n = 2 - k; n <= 7; ++n) {
      const auto q = evaluate(random_point<T>(n, k, rng));
      EXPECT_EQ(q.v.size(), dim_V(field_of<T>, k, n));
      EXPECT_EQ(q.nu.has_value(), k == 1);
    }
}

// Column permutations and sign/phase changes of Y model a different tie-break
// order in the eigensolver; the value must not move.
TYPED_TEST(QuotientRandom, IndependentOfEigenvectorOrderAndPhase) {
  using T = TypeParam;
  Rng rng(36);
  for (std::size_t k : {1u, 2u})
    for (std::size_t n = 2; n <= 6; ++n)
      for (int t = 0; t < 20; ++t) {
        ReprPoint<T> p = random_point<T>(n, k, rng);
        // Even trials use a fully degenerate spectrum.
        if (t % 2 == 0) p.cosetA = Coset<T>(Hermitian<T>::identity(n));
        auto permute = [&rng](Matrix<T>& y) {
          const std::size_t m = y.cols();
          if (m < 2) return;
          Matrix<T> q(m, m);
          std::vector<std::size_t> perm(m);
          for (std::size_t i = 0; i < m; ++i) perm[i] = i;
          for (std::size_t i = m - 1; i > 0; --i) std::swap(perm[i], perm[rng.next_u64() % (i + 1)]);
          for (std::size_t i = 0; i < m; ++i) q(perm[i], i) = rng.unit<T>();
          y = y * q;
        };
        EXPECT_LE(relative_quotient_distance(evaluate(p), evaluate(p, permute)), 1e-9);
      }
}

TEST(Evaluate, RejectsWrongK) {
  Rng rng(37);
  EXPECT_THROW(evaluate_k1(random_point<double>(2, 2, rng)), InvalidInput);
  EXPECT_THROW(evaluate_k2(random_point<double>(2, 1, rng)), InvalidInput);
  EXPECT_THROW(ReprPoint<double>(Coset<double>(std::size_t{0}), Matrix<double>(0, 1)), InvalidInput);
}
