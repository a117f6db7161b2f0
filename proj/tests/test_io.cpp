#include <gtest/gtest.h>

#include "orbitq/io.hpp"

using namespace orbitq;

TEST(PointJson, BareRealsAndPairs) {
  const auto p = point_from_string(R"({"field":"R","n":2,"k":1,"A":[[2,0],[0,[1,0]]],"B":[[0.5],[-1]]})");
  ASSERT_EQ(point_field(p), FieldTag::Real);
  const auto& r = std::get<ReprPoint<double>>(p);
  EXPECT_EQ(r.n, 2u);
  EXPECT_EQ(r.k, 1u);
  EXPECT_EQ(r.cosetA.rep()(1, 1), 1.0);
  EXPECT_EQ(r.B(1, 0), -1.0);

  const auto c = point_from_string(R"({"field":"C","n":1,"k":2,"A":[[[0.5,0]]],"B":[[[1,2],3]]})");
  const auto& q = std::get<ReprPoint<Complex>>(c);
  EXPECT_EQ(q.B(0, 0), Complex(1.0, 2.0));
  EXPECT_EQ(q.B(0, 1), Complex(3.0, 0.0));
}

TEST(PointJson, EmptyPoint) {
  const auto p = point_from_string(R"({"field":"R","n":0,"k":2,"A":[],"B":[]})");
  const auto& r = std::get<ReprPoint<double>>(p);
  EXPECT_EQ(r.n, 0u);
  EXPECT_EQ(r.B.cols(), 2u);
}

TEST(PointJson, Rejections) {
  EXPECT_THROW(point_from_string("{"), ParseError);
  EXPECT_THROW(point_from_string("[]"), ParseError);
  EXPECT_THROW(point_from_string(R"({"field":"Q","n":1,"k":1,"A":[[0]],"B":[[1]]})"), ParseError);
  EXPECT_THROW(point_from_string(R"({"field":"R","n":1,"k":1,"A":[[0]]})"), ParseError);
  EXPECT_THROW(point_from_string(R"({"field":"R","n":1,"k":1,"A":[[0]],"B":[["x"]]})"), ParseError);
  EXPECT_THROW(point_from_string(R"({"field":"R","n":1,"k":1,"A":[[0]],"B":[[[1,1]]]})"), ParseError);
  EXPECT_THROW(point_from_string(R"({"field":"R","n":2,"k":1,"A":[[0]],"B":[[1],[1]]})"), InvalidInput);
  EXPECT_THROW(point_from_string(R"({"field":"R","n":1,"k":1,"A":[[0]],"B":[[1,2]]})"), InvalidInput);
  EXPECT_THROW(point_from_string(R"({"field":"R","n":1,"k":3,"A":[[0]],"B":[[1,2,3]]})"), InvalidInput);
  EXPECT_THROW(point_from_string(R"({"field":"R","n":0,"k":1,"A":[],"B":[]})"), InvalidInput);
  EXPECT_THROW(point_from_string(R"({"field":"R","n":2,"k":1,"A":[[0,1],[2,0]],"B":[[1],[1]]})"), InvalidInput);
  EXPECT_THROW(point_from_string(R"({"field":"C","n":1,"k":1,"A":[[[0,1]]],"B":[[1]]})"), InvalidInput);
}

TEST(QuotientJson, Examples) {
  EXPECT_EQ(quotient_to_json(QuotientValue{{}, Complex(3.0, 0.0)}).dump(), R"({"v":[],"nu":[3.0,0.0]})");
  EXPECT_EQ(quotient_to_json(QuotientValue{}).dump(), R"({"v":[]})");
  EXPECT_EQ(quotient_to_json(QuotientValue{{0.5, 0.0}, std::nullopt}).dump(), R"({"v":[0.5,0.0]})");
}

template <class T>
class IoRandom : public ::testing::Test {};
using Fields = ::testing::Types<double, Complex>;
TYPED_TEST_SUITE(IoRandom, Fields);

TYPED_TEST(IoRandom, RoundTripsAreBitExact) {
  using T = TypeParam;
  Rng rng(51);
  for (std::size_t k : {1u, 2u})
    for (std::size_t n = 2 - k; n <= 5; ++n) {
      const auto p = random_point<T>(n, k, rng);
      const std::string text = point_to_json(p).dump();
      const auto back = std::get<ReprPoint<T>>(point_from_string(text));
      EXPECT_EQ(back.cosetA.rep(), p.cosetA.rep());
      EXPECT_EQ(back.B, p.B);
      EXPECT_EQ(point_to_json(back).dump(), text);

      const auto q = evaluate(p);
      const auto qback = quotient_from_json(json::parse(quotient_to_json(q).dump()));
      EXPECT_EQ(qback, q);

      const auto g = random_orthogonal<T>(n, rng);
      const auto gback = group_from_json<T>(json::parse(group_to_json(g).dump()));
      EXPECT_EQ(gback.C, g.C);
    }
}

TEST(FieldName, Parse) {
  EXPECT_EQ(parse_field("R"), FieldTag::Real);
  EXPECT_EQ(parse_field("C"), FieldTag::Complex);
  EXPECT_THROW(parse_field("r"), ParseError);
}
