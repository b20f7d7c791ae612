#include <gtest/gtest.h>

#include "parikh/chambers.hpp"
#include "parikh/errors.hpp"

using namespace parikh;

namespace {

Hyperplane plane(std::vector<std::int64_t> n) { return *Hyperplane::from_coefficients(std::span<const std::int64_t>(n)); }

QuasiPolynomial constant(std::size_t t, long v) { return QuasiPolynomial::from_polynomial(MultiPoly::constant(t, v)); }

Arrangement diagonal_arrangement() {
  Arrangement arr(2);
  arr.add(plane({1, -1}));
  return arr;
}

}  // namespace

TEST(Hyperplane, NormalFormIsPrimitiveWithPositiveLead) {
  EXPECT_EQ(plane({2, -4}).normal(), (std::vector<std::int64_t>{1, -2}));
  EXPECT_EQ(plane({-2, 4}).normal(), (std::vector<std::int64_t>{1, -2}));
  EXPECT_EQ(plane({0, -3}).normal(), (std::vector<std::int64_t>{0, 1}));
  const std::vector<Rational> half{Rational(1, 2), Rational(-1, 3)};
  EXPECT_EQ(Hyperplane::from_coefficients(half)->normal(), (std::vector<std::int64_t>{3, -2}));
  const std::vector<std::int64_t> zero{0, 0};
  EXPECT_FALSE(Hyperplane::from_coefficients(std::span<const std::int64_t>(zero)).has_value());
}

TEST(Hyperplane, SignDefiniteAndRendering) {
  EXPECT_TRUE(plane({1, 2}).sign_definite());
  EXPECT_FALSE(plane({1, -2}).sign_definite());
  EXPECT_EQ(plane({3, -2}).to_string(), "3*x1 - 2*x2");
  const std::vector<std::int64_t> pt{2, 3};
  EXPECT_EQ(plane({3, -2}).sign_at(std::span<const std::int64_t>(pt)), 0);
  EXPECT_EQ(plane({1, -1}).sign_at(std::span<const std::int64_t>(pt)), -1);
}

TEST(Arrangement, CoordinatePlanesFirstAndNoDuplicates) {
  Arrangement arr(3);
  ASSERT_EQ(arr.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(arr[i], Hyperplane::coordinate(3, i));
  EXPECT_TRUE(arr.add(plane({1, -1, 0})));
  EXPECT_FALSE(arr.add(plane({-2, 2, 0})));
  EXPECT_FALSE(arr.add(Hyperplane::coordinate(3, 1)));
  EXPECT_EQ(arr.size(), 4u);
  EXPECT_EQ(arr.index_of(plane({1, -1, 0})), 3u);
}

TEST(SignVectors, EvaluationAndRealizability) {
  const Arrangement arr = diagonal_arrangement();
  EXPECT_EQ(sign_vector(arr, std::vector<std::int64_t>{2, 1}).signs, "+++");
  EXPECT_EQ(sign_vector(arr, std::vector<std::int64_t>{0, 1}).signs, "0+-");
  EXPECT_EQ(sign_vector(arr, std::vector<std::int64_t>{0, 0}).signs, "000");
  EXPECT_TRUE(is_realizable(arr, {"++0"}));
  EXPECT_TRUE(is_realizable(arr, {"0+-"}));
  EXPECT_FALSE(is_realizable(arr, {"0++"}));
  EXPECT_FALSE(is_realizable(arr, {"-++"}));
  EXPECT_FALSE(is_realizable(arr, {"00+"}));
  EXPECT_EQ(SignVector{"+0-"}.restrict_to(std::vector<std::size_t>{2, 0}).signs, "-+");
}

TEST(BoxSpline, TableLookupAndOverrides) {
  const Arrangement arr = diagonal_arrangement();
  std::map<SignVector, QuasiPolynomial> table{{{"+++"}, constant(2, 1)}, {{"++-"}, constant(2, 2)}};
  const BoxSpline b = BoxSpline::from_table(arr, table, {{{3, 3}, Integer(7)}});
  EXPECT_EQ(bs_eval(b, std::vector<std::int64_t>{4, 1}), 1);
  EXPECT_EQ(bs_eval(b, std::vector<std::int64_t>{1, 4}), 2);
  EXPECT_EQ(bs_eval(b, std::vector<std::int64_t>{2, 2}), 0);
  EXPECT_EQ(bs_eval(b, std::vector<std::int64_t>{3, 3}), 7);
  EXPECT_EQ(bs_eval(b.with_overrides({}), std::vector<std::int64_t>{3, 3}), 0);
  EXPECT_THROW(BoxSpline::from_table(arr, {{{"0++"}, constant(2, 1)}}), InvariantError);
}

TEST(BoxSpline, FractionalValueIsAConsistencyError) {
  Arrangement arr(1);
  QuasiPolynomial half = QuasiPolynomial::from_polynomial(MultiPoly::variable(1, 0) * Rational(1, 2));
  const BoxSpline b = BoxSpline::from_table(arr, {{{"+"}, half}});
  EXPECT_EQ(bs_eval(b, std::vector<std::int64_t>{4}), 2);
  EXPECT_THROW(bs_eval(b, std::vector<std::int64_t>{3}), ConsistencyError);
  EXPECT_THROW(bs_eval(b, std::vector<std::int64_t>{-1}), ArgumentError);
}

TEST(BoxSpline, AddMergesArrangements) {
  Arrangement a1(2);
  a1.add(plane({1, -1}));
  Arrangement a2(2);
  a2.add(plane({1, -2}));
  const BoxSpline f = BoxSpline::from_table(a1, {{{"+++"}, constant(2, 1)}});
  const BoxSpline g = BoxSpline::from_table(a2, {{{"+++"}, constant(2, 10)}}, {{{0, 0}, Integer(5)}});
  const BoxSpline s = bs_add(f, g);
  EXPECT_EQ(s.arrangement().size(), 4u);
  for (std::int64_t x = 0; x <= 8; ++x) {
    for (std::int64_t y = 0; y <= 8; ++y) {
      const std::vector<std::int64_t> p{x, y};
      EXPECT_EQ(bs_eval(s, p), bs_eval(f, p) + bs_eval(g, p)) << x << "," << y;
    }
  }
}

TEST(BoxSpline, EnumerateRegionsSortedWithFirstWitness) {
  const BoxSpline b = BoxSpline::from_table(diagonal_arrangement(), {});
  const auto regions = enumerate_regions(b, 3);
  ASSERT_EQ(regions.size(), 6u);
  for (std::size_t i = 1; i < regions.size(); ++i) EXPECT_LT(regions[i - 1].signs, regions[i].signs);
  for (const auto& r : regions) {
    EXPECT_EQ(sign_vector(b.arrangement(), r.witness), r.signs);
    EXPECT_TRUE(is_realizable(b.arrangement(), r.signs));
  }
  EXPECT_EQ(regions.front().signs.signs, "+++");
  EXPECT_EQ(regions.front().witness, (Point{2, 1}));
}

TEST(BoxSpline, ForEachBoxPointIsLexicographic) {
  std::vector<Point> seen;
  for_each_box_point(2, 1, [&](const Point& p) { seen.push_back(p); });
  EXPECT_EQ(seen, (std::vector<Point>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
}
