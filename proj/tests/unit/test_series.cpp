#include <gtest/gtest.h>

#include "generators.hpp"
#include "parikh/errors.hpp"
#include "parikh/langfront.hpp"
#include "parikh/oracle.hpp"
#include "parikh/partition.hpp"
#include "parikh/series.hpp"

using namespace parikh;

namespace {

std::int64_t total(const Monomial& m) {
  std::int64_t s = 0;
  for (auto v : m) s += v;
  return s;
}

std::vector<DiophantineSystem> suite() {
  return {DiophantineSystem::from_rows({{1, 1}}),         DiophantineSystem::from_rows({{2, 3}}),
          DiophantineSystem::from_rows({{1, 0}, {0, 1}}), DiophantineSystem::from_rows({{1, 1, 1}, {0, 1, 2}}),
          DiophantineSystem::from_rows({{2}, {3}}),       DiophantineSystem::from_rows({{1, 2}, {2, 1}})};
}

}  // namespace

TEST(GeneratingFunction, KnownValues) {
  const auto unit = generating_function({DiophantineSystem::from_rows({{1, 0}, {0, 1}})});
  EXPECT_EQ(unit.to_string(), "1 / ((1 - x1)(1 - x2))");
  for (const auto& [m, c] : taylor_coefficients(unit, 6)) EXPECT_EQ(c, 1);

  const auto square = generating_function({DiophantineSystem::from_rows({{1, 1}})});
  EXPECT_EQ(square.to_string(), "1 / ((1 - x1)(1 - x1))");
  for (const auto& [m, c] : taylor_coefficients(square, 9)) EXPECT_EQ(c, m[0] + 1);

  const auto shifted = generating_function({DiophantineSystem::from_rows({{0}, {1}}, {1, 1})});
  EXPECT_EQ(shifted.to_string(), "x1 x2 / (1 - x2)");
}

TEST(GeneratingFunction, Rendering) {
  EXPECT_EQ(generating_function({}).to_string(), "0");
  RationalSeriesExpr e{2, {{{0, 0}, {}}, {{2, 1}, {{3, 0}, {1, 2}}}}};
  EXPECT_EQ(e.to_string(), "1 + x1^2 x2 / ((1 - x1^3)(1 - x1 x2^2))");
  EXPECT_THROW(generating_function({DiophantineSystem::from_rows({{1}}), DiophantineSystem::from_rows({{1}, {1}})}),
               DimensionError);
  EXPECT_THROW((RationalSeriesExpr{1, {{{0}, {{0}}}}}.validate()), InvariantError);
  EXPECT_THROW((RationalSeriesExpr{2, {{{0}, {}}}}.validate()), DimensionError);
}

TEST(Taylor, GeometricSeries) {
  const RationalSeriesExpr geo{1, {{{0}, {{1}}}}};
  const auto c = taylor_coefficients(geo, 5);
  ASSERT_EQ(c.size(), 6u);
  for (const auto& [m, v] : c) EXPECT_EQ(v, 1);
  const RationalSeriesExpr sq{1, {{{0}, {{1}, {1}}}}};
  std::int64_t n = 0;
  for (const auto& [m, v] : taylor_coefficients(sq, 4)) EXPECT_EQ(v, ++n);
  const auto two = taylor_coefficients(RationalSeriesExpr{2, {{{1, 0}, {{1, 1}}}}}, 4);
  EXPECT_EQ(two.size(), 15u);
  for (const auto& [m, v] : two) EXPECT_EQ(v, (m[0] == m[1] + 1 ? 1 : 0));
  EXPECT_THROW(taylor_coefficients(geo, -1), ArgumentError);
}

TEST(Taylor, CoinSystemMatchesProduct) {
  const std::vector<int> expected{1, 0, 1, 1, 1, 1, 2, 1, 2, 2, 2, 2};
  const auto c = taylor_coefficients(generating_function({DiophantineSystem::from_rows({{2, 3}})}), 11);
  for (std::int64_t n = 0; n <= 11; ++n) EXPECT_EQ(c.at({n}), expected[static_cast<std::size_t>(n)]);
}

TEST(TaylorProperty, SuiteMatchesBoxSpline) {
  for (const auto& sys : suite()) {
    const BoxSpline b = box_spline_of_system(sys);
    for (const auto& [m, c] : taylor_coefficients(generating_function({sys}), 12)) {
      ASSERT_EQ(bs_eval(b, m), c) << sys.to_string();
      ASSERT_GE(c, 0);
    }
  }
}

TEST(TaylorProperty, RandomShiftedSystemsMatchBruteForce) {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t t = static_cast<std::size_t>(parikh::testing::uniform(rng, 1, 2));
    std::vector<DiophantineSystem> systems;
    for (auto n = parikh::testing::uniform(rng, 1, 3); n > 0; --n) {
      DiophantineSystem s = parikh::testing::random_system(rng, t, 3, 3);
      while (s.rows != t) s = parikh::testing::random_system(rng, t, 3, 3);
      s.offset.assign(t, 0);
      for (auto& v : s.offset) v = parikh::testing::uniform(rng, 0, 2);
      systems.push_back(std::move(s));
    }
    for (const auto& [m, c] : taylor_coefficients(generating_function(systems), 9)) {
      Integer want = 0;
      for (const auto& s : systems) want += oracle::count_system_brute(s, m);
      ASSERT_EQ(c, want);
    }
  }
}

TEST(TaylorProperty, LanguageSeriesMatchCensus) {
  const std::vector<std::pair<const char*, std::int64_t>> languages{
      {"S -> a S b | eps\nbounds: a, b\n", 12},
      {"S -> A b A | A\nA -> a A | eps\nbounds: a, b, a\n", 12},
      {"S -> X | Y\nX -> a X d | M\nM -> b M c | eps\nY -> P Q\nP -> a P b | eps\nQ -> c Q d | eps\n"
       "bounds: a, b, c, d\n",
       8}};
  for (const auto& [text, degree] : languages) {
    GrammarFile f = parse_grammar(text);
    const BoundedLanguage bl{f.grammar, f.bounds};
    const auto series = generating_function(diophantine_systems(index_set(bl), block_morphism(bl)));
    const auto census = oracle::census_parikh(bl, std::vector<std::int64_t>(bl.letters(), degree));
    for (const auto& [m, c] : taylor_coefficients(series, degree)) {
      ASSERT_LE(total(m), degree);
      ASSERT_EQ(c, census.at(m)) << text;
    }
  }
}

TEST(GeneratingFunction, AnBnSeries) {
  GrammarFile f = parse_grammar("S -> a S b | eps\nbounds: a, b\n");
  const BoundedLanguage bl{f.grammar, f.bounds};
  EXPECT_EQ(generating_function(diophantine_systems(index_set(bl), block_morphism(bl))).to_string(), "1 / (1 - x1 x2)");
}
