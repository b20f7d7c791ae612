#include <gtest/gtest.h>

#include "generators.hpp"
#include "parikh/langfront.hpp"
#include "parikh/oracle.hpp"

using namespace parikh;

namespace {

BoundedLanguage lang(const std::string& text) {
  GrammarFile f = parse_grammar(text);
  return BoundedLanguage{std::move(f.grammar), std::move(f.bounds)};
}

// Solution counts on [0, bound]^t by the unbounded knapsack recurrence over
// columns, as an independent check on the nested enumeration.
std::map<Point, Integer> count_by_columns(const DiophantineSystem& s, std::int64_t bound) {
  std::map<Point, Integer> ways;
  for_each_box_point(s.rows, bound, [&](const Point& v) { ways[v] = 0; });
  ways[Point(s.rows, 0)] = 1;
  for (std::size_t j = 0; j < s.cols; ++j) {
    const auto col = s.column(j);
    for (auto& [v, c] : ways) {
      Point u = v;
      bool fits = true;
      for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] -= col[i];
        fits = fits && u[i] >= 0;
      }
      if (fits) c += ways.at(u);
    }
  }
  return ways;
}

}  // namespace

TEST(CountSystemBrute, KnownValues) {
  EXPECT_EQ(oracle::count_system_brute(DiophantineSystem::from_rows({{1, 1}}), {4}), 5);
  EXPECT_EQ(oracle::count_system_brute(DiophantineSystem::from_rows({{2, 3}}), {6}), 2);
  EXPECT_EQ(oracle::count_system_brute(DiophantineSystem::from_rows({{2}, {3}}), {4, 6}), 1);
  EXPECT_EQ(oracle::count_system_brute(DiophantineSystem::from_rows({{2}, {3}}), {4, 5}), 0);
  EXPECT_EQ(oracle::count_system_brute(DiophantineSystem::from_rows({{1}}, {2}), {1}), 0);
  EXPECT_EQ(oracle::count_system_brute(DiophantineSystem::from_rows({{1}}, {2}), {5}), 1);
}

TEST(CountSystemBrute, AgreesWithColumnRecurrence) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const DiophantineSystem s = parikh::testing::random_system(rng, 2, 3, 3);
    for (const auto& [n, c] : count_by_columns(s, 8)) ASSERT_EQ(oracle::count_system_brute(s, n), c) << s.to_string();
  }
}

TEST(Derives, SmallGrammars) {
  const Grammar anbn = parse_grammar("S -> a S b | eps\n").grammar;
  EXPECT_TRUE(oracle::derives(anbn, {}));
  EXPECT_TRUE(oracle::derives(anbn, {0, 0, 1, 1}));
  EXPECT_FALSE(oracle::derives(anbn, {0, 1, 0, 1}));
  const Grammar nullable = parse_grammar("S -> A A b\nA -> eps | a\n").grammar;
  for (const auto& w : parikh::testing::all_words(2, 4)) {
    const bool want = w == Word{1} || w == Word{0, 1} || w == Word{0, 0, 1};
    EXPECT_EQ(oracle::derives(nullable, w), want);
  }
  const Grammar dyck = parse_grammar("S -> S S | a S b | eps\n").grammar;
  for (const auto& w : parikh::testing::all_words(2, 8)) {
    int depth = 0;
    bool ok = true;
    for (int c : w) {
      depth += c == 0 ? 1 : -1;
      ok = ok && depth >= 0;
    }
    EXPECT_EQ(oracle::derives(dyck, w), ok && depth == 0);
  }
}

TEST(EnumerateLanguage, Examples) {
  EXPECT_EQ(oracle::enumerate_language(lang("S -> a S b | eps\nbounds: a, b\n"), 4),
            (std::set<Word>{{}, {0, 1}, {0, 0, 1, 1}}));
  EXPECT_TRUE(oracle::enumerate_language(lang("S -> a S\nbounds: a\n"), 6).empty());
  const auto four = oracle::enumerate_language(
      lang("S -> X | Y\nX -> a X d | M\nM -> b M c | eps\nY -> P Q\nP -> a P b | eps\nQ -> c Q d | eps\n"
           "bounds: a, b, c, d\n"),
      4);
  EXPECT_EQ(four, (std::set<Word>{{}, {0, 3}, {1, 2}, {0, 1}, {2, 3}, {0, 0, 3, 3}, {0, 1, 2, 3}, {1, 1, 2, 2},
                                   {0, 0, 1, 1}, {2, 2, 3, 3}}));
}

TEST(Census, Examples) {
  const auto anbn = oracle::census_parikh(lang("S -> a S b | eps\nbounds: a, b\n"), {5, 5});
  EXPECT_EQ(anbn.size(), 36u);
  for (const auto& [v, c] : anbn) EXPECT_EQ(c, v[0] == v[1] ? 1 : 0);
  const auto aba = oracle::census_parikh(lang("S -> A b A | A\nA -> a A | eps\nbounds: a, b, a\n"), {4, 2});
  EXPECT_EQ(aba.at({3, 1}), 4);
  EXPECT_EQ(aba.at({3, 0}), 1);
  EXPECT_EQ(aba.at({3, 2}), 0);
  for (const auto& [v, c] : oracle::census_parikh(lang("S -> a S\nbounds: a\n"), {7})) EXPECT_EQ(c, 0);
}

TEST(Census, TotalsMatchEnumeratedWords) {
  for (const char* text : {"S -> a S b | eps\nbounds: a, b\n", "S -> A b A | A\nA -> a A | eps\nbounds: a, b, a\n",
                           "S -> a b S | b | eps\nbounds: ab, b\n", "S -> a S a | b\nbounds: a, b, a\n"}) {
    const BoundedLanguage bl = lang(text);
    const std::int64_t box = 5;
    Integer total = 0;
    for (const auto& [v, c] : oracle::census_parikh(bl, std::vector<std::int64_t>(bl.letters(), box))) total += c;
    std::size_t inside = 0;
    for (const auto& w : oracle::enumerate_language(bl, box * static_cast<std::int64_t>(bl.letters()))) {
      const NVec v = parikh_vector(w, bl.letters());
      if (std::all_of(v.begin(), v.end(), [&](std::int64_t x) { return x <= box; })) ++inside;
    }
    EXPECT_EQ(total, static_cast<long>(inside)) << text;
  }
}

TEST(CountRepresentations, Examples) {
  EXPECT_EQ(oracle::count_representations_brute(LinearSet{{0, 0}, {{1, 0}, {0, 1}}}, {2, 3}), 1);
  EXPECT_EQ(oracle::count_representations_brute(LinearSet{{0, 0}, {{1, 0}, {0, 1}, {1, 1}}}, {1, 1}), 2);
  EXPECT_EQ(oracle::count_representations_brute(LinearSet{{1, 0}, {{2, 0}}}, {4, 0}), 0);
  EXPECT_EQ(oracle::count_representations_brute(LinearSet{{1, 0}, {{2, 0}}}, {5, 0}), 1);
  EXPECT_EQ(oracle::count_representations_brute(LinearSet{{2}, {}}, {2}), 1);
  EXPECT_EQ(oracle::count_representations_brute(LinearSet{{2}, {}}, {1}), 0);
}
