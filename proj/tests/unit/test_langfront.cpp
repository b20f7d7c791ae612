#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <set>

#include "generators.hpp"
#include "parikh/errors.hpp"
#include "parikh/langfront.hpp"
#include "parikh/oracle.hpp"

using namespace parikh;

namespace {

BoundedLanguage lang(const std::string& text) {
  GrammarFile f = parse_grammar(text);
  return BoundedLanguage{std::move(f.grammar), std::move(f.bounds)};
}

const char* const kFourLetter =
    "S -> X | Y\nX -> a X d | M\nM -> b M c | eps\nY -> P Q\nP -> a P b | eps\nQ -> c Q d | eps\nbounds: a, b, c, d\n";
const char* const kAnBn = "S -> a S b | eps\nbounds: a, b\n";
const char* const kAStarBStar = "S -> A B\nA -> a A | eps\nB -> b B | eps\nbounds: a, b\n";
const char* const kABA = "S -> A b A | A\nA -> a A | eps\nbounds: a, b, a\n";
const char* const kAB = "S -> a b\nbounds: a, b\n";
const char* const kABStar = "S -> a b S | eps\nbounds: ab\n";

Word blocks_of(std::span<const std::int64_t> x) {
  Word w;
  for (std::size_t i = 0; i < x.size(); ++i) w.insert(w.end(), static_cast<std::size_t>(x[i]), static_cast<int>(i));
  return w;
}

// Exponent tuples l with sum l_i |u_i| <= maxlen.
void for_each_exponent(const Morphism& m, std::int64_t maxlen, const std::function<void(const NVec&)>& f) {
  NVec l(m.size(), 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
    if (i == l.size()) {
      f(l);
      return;
    }
    const auto len = static_cast<std::int64_t>(m.images[i].size());
    for (std::int64_t c = 0; c * len <= left; ++c) {
      l[i] = c;
      rec(i + 1, left - c * len);
    }
    l[i] = 0;
  };
  rec(0, maxlen);
}

void expect_matches_census(const BoundedLanguage& bl, const CountingFunction& f, std::int64_t box) {
  const auto census = oracle::census_parikh(bl, std::vector<std::int64_t>(bl.letters(), box));
  for (const auto& [v, count] : census) ASSERT_EQ(f.eval(v), count) << bl.grammar.to_string();
}

}  // namespace

TEST(ParikhVector, CountsLetters) {
  EXPECT_EQ(parikh_vector({0, 1, 1, 0}, 2), (NVec{2, 2}));
  EXPECT_EQ(parikh_vector({}, 3), (NVec{0, 0, 0}));
  EXPECT_THROW(parikh_vector({2}, 2), DimensionError);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Word u, v;
    for (auto n = parikh::testing::uniform(rng, 0, 6); n > 0; --n) u.push_back(static_cast<int>(parikh::testing::uniform(rng, 0, 2)));
    for (auto n = parikh::testing::uniform(rng, 0, 6); n > 0; --n) v.push_back(static_cast<int>(parikh::testing::uniform(rng, 0, 2)));
    Word uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    NVec sum = parikh_vector(u, 3);
    const NVec pv = parikh_vector(v, 3);
    for (std::size_t i = 0; i < 3; ++i) sum[i] += pv[i];
    EXPECT_EQ(parikh_vector(uv, 3), sum);
  }
}

TEST(ParikhImage, Examples) {
  const SemilinearSet anbn = parikh_image(parse_grammar("S -> a S b | eps\n").grammar);
  for (std::int64_t i = 0; i <= 12; ++i) {
    for (std::int64_t j = 0; j <= 12; ++j) EXPECT_EQ(sl_member(anbn, NVec{i, j}), i == j);
  }
  const SemilinearSet single = parikh_image(parse_grammar("S -> a\n").grammar);
  for (std::int64_t i = 0; i <= 5; ++i) EXPECT_EQ(sl_member(single, NVec{i}), i == 1);
  const SemilinearSet plus = parikh_image(parse_grammar("S -> S S | a\n").grammar);
  for (std::int64_t i = 0; i <= 12; ++i) EXPECT_EQ(sl_member(plus, NVec{i}), i >= 1);
  EXPECT_TRUE(parikh_image(parse_grammar("S -> a S\n").grammar).components.empty());
}

TEST(ParikhImageProperty, MatchesWordsOfRandomGrammars) {
  std::mt19937_64 rng(2024);
  const auto words = parikh::testing::all_words(2, 7);
  for (int trial = 0; trial < 60; ++trial) {
    const Grammar g = parikh::testing::random_grammar(rng, 2, 3, 6, 3);
    std::set<NVec> expected;
    for (const auto& w : words) {
      if (oracle::derives(g, w)) expected.insert(parikh_vector(w, 2));
    }
    const SemilinearSet image = parikh_image(g);
    for (std::int64_t i = 0; i <= 7; ++i) {
      for (std::int64_t j = 0; i + j <= 7; ++j) {
        const NVec v{i, j};
        ASSERT_EQ(sl_member(image, v), expected.count(v) == 1) << g.to_string() << i << "," << j;
      }
    }
  }
}

TEST(InverseMorphism, Examples) {
  const Grammar abstar = parse_grammar("S -> a b S | eps\n").grammar;
  const Grammar pre = inverse_morphism_intersect(abstar, Morphism{2, {{0, 1}}});
  for (std::size_t n = 0; n <= 10; ++n) EXPECT_TRUE(oracle::derives(pre, Word(n, 0)));

  const Grammar all = parse_grammar("S -> a S | b S | eps\n").grammar;
  const Grammar both = inverse_morphism_intersect(all, Morphism{2, {{0}, {1}}});
  for (const auto& w : parikh::testing::all_words(2, 6)) {
    EXPECT_EQ(oracle::derives(both, w), std::is_sorted(w.begin(), w.end()));
  }

  const Grammar abab = parse_grammar("S -> a b a b\n").grammar;
  const Grammar twice = inverse_morphism_intersect(abab, Morphism{2, {{0, 1}, {0, 1}}});
  std::set<Word> got;
  for (const auto& w : parikh::testing::all_words(2, 4)) {
    if (oracle::derives(twice, w)) got.insert(w);
  }
  EXPECT_EQ(got, (std::set<Word>{{0, 0}, {0, 1}, {1, 1}}));
}

TEST(CrossSection, SkeletonAcceptsBlockWords) {
  const Dfa d = block_skeleton(3);
  for (const auto& w : parikh::testing::all_words(3, 5)) EXPECT_EQ(d.accepts(w), std::is_sorted(w.begin(), w.end()));
}

TEST(CrossSection, BijectiveOntoBlockLanguage) {
  const std::vector<Morphism> morphisms{
      {1, {{0}, {0}}}, {2, {{0}, {1}}}, {2, {{0}, {1}, {0}}}, {2, {{0, 1}, {1}}}, {2, {{0, 1}, {0, 1}}}};
  for (const auto& m : morphisms) {
    const Dfa r = cross_section(m);
    std::map<Word, int> preimages;
    for_each_exponent(m, 12, [&](const NVec& l) {
      const Word x = blocks_of(l);
      const Word image = m.apply(x);
      auto& n = preimages[image];
      if (r.accepts(x)) ++n;
    });
    for (const auto& [image, n] : preimages) ASSERT_EQ(n, 1) << "image length " << image.size();
    for (const auto& w : parikh::testing::all_words(m.size(), 5)) {
      if (!std::is_sorted(w.begin(), w.end())) EXPECT_FALSE(r.accepts(w));
    }
  }
}

TEST(CrossSection, InjectiveMorphismKeepsEverything) {
  const Dfa r = cross_section(Morphism{2, {{0}, {1}}});
  for (const auto& w : parikh::testing::all_words(2, 6)) EXPECT_EQ(r.accepts(w), std::is_sorted(w.begin(), w.end()));
}

TEST(Containment, WitnessIsShortestOutsideWord) {
  const BoundedLanguage bl = lang("S -> a S | b\nbounds: b, a\n");
  const auto w = containment_witness(bl.grammar, block_morphism(bl));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(bl.grammar.spell(*w), "ab");
  for (const char* text : {kFourLetter, kAnBn, kAStarBStar, kABA, kAB, kABStar}) {
    const BoundedLanguage b = lang(text);
    EXPECT_FALSE(containment_witness(b.grammar, block_morphism(b)).has_value()) << text;
  }
  try {
    parikh_counting_function(bl);
    FAIL() << "expected InvariantError";
  } catch (const InvariantError& e) {
    EXPECT_NE(std::string(e.what()).find("ab"), std::string::npos);
  }
}

TEST(ContainmentProperty, WitnessesAgreeWithEnumeration) {
  std::mt19937_64 rng(99);
  const std::vector<std::vector<Word>> bounds{{{0}, {1}}, {{1}, {0}}, {{0}, {1}, {0}}, {{0, 1}, {1}}};
  const auto words = parikh::testing::all_words(2, 7);
  for (int trial = 0; trial < 40; ++trial) {
    const Grammar g = parikh::testing::random_grammar(rng, 2, 3, 6, 3);
    const Morphism m{2, bounds[static_cast<std::size_t>(parikh::testing::uniform(rng, 0, 3))]};
    std::set<Word> block;
    for_each_exponent(m, 7, [&](const NVec& l) { block.insert(m.apply(blocks_of(l))); });
    std::optional<Word> first;
    for (const auto& w : words) {
      if (!block.count(w) && oracle::derives(g, w)) {
        first = w;
        break;
      }
    }
    const auto witness = containment_witness(g, m);
    if (first) {
      ASSERT_TRUE(witness.has_value()) << g.to_string();
      EXPECT_EQ(witness->size(), first->size()) << g.to_string();
      EXPECT_TRUE(oracle::derives(g, *witness));
    } else if (witness) {
      EXPECT_GT(witness->size(), 7u);
    }
  }
}

TEST(IndexSet, AnBnIsOneSimpleSet) {
  const SemiSimpleSet b = index_set(lang(kAnBn));
  ASSERT_EQ(b.components.size(), 1u);
  EXPECT_EQ(b.components[0].base, (NVec{0, 0}));
  EXPECT_EQ(b.components[0].periods, (std::vector<NVec>{{1, 1}}));
  EXPECT_TRUE(index_set(lang("S -> a S\nbounds: a\n")).components.empty());
}

TEST(IndexSet, InjectiveDisjointAndComplete) {
  for (const char* text : {kAnBn, kAStarBStar, kABA, kAB, kABStar, "S -> a S | eps\nbounds: a, a\n"}) {
    const BoundedLanguage bl = lang(text);
    const Morphism m = block_morphism(bl);
    const SemiSimpleSet b = index_set(bl);
    for (const auto& c : b.components) EXPECT_TRUE(is_simple(c));
    const std::int64_t maxlen = 8;
    std::set<Word> hit;
    for_each_box_point(m.size(), maxlen, [&](const Point& x) {
      Integer reps = 0;
      for (const auto& c : b.components) reps += oracle::count_representations_brute(c, x);
      ASSERT_LE(reps, 1) << text;
      if (reps == 0) return;
      const Word w = m.apply(blocks_of(x));
      EXPECT_TRUE(oracle::derives(bl.grammar, w)) << text;
      EXPECT_TRUE(hit.insert(w).second) << text << " repeats " << bl.grammar.spell(w);
    });
    for (const auto& w : oracle::enumerate_language(bl, maxlen)) EXPECT_TRUE(hit.count(w)) << text << bl.grammar.spell(w);
  }
}

TEST(DiophantineSystems, ReadOffImages) {
  const SemiSimpleSet free2{2, {LinearSet{{0, 0}, {{0, 1}, {1, 0}}}}};
  auto s = diophantine_systems(free2, Morphism{2, {{0}, {1}}});
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].offset, (std::vector<std::int64_t>{0, 0}));
  EXPECT_EQ(s[0].rows, 2u);
  EXPECT_EQ(s[0].cols, 2u);

  const SemiSimpleSet shifted{2, {LinearSet{{1, 0}, {{0, 1}}}}};
  s = diophantine_systems(shifted, Morphism{2, {{0, 1}, {1}}});
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].offset, (std::vector<std::int64_t>{1, 1}));
  EXPECT_EQ(s[0].column(0), (std::vector<std::int64_t>{0, 1}));

  const SemiSimpleSet zero{2, {LinearSet{{0, 0}, {{0, 0}}}}};
  EXPECT_THROW(diophantine_systems(zero, Morphism{2, {{0}, {1}}}), InvariantError);
  EXPECT_THROW(diophantine_systems(free2, Morphism{2, {{0}}}), DimensionError);
}

TEST(DiophantineSystems, FourLetterLanguageColumns) {
  const BoundedLanguage bl = lang(kFourLetter);
  const auto systems = diophantine_systems(index_set(bl), block_morphism(bl));
  std::set<std::vector<std::int64_t>> columns;
  for (const auto& s : systems) {
    for (std::size_t j = 0; j < s.cols; ++j) columns.insert(s.column(j));
  }
  EXPECT_TRUE(columns.count({1, 0, 0, 1}));
  EXPECT_TRUE(columns.count({0, 1, 1, 0}));
  EXPECT_TRUE(columns.count({1, 1, 0, 0}));
  EXPECT_TRUE(columns.count({0, 0, 1, 1}));
}

TEST(CountingFunction, KnownValues) {
  const CountingFunction four = parikh_counting_function(lang(kFourLetter));
  EXPECT_EQ(four.eval(NVec{2, 2, 2, 2}), 1);
  EXPECT_EQ(four.eval(NVec{1, 2, 2, 1}), 1);
  EXPECT_EQ(four.eval(NVec{1, 0, 1, 0}), 0);
  EXPECT_EQ(four.eval(NVec{1, 1, 1, 1}), 1);

  const CountingFunction aba = parikh_counting_function(lang(kABA));
  for (std::int64_t n = 0; n <= 8; ++n) {
    EXPECT_EQ(aba.eval(NVec{n, 0}), 1);
    for (std::int64_t m = 1; m <= 3; ++m) EXPECT_EQ(aba.eval(NVec{n, m}), m == 1 ? n + 1 : 0);
  }

  const CountingFunction ab = parikh_counting_function(lang(kAB));
  for_each_box_point(2, 5, [&](const Point& v) { EXPECT_EQ(ab.eval(v), (v == Point{1, 1} ? 1 : 0)); });
  EXPECT_THROW(ab.eval(NVec{1}), DimensionError);
}

TEST(CountingFunction, MatchesCensus) {
  for (const char* text : {kAnBn, kAStarBStar, kABA, kAB, kABStar, "S -> a S | eps\nbounds: a, a\n"}) {
    const BoundedLanguage bl = lang(text);
    expect_matches_census(bl, parikh_counting_function(bl), 10);
  }
  const BoundedLanguage four = lang(kFourLetter);
  expect_matches_census(four, parikh_counting_function(four), 5);
}

TEST(CountingFunctionProperty, RandomBoundedGrammars) {
  std::mt19937_64 rng(31337);
  const std::vector<std::vector<Word>> bounds{{{0}, {1}}, {{0}, {1}, {0}}, {{0, 1}, {1}}, {{1}, {0}, {1}}};
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 25; ++trial) {
    const Grammar g = parikh::testing::random_grammar(rng, 2, 3, 6, 3);
    const BoundedLanguage bl{g, bounds[static_cast<std::size_t>(parikh::testing::uniform(rng, 0, 3))]};
    if (containment_witness(bl.grammar, block_morphism(bl))) continue;
    ++checked;
    expect_matches_census(bl, parikh_counting_function(bl, 16), 6);
  }
  EXPECT_GE(checked, 10);
}

TEST(CountingFunctionProperty, RandomABAGrammars) {
  std::mt19937_64 rng(4711);
  int ambiguous = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const BoundedLanguage bl{parikh::testing::random_aba_grammar(rng, 4, 7), {{0}, {1}, {0}}};
    ASSERT_FALSE(containment_witness(bl.grammar, block_morphism(bl)).has_value()) << bl.grammar.to_string();
    const CountingFunction f = parikh_counting_function(bl, 16);
    const auto census = oracle::census_parikh(bl, {8, 8});
    for (const auto& [v, count] : census) {
      ASSERT_EQ(f.eval(v), count) << bl.grammar.to_string();
      if (count > 1) ++ambiguous;
    }
  }
  EXPECT_GT(ambiguous, 0);
}

TEST(CountingFunctionProperty, RandomLinearGrammars) {
  std::mt19937_64 rng(8128);
  for (int trial = 0; trial < 40; ++trial) {
    const BoundedLanguage bl{parikh::testing::random_linear_grammar(rng, 3, 6), {{0}, {1}}};
    ASSERT_FALSE(containment_witness(bl.grammar, block_morphism(bl)).has_value());
    const CountingFunction f = parikh_counting_function(bl, 16);
    expect_matches_census(bl, f, 10);
    const auto verdict = decide_parikh_slender(f, 10);
    Integer best = 0;
    for (const auto& [p, c] : oracle::census_parikh(bl, {10, 10})) best = std::max(best, c);
    if (verdict.slender) EXPECT_EQ(*verdict.bound, best) << bl.grammar.to_string();
  }
}

TEST(Slender, Verdicts) {
  const auto verdict = [](const char* text) { return decide_parikh_slender(parikh_counting_function(lang(text)), 8); };
  auto v = verdict(kAnBn);
  EXPECT_TRUE(v.slender);
  EXPECT_EQ(v.bound, Integer(1));
  v = verdict(kAStarBStar);
  EXPECT_TRUE(v.slender);
  EXPECT_EQ(v.bound, Integer(1));
  v = verdict(kABA);
  EXPECT_FALSE(v.slender);
  EXPECT_FALSE(v.bound.has_value());
  v = verdict(kAB);
  EXPECT_TRUE(v.slender);
  EXPECT_EQ(v.bound, Integer(1));
  v = verdict("S -> a S\nbounds: a\n");
  EXPECT_TRUE(v.slender);
  EXPECT_EQ(v.bound, Integer(0));
  v = verdict(kFourLetter);
  EXPECT_TRUE(v.slender);
  EXPECT_EQ(v.bound, Integer(1));
  EXPECT_THROW(decide_parikh_slender(CountingFunction(2), -1), ArgumentError);
}

TEST(Slender, BoundIsCensusMaximum) {
  for (const char* text : {kAnBn, kAStarBStar, kAB, kABStar}) {
    const BoundedLanguage bl = lang(text);
    const auto v = decide_parikh_slender(parikh_counting_function(bl), 8);
    ASSERT_TRUE(v.slender);
    Integer best = 0;
    for (const auto& [p, c] : oracle::census_parikh(bl, std::vector<std::int64_t>(bl.letters(), 8))) best = std::max(best, c);
    EXPECT_EQ(*v.bound, best) << text;
  }
}

TEST(Normalize, AgreesWithShiftedEvaluation) {
  for (const char* text : {kAnBn, kAStarBStar, kABA, kAB, kABStar}) {
    const CountingFunction f = parikh_counting_function(lang(text));
    const NormalizedCounting n = normalize_counting_function(f, 6);
    for_each_box_point(f.dim(), 6, [&](const Point& v) { ASSERT_EQ(bs_eval(n.spline, v), f.eval(v)) << text; });
    for (const auto& h : n.spline.arrangement().planes()) {
      EXPECT_EQ(h.sign_at(std::vector<std::int64_t>(f.dim(), 0)), 0);
    }
  }
  const NormalizedCounting ab = normalize_counting_function(parikh_counting_function(lang(kAB)), 6);
  EXPECT_FALSE(ab.boundary_hit);
  EXPECT_THROW(normalize_counting_function(CountingFunction(1), -1), ArgumentError);
}
