#include <gtest/gtest.h>

#include "generators.hpp"
#include "parikh/errors.hpp"
#include "parikh/quasipoly.hpp"

using namespace parikh;
using parikh::testing::uniform;

namespace {

Integer direct_floor_affine(const std::vector<Rational>& b, const Integer& k, std::int64_t d, InnerRounding mode,
                            const std::vector<std::int64_t>& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < b.size(); ++i) s += b[i] * Rational(static_cast<long>(x[i]));
  const Integer rounded = mode == InnerRounding::Floor ? floor(s) : ceil(s);
  Integer num = rounded + k;
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), Integer(static_cast<long>(d)).get_mpz_t());
  return q;
}

}  // namespace

TEST(Residues, NegativeCoordinatesWrap) {
  const std::vector<std::int64_t> x{-1, 7, 0};
  EXPECT_EQ(residue_of(x, 3), (Residue{2, 1, 0}));
}

TEST(FloorAffine, PeriodIsDenominatorLcmTimesD) {
  const std::vector<Rational> b{Rational(1, 2), Rational(2, 3)};
  EXPECT_EQ(floor_affine_period(b, 5), 30);
}

TEST(FloorAffine, MatchesDirectArithmeticOnRandomInstances) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t t = static_cast<std::size_t>(uniform(rng, 1, 3));
    std::vector<Rational> b(t);
    for (auto& v : b) v = parikh::testing::random_rational(rng, 6, 4);
    const Integer k = uniform(rng, -6, 6);
    const std::int64_t d = uniform(rng, 1, 4);
    const InnerRounding mode = uniform(rng, 0, 1) ? InnerRounding::Floor : InnerRounding::Ceiling;
    const QuasiPolynomial q = floor_affine_qp(b, k, d, mode);
    for (int s = 0; s < 20; ++s) {
      std::vector<std::int64_t> x(t);
      for (auto& v : x) v = uniform(rng, -15, 15);
      const Integer want = direct_floor_affine(b, k, d, mode, x);
      ASSERT_EQ(floor_affine_value(b, k, d, mode, x), want);
      ASSERT_EQ(q.eval(x), Rational(want));
      ASSERT_EQ(floor_affine_piece(b, k, d, mode, residue_of(x, q.period())).eval(std::span<const std::int64_t>(x)),
                Rational(want));
    }
  }
}

TEST(QuasiPolynomial, CanonicalizeShrinksPeriod) {
  QuasiPolynomial q(1, 4);
  const MultiPoly one = MultiPoly::constant(1, 1);
  q.set_piece({0}, one);
  q.set_piece({2}, one);
  const QuasiPolynomial c = q.canonicalize();
  EXPECT_EQ(c.period(), 2);
  EXPECT_EQ(c, q);
  EXPECT_EQ(c.eval(std::vector<std::int64_t>{6}), 1);
  EXPECT_EQ(c.eval(std::vector<std::int64_t>{7}), 0);
}

TEST(QuasiPolynomial, AddUsesLcmPeriod) {
  QuasiPolynomial a(1, 2), b(1, 3);
  a.set_piece({0}, MultiPoly::constant(1, 1));
  b.set_piece({0}, MultiPoly::variable(1, 0));
  const QuasiPolynomial s = qp_add(a, b);
  EXPECT_EQ(s.period(), 6);
  for (std::int64_t n = 0; n < 12; ++n) {
    const std::vector<std::int64_t> x{n};
    EXPECT_EQ(s.eval(x), a.eval(x) + b.eval(x));
  }
  EXPECT_TRUE(qp_add(s, qp_negate(s)).canonicalize().pieces().empty());
  EXPECT_THROW(qp_refit(a, 3), ArgumentError);
}

TEST(LazyQuasiPolynomial, MemoizesAndSums) {
  int calls = 0;
  auto gen = [&calls](const Residue& r) {
    ++calls;
    return MultiPoly::constant(1, Rational(static_cast<long>(r[0])));
  };
  auto lazy = std::make_shared<LazyQuasiPolynomial>(1, 3, gen);
  EXPECT_EQ(lazy->eval(std::vector<std::int64_t>{5}), 2);
  EXPECT_EQ(lazy->eval(std::vector<std::int64_t>{8}), 2);
  EXPECT_EQ(calls, 1);
  const LazyQP twice = lazy_sum(1, {{1, lazy}, {1, lazy}, {-1, LazyQuasiPolynomial::constant(1, 1)}});
  EXPECT_EQ(twice->period(), 3);
  EXPECT_EQ(twice->eval(std::vector<std::int64_t>{4}), 1);
  EXPECT_EQ(twice->materialize().eval(std::vector<std::int64_t>{4}), 1);
  EXPECT_TRUE(LazyQuasiPolynomial::zero(2)->known_zero());
}

TEST(LazyQuasiPolynomialProperty, WrapAgreesWithTable) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const std::int64_t d = uniform(rng, 1, 4);
    QuasiPolynomial q(2, d);
    for (std::int64_t r0 = 0; r0 < d; ++r0) {
      for (std::int64_t r1 = 0; r1 < d; ++r1) q.set_piece({r0, r1}, parikh::testing::random_poly(rng, 2, 2, 3));
    }
    const LazyQP lazy = LazyQuasiPolynomial::wrap(q);
    for (int s = 0; s < 10; ++s) {
      const std::vector<std::int64_t> x{uniform(rng, -9, 9), uniform(rng, -9, 9)};
      EXPECT_EQ(lazy->eval(x), q.eval(x));
    }
    EXPECT_EQ(lazy->materialize(), q);
  }
}
