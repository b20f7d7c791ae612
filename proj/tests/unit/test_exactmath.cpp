#include <gtest/gtest.h>

#include "generators.hpp"
#include "parikh/errors.hpp"
#include "parikh/exactmath.hpp"

using namespace parikh;
using parikh::testing::random_poly;

namespace {

MultiPoly x(std::size_t arity, std::size_t i) { return MultiPoly::variable(arity, i); }
MultiPoly c(std::size_t arity, long v) { return MultiPoly::constant(arity, Rational(v)); }
Rational q(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace

TEST(Rationals, FloorAndCeilOnNegatives) {
  EXPECT_EQ(floor(Rational(-7, 2)), -4);
  EXPECT_EQ(ceil(Rational(-7, 2)), -3);
  EXPECT_EQ(floor(Rational(7, 2)), 3);
  EXPECT_EQ(ceil(Rational(7, 2)), 4);
  EXPECT_EQ(floor(Rational(-4)), -4);
  EXPECT_TRUE(is_integer(q(6, 3)));
  EXPECT_FALSE(is_integer(Rational(1, 3)));
}

TEST(Rationals, ModFloorAndLcm) {
  EXPECT_EQ(mod_floor(-1, 6), 5);
  EXPECT_EQ(mod_floor(13, 6), 1);
  EXPECT_EQ(mod_floor(Integer(-13), Integer(6)), 5);
  EXPECT_EQ(lcm64(4, 6), 12);
  EXPECT_EQ(lcm(Integer(10), Integer(4)), 20);
  EXPECT_EQ(to_string(q(3, 6)), "1/2");
  EXPECT_EQ(to_string(q(-4, 2)), "-2");
}

TEST(MultiPoly, SquareOfBinomial) {
  const MultiPoly p = (x(2, 0) + c(2, 1)).pow(2);
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p.terms().size(), 3u);
  const std::vector<std::int64_t> at{3, 9};
  EXPECT_EQ(p.eval(std::span<const std::int64_t>(at)), 16);
  EXPECT_EQ(p.to_string(), "x1^2 + 2*x1 + 1");
}

TEST(MultiPoly, ZeroCoefficientsVanish) {
  MultiPoly p = x(1, 0) - x(1, 0);
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(p.degree(), -1);
  EXPECT_EQ(p.to_string(), "0");
}

TEST(MultiPoly, EvalChecksArity) {
  const std::vector<std::int64_t> pt{1, 2, 3};
  EXPECT_THROW(x(2, 0).eval(std::span<const std::int64_t>(pt)), DimensionError);
}

TEST(MultiPoly, SubstituteComposes) {
  // p(a, b) = a*b + a at a = x + 1, b = 2x.
  const MultiPoly p = x(2, 0) * x(2, 1) + x(2, 0);
  const std::vector<MultiPoly> subs{x(1, 0) + c(1, 1), x(1, 0) * Rational(2)};
  const MultiPoly q = poly_substitute(p, subs);
  for (std::int64_t v = -3; v <= 3; ++v) {
    const std::vector<std::int64_t> at{v};
    EXPECT_EQ(q.eval(std::span<const std::int64_t>(at)), Rational((v + 1) * 2 * v + v + 1));
  }
}

TEST(MultiPoly, CoefficientsInLast) {
  const MultiPoly p = x(2, 0) * x(2, 1).pow(2) + c(2, 3);
  const auto cs = p.coefficients_in_last();
  ASSERT_EQ(cs.size(), 3u);
  EXPECT_EQ(cs[0], c(1, 3));
  EXPECT_TRUE(cs[1].is_zero());
  EXPECT_EQ(cs[2], x(1, 0));
}

TEST(PowerSum, MatchesDirectSumsUpToDegreeEight) {
  for (unsigned m = 0; m <= 8; ++m) {
    const MultiPoly p = power_sum_polynomial(m);
    const std::vector<std::int64_t> minus_one{-1};
    EXPECT_EQ(p.eval(std::span<const std::int64_t>(minus_one)), 0) << "m=" << m;
    Integer sum = 0;
    for (std::int64_t n = 0; n <= 50; ++n) {
      Integer term;
      mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(n), m);
      if (m == 0) term = 1;
      sum += term;
      const std::vector<std::int64_t> at{n};
      ASSERT_EQ(p.eval(std::span<const std::int64_t>(at)), Rational(sum)) << "m=" << m << " n=" << n;
    }
  }
}

TEST(PrefixSum, RandomBivariatePolynomials) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const MultiPoly q = random_poly(rng, 2, 4, 4);
    const MultiPoly p = prefix_sum_polynomial(q);
    for (std::int64_t a = -2; a <= 3; ++a) {
      Rational acc = 0;
      const std::vector<std::int64_t> before{a, -1};
      EXPECT_EQ(p.eval(std::span<const std::int64_t>(before)), 0);
      for (std::int64_t n = 0; n <= 8; ++n) {
        const std::vector<std::int64_t> qa{a, n};
        acc += q.eval(std::span<const std::int64_t>(qa));
        ASSERT_EQ(p.eval(std::span<const std::int64_t>(qa)), acc);
      }
    }
  }
}

TEST(MultiPolyProperty, RingLawsAtRandomPoints) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const MultiPoly p = random_poly(rng, 3, 3, 4);
    const MultiPoly q = random_poly(rng, 3, 3, 4);
    const MultiPoly r = random_poly(rng, 3, 2, 3);
    EXPECT_EQ((p + q) * r, p * r + q * r);
    EXPECT_EQ(p * q, q * p);
    EXPECT_TRUE((p - p).is_zero());
    const std::vector<std::int64_t> at{parikh::testing::uniform(rng, -5, 5), parikh::testing::uniform(rng, -5, 5),
                                       parikh::testing::uniform(rng, -5, 5)};
    const std::span<const std::int64_t> s(at);
    EXPECT_EQ((p * q).eval(s), p.eval(s) * q.eval(s));
    EXPECT_EQ((p + q).eval(s), p.eval(s) + q.eval(s));
  }
}

TEST(MultiPolyProperty, CoefficientsStayCanonical) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const MultiPoly p = random_poly(rng, 2, 4, 5) * random_poly(rng, 2, 3, 3);
    for (const auto& [e, coef] : p.terms()) {
      EXPECT_TRUE(is_canonical(coef));
      EXPECT_NE(sgn(coef), 0);
    }
  }
}
