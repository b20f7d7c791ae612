#pragma once

// Exact rational and multivariate polynomial arithmetic.
//
// Every coefficient is an arbitrary-precision rational in lowest terms.
// Polynomials are sparse maps from dense exponent vectors to nonzero
// coefficients; the map is ordered graded-lexicographically so printing and
// comparison are deterministic.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace parikh {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense exponent vector, one entry per variable.
using Exponent = std::vector<std::uint32_t>;

/// Graded lexicographic order: total degree first, then lexicographic.
struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Floor of a rational as an Integer.
Integer floor(const Rational& r);
/// Ceiling of a rational, computed as -floor(-r).
Integer ceil(const Rational& r);
bool is_integer(const Rational& r);
/// True when the rational satisfies the lowest-terms / positive-denominator contract.
bool is_canonical(const Rational& r);
Integer lcm(const Integer& a, const Integer& b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);
/// Floor-mod with a non-negative result for positive `m`.
std::int64_t mod_floor(std::int64_t a, std::int64_t m);
Integer mod_floor(const Integer& a, const Integer& m);

/// "p/q", with the denominator omitted when it is 1.
std::string to_string(const Rational& r);

class MultiPoly {
 public:
  using TermMap = std::map<Exponent, Rational, GrlexLess>;

  explicit MultiPoly(std::size_t arity = 0) : arity_(arity) {}

  static MultiPoly constant(std::size_t arity, const Rational& c);
  /// The polynomial x_{index+1} (0-based index).
  static MultiPoly variable(std::size_t arity, std::size_t index);
  /// Affine form c + sum_i coeffs[i] * x_i.
  static MultiPoly affine(std::span<const Rational> coeffs, const Rational& c);

  std::size_t arity() const { return arity_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the all-zero exponent.
  Rational constant_term() const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  int degree_in(std::size_t var) const;

  /// Adds c * x^e in place. Zero results are erased.
  void add_term(const Exponent& e, const Rational& c);

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly operator-() const;
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) = default;

  /// Exact value at x. Throws DimensionError when x.size() != arity.
  Rational eval(std::span<const Rational> x) const;
  Rational eval(std::span<const Integer> x) const;
  Rational eval(std::span<const std::int64_t> x) const;

  MultiPoly pow(unsigned e) const;

  /// Adds `extra` trailing variables (existing terms get zero exponents there).
  MultiPoly extend_arity(std::size_t extra) const;

  /// Expansion in the last variable: result[j] is the coefficient polynomial
  /// of x_last^j, with arity() - 1 variables.
  std::vector<MultiPoly> coefficients_in_last() const;

  /// Human readable text with variables x1..xt, highest grlex term first.
  std::string to_string() const;

 private:
  std::size_t arity_;
  TermMap terms_;
};

/// Evaluates p at (subs[0](x), ..., subs[n-1](x)) symbolically.
/// All substitutes must share one arity; the result has that arity.
MultiPoly poly_substitute(const MultiPoly& p, std::span<const MultiPoly> subs);

/// Univariate p with p(n) = sum_{l=0..n} l^m for n >= 0 and p(-1) = 0.
/// Built by writing k^m in the binomial basis C(k, i) and summing each
/// binomial with the hockey-stick identity.
MultiPoly power_sum_polynomial(unsigned m);

/// For q in t+1 variables, the polynomial p with
/// p(x_1..x_t, x) = sum_{l=0..x} q(x_1..x_t, l) for x >= 0 and p(.., -1) = 0.
MultiPoly prefix_sum_polynomial(const MultiPoly& q);

}  // namespace parikh
