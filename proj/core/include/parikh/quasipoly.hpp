#pragma once

// Quasi-polynomials: a period d and one polynomial per residue tuple
// (x_1 mod d, ..., x_t mod d).

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "parikh/exactmath.hpp"

namespace parikh {

using Residue = std::vector<std::int64_t>;
using Point = std::vector<std::int64_t>;

struct ResidueHash {
  std::size_t operator()(const Residue& r) const noexcept;
};

/// Residue tuple of x modulo `period`, entries in [0, period).
Residue residue_of(std::span<const std::int64_t> x, std::int64_t period);

class QuasiPolynomial {
 public:
  using PieceMap = std::map<Residue, MultiPoly>;

  explicit QuasiPolynomial(std::size_t arity = 0, std::int64_t period = 1);

  static QuasiPolynomial from_polynomial(const MultiPoly& p);

  std::size_t arity() const { return arity_; }
  std::int64_t period() const { return period_; }
  /// Stored (nonzero) pieces. Absent residues carry the zero polynomial.
  const PieceMap& pieces() const { return pieces_; }
  const MultiPoly& piece(const Residue& r) const;
  void set_piece(const Residue& r, MultiPoly p);

  Rational eval(std::span<const std::int64_t> x) const;

  /// Same function with the smallest period dividing the current one under
  /// which all pieces agree.
  QuasiPolynomial canonicalize() const;

  /// "period d" followed by one "(r1,...,rt) poly" line per stored residue.
  std::string to_string() const;

  /// Structural equality after refitting both sides to a common period.
  friend bool operator==(const QuasiPolynomial& a, const QuasiPolynomial& b);

 private:
  std::size_t arity_;
  std::int64_t period_;
  PieceMap pieces_;
  MultiPoly zero_;
};

/// Pointwise sum; the result period is lcm of the operand periods.
QuasiPolynomial qp_add(const QuasiPolynomial& a, const QuasiPolynomial& b);
QuasiPolynomial qp_negate(const QuasiPolynomial& a);
/// Same function written with period k. Throws ArgumentError unless period | k.
QuasiPolynomial qp_refit(const QuasiPolynomial& q, std::int64_t k);

enum class InnerRounding { Floor, Ceiling };

/// Period of floor_affine_qp(b, k, d, _): g*d with g the lcm of the
/// denominators of b.
std::int64_t floor_affine_period(std::span<const Rational> b, std::int64_t d);

/// The affine polynomial that floor((round(b.x) + k) / d) equals on the
/// residue class r modulo floor_affine_period(b, d).
MultiPoly floor_affine_piece(std::span<const Rational> b, const Integer& k, std::int64_t d,
                             InnerRounding mode, const Residue& r);

/// Direct value of floor((round(b.x) + k) / d) at an integer point.
Integer floor_affine_value(std::span<const Rational> b, const Integer& k, std::int64_t d,
                           InnerRounding mode, std::span<const std::int64_t> x);

/// The quasi-polynomial x -> floor((round(b.x) + k) / d), where round is
/// floor or ceiling. Coefficients of b may have any sign.
QuasiPolynomial floor_affine_qp(std::span<const Rational> b, const Integer& k, std::int64_t d,
                                InnerRounding mode);

/// A quasi-polynomial whose residue pieces are produced on demand and
/// memoized. Pieces computed concurrently for one residue are identical, so
/// the memo is a plain "first insert wins" table.
class LazyQuasiPolynomial {
 public:
  using Generator = std::function<MultiPoly(const Residue&)>;
  /// Optional shortcut computing the value at a point without building the
  /// residue polynomial. Must agree with at(residue_of(x)).eval(x).
  using Evaluator = std::function<Rational(std::span<const std::int64_t>)>;

  LazyQuasiPolynomial(std::size_t arity, std::int64_t period, Generator gen, Evaluator eval = {});

  static std::shared_ptr<const LazyQuasiPolynomial> zero(std::size_t arity);
  static std::shared_ptr<const LazyQuasiPolynomial> constant(std::size_t arity, const Rational& c);
  static std::shared_ptr<const LazyQuasiPolynomial> wrap(QuasiPolynomial q);

  std::size_t arity() const { return arity_; }
  std::int64_t period() const { return period_; }
  bool known_zero() const { return known_zero_; }

  /// Polynomial of residue class r (entries in [0, period)).
  const MultiPoly& at(const Residue& r) const;
  Rational eval(std::span<const std::int64_t> x) const;
  /// Builds the full table. Only sensible for small period^arity.
  QuasiPolynomial materialize() const;
  /// period^arity, saturating at INT64_MAX.
  std::int64_t residue_count() const;

 private:
  std::size_t arity_;
  std::int64_t period_;
  Generator gen_;
  Evaluator eval_;
  bool known_zero_ = false;
  mutable std::mutex mu_;
  mutable std::unordered_map<Residue, MultiPoly, ResidueHash> memo_;
};

using LazyQP = std::shared_ptr<const LazyQuasiPolynomial>;

/// Lazy signed sum  sum_i sign_i * terms_i.
LazyQP lazy_sum(std::size_t arity, std::vector<std::pair<int, LazyQP>> terms);

}  // namespace parikh
