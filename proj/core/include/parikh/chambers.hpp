#pragma once

// Central hyperplane arrangements in R^t, the sign-vector regions they cut
// out of N^t, and box splines: functions that are a quasi-polynomial on every
// region, optionally corrected on a finite set of override points.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "parikh/quasipoly.hpp"

namespace parikh {

/// Homogeneous hyperplane <normal, x> = 0. The normal is primitive with its
/// first nonzero entry positive, so equal planes have equal normals.
class Hyperplane {
 public:
  /// Normalizes `coefficients`; nullopt for the zero vector.
  static std::optional<Hyperplane> from_coefficients(std::span<const Rational> coefficients);
  static std::optional<Hyperplane> from_coefficients(std::span<const std::int64_t> coefficients);
  static Hyperplane coordinate(std::size_t dim, std::size_t index);

  std::size_t dim() const { return normal_.size(); }
  const std::vector<std::int64_t>& normal() const { return normal_; }
  /// True when every entry has the same sign (ignoring zeros). On the closed
  /// orthant such a plane only separates what the coordinate planes already do.
  bool sign_definite() const;

  int sign_at(std::span<const std::int64_t> x) const;
  int sign_at(std::span<const Rational> x) const;

  /// "3*x1 - 2*x2" style rendering of the normal form.
  std::string to_string() const;

  friend auto operator<=>(const Hyperplane&, const Hyperplane&) = default;

 private:
  std::vector<std::int64_t> normal_;
};

/// Ordered, duplicate-free family of hyperplanes through the origin that
/// always contains the t coordinate planes (first, in index order).
class Arrangement {
 public:
  explicit Arrangement(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return planes_.size(); }
  const std::vector<Hyperplane>& planes() const { return planes_; }
  const Hyperplane& operator[](std::size_t i) const { return planes_[i]; }

  /// Appends h unless present. Returns true when added.
  bool add(const Hyperplane& h);
  std::optional<std::size_t> index_of(const Hyperplane& h) const;

 private:
  std::size_t dim_;
  std::vector<Hyperplane> planes_;
  std::map<Hyperplane, std::size_t> index_;
};

/// One entry per hyperplane, in arrangement order, each '+', '0' or '-'.
struct SignVector {
  std::string signs;

  std::size_t size() const { return signs.size(); }
  char operator[](std::size_t i) const { return signs[i]; }
  bool all_zero() const;
  /// Entries at the given hyperplane indices, in that order.
  SignVector restrict_to(std::span<const std::size_t> indices) const;

  friend auto operator<=>(const SignVector&, const SignVector&) = default;
};

SignVector sign_vector(const Arrangement& arr, std::span<const std::int64_t> x);
SignVector sign_vector(const Arrangement& arr, std::span<const Rational> x);

/// Exact emptiness test for the cone {x >= 0 : signs of arr at x equal s}
/// by Fourier-Motzkin elimination over the rationals.
bool is_realizable(const Arrangement& arr, const SignVector& s);

/// Strategy producing the quasi-polynomial of a region. `witness` is any
/// point (possibly rational) of the closed orthant lying in the region.
class PieceProvider {
 public:
  virtual ~PieceProvider() = default;
  virtual LazyQP derive(const SignVector& region, std::span<const Rational> witness) const = 0;
};

class BoxSpline {
 public:
  using Overrides = std::map<Point, Integer>;

  BoxSpline(Arrangement arr, std::shared_ptr<const PieceProvider> provider, Overrides overrides = {});

  /// Zero everywhere on the coordinate arrangement of N^t.
  static BoxSpline zero(std::size_t dim);
  /// Spline given by an explicit region table; unlisted regions carry zero.
  /// Every listed sign vector must be realizable (checked exactly).
  static BoxSpline from_table(Arrangement arr, const std::map<SignVector, QuasiPolynomial>& pieces,
                              Overrides overrides = {});

  std::size_t dim() const { return state_->arr.dim(); }
  const Arrangement& arrangement() const { return state_->arr; }
  const Overrides& overrides() const { return state_->overrides; }
  const PieceProvider& provider() const { return *state_->provider; }

  /// Memoized piece of the region containing `witness`.
  LazyQP piece(const SignVector& region, std::span<const Rational> witness) const;
  LazyQP piece_at(std::span<const std::int64_t> x) const;

  /// Number of regions materialized so far.
  std::size_t cached_regions() const;

  /// Same pieces with a different override table.
  BoxSpline with_overrides(Overrides overrides) const;

 private:
  struct State {
    State(Arrangement a, std::shared_ptr<const PieceProvider> p, Overrides o)
        : arr(std::move(a)), provider(std::move(p)), overrides(std::move(o)) {}
    Arrangement arr;
    std::shared_ptr<const PieceProvider> provider;
    Overrides overrides;
    mutable std::mutex mu;
    mutable std::unordered_map<std::string, LazyQP> cache;
  };
  std::shared_ptr<State> state_;
};

/// Override value if present, else the region piece at x. Throws
/// ConsistencyError when the piece value is negative or fractional.
Integer bs_eval(const BoxSpline& b, std::span<const std::int64_t> x);

/// Pointwise sum over the union arrangement.
BoxSpline bs_add(const BoxSpline& a, const BoxSpline& b);

struct RegionEntry {
  SignVector signs;
  Point witness;
  LazyQP piece;
};

/// Regions met by [0, bound]^t, sorted by sign string, with the
/// lexicographically first witness point of each.
std::vector<RegionEntry> enumerate_regions(const BoxSpline& b, std::int64_t bound);

/// Calls f on each point of [0, bound]^dim in lexicographic order.
template <typename F>
void for_each_box_point(std::size_t dim, std::int64_t bound, F&& f) {
  Point x(dim, 0);
  if (bound < 0) return;
  while (true) {
    f(static_cast<const Point&>(x));
    std::size_t i = dim;
    while (true) {
      if (i == 0) return;
      --i;
      if (++x[i] <= bound) break;
      x[i] = 0;
    }
  }
}

}  // namespace parikh
