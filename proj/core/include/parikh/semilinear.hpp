#pragma once

// Linear, simple, semi-linear and semi-simple subsets of N^k.

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <vector>

namespace parikh {

using NVec = std::vector<std::int64_t>;

/// base + N*periods[0] + ... + N*periods[n-1].
struct LinearSet {
  NVec base;
  std::vector<NVec> periods;

  std::size_t dim() const { return base.size(); }
  /// Checks non-negativity, dimensions, nonzero and distinct periods.
  void validate() const;
  /// Removes duplicate and zero periods and sorts the rest.
  LinearSet normalized() const;
  /// "base: b1 ... bk ; periods: p11 ... p1k | p21 ... "
  std::string to_string() const;

  friend auto operator<=>(const LinearSet&, const LinearSet&) = default;
};

struct SemilinearSet {
  std::size_t dim = 0;
  std::vector<LinearSet> components;

  void validate() const;
  std::string to_string() const;
};

/// Components are simple and pairwise disjoint.
struct SemiSimpleSet {
  std::size_t dim = 0;
  std::vector<LinearSet> components;

  SemilinearSet as_semilinear() const { return {dim, components}; }
  std::string to_string() const;
};

bool ls_member(const LinearSet& l, std::span<const std::int64_t> v);
bool sl_member(const SemilinearSet& s, std::span<const std::int64_t> v);

/// Periods linearly independent over Q.
bool is_simple(const LinearSet& l);

/// Writes s as a finite disjoint union of simple sets. Components of the
/// result are sorted; a single simple component is returned as given. Throws DepthExceeded when a case split nests deeper
/// than depth_cap.
SemiSimpleSet decompose_semisimple(const SemilinearSet& s, int depth_cap = 12);

// Semiring operations used by Parikh image computations. Results are
// lightly simplified: duplicates and subsumed components are removed.
SemilinearSet sl_empty(std::size_t dim);
SemilinearSet sl_unit(std::size_t dim);
SemilinearSet sl_union(const SemilinearSet& a, const SemilinearSet& b);
SemilinearSet sl_sum(const SemilinearSet& a, const SemilinearSet& b);
SemilinearSet sl_star(const SemilinearSet& a);
SemilinearSet sl_simplify(const SemilinearSet& a);

/// "dim k" then one component per line in LinearSet::to_string form.
/// Errors are ParseError with line numbers.
SemilinearSet parse_semilinear(std::istream& in);
SemilinearSet parse_semilinear(const std::string& text);

}  // namespace parikh
