#pragma once

// Bounded context-free languages: Parikh images, the block morphism
// a_i -> u_i with a cross-section, index sets, and Parikh counting functions
// assembled from box splines.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parikh/chambers.hpp"
#include "parikh/grammar.hpp"
#include "parikh/semilinear.hpp"
#include "parikh/system.hpp"

namespace parikh {

/// L(grammar) together with words u_1..u_k such that L is a subset of u_1*...u_k*.
struct BoundedLanguage {
  Grammar grammar;
  std::vector<Word> words;

  std::size_t letters() const { return grammar.terminals.size(); }
};

/// a_i -> images[i], each image a nonempty word over `alphabet` letters.
struct Morphism {
  std::size_t alphabet = 0;
  std::vector<Word> images;

  std::size_t size() const { return images.size(); }
  Word apply(const Word& blocks) const;
};

/// Deterministic automaton; delta[q][a] is -1 where undefined.
struct Dfa {
  std::size_t letters = 0;
  int start = 0;
  std::vector<bool> accepting;
  std::vector<std::vector<int>> delta;

  std::size_t size() const { return delta.size(); }
  bool accepts(const Word& w) const;
};

NVec parikh_vector(const Word& w, std::size_t letters);

/// Semilinear set equal to the Parikh image of L(g), by Newton iteration
/// on the commutative fixpoint equations, one strongly connected group of
/// nonterminals at a time.
SemilinearSet parikh_image(const Grammar& g);

/// The automaton of a_1*...a_k*.
Dfa block_skeleton(std::size_t k);

/// R inside a_1*...a_k* on which the morphism is a bijection onto
/// u_1*...u_k*: each word keeps its lexicographically least factorization.
Dfa cross_section(const Morphism& m);

/// Grammar over a_1..a_k for {x in L(r) : m(x) in L(g)}.
Grammar inverse_morphism_intersect(const Grammar& g, const Morphism& m, const Dfa& r);
Grammar inverse_morphism_intersect(const Grammar& g, const Morphism& m);

/// Shortest word of L(g) outside u_1*...u_k*, if any.
std::optional<Word> containment_witness(const Grammar& g, const Morphism& m);

Morphism block_morphism(const BoundedLanguage& bl);

/// Semi-simple B in N^k with phi(B) = L, phi injective on B.
SemiSimpleSet index_set(const BoundedLanguage& bl, int depth_cap = 12);

/// One system per simple component: columns psi(phi(period)),
/// offset psi(phi(base)).
std::vector<DiophantineSystem> diophantine_systems(const SemiSimpleSet& b, const Morphism& m);

class CountingFunction {
 public:
  struct Summand {
    NVec offset;
    DiophantineSystem system;
    BoxSpline spline;
  };

  explicit CountingFunction(std::size_t dim) : dim_(dim) {}

  static CountingFunction from_systems(std::size_t dim, const std::vector<DiophantineSystem>& systems);

  std::size_t dim() const { return dim_; }
  const std::vector<Summand>& summands() const { return summands_; }
  void add(NVec offset, DiophantineSystem system, BoxSpline spline);

  /// sum over summands of spline(v - offset), zero where v >= offset fails.
  Integer eval(std::span<const std::int64_t> v) const;

 private:
  std::size_t dim_;
  std::vector<Summand> summands_;
};

/// Throws InvariantError (with the witness word) when L is not contained in
/// u_1*...u_k*.
CountingFunction parikh_counting_function(const BoundedLanguage& bl, int depth_cap = 12);

struct SlenderVerdict {
  bool slender = false;
  /// max f over the radius box when slender.
  std::optional<Integer> bound;
};

/// Slender iff every sampled region piece is constant along the span of the
/// region's lattice points in [0, radius]^t.
SlenderVerdict decide_parikh_slender(const CountingFunction& f, std::int64_t radius);

/// A single box spline on the union arrangement whose pieces are the shifted
/// summand pieces, plus overrides wherever it disagrees with f inside
/// [0, radius]^t. Heuristic: `boundary_hit` reports overrides on the outer
/// faces of the box, where more exceptions may lie beyond the radius.
struct NormalizedCounting {
  BoxSpline spline;
  bool boundary_hit = false;
};

NormalizedCounting normalize_counting_function(const CountingFunction& f, std::int64_t radius);

}  // namespace parikh
