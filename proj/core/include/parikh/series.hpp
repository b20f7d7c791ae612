#pragma once

// Generating functions of counting functions as unexpanded sums of
// monomials times products of geometric series 1/(1 - m).

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "parikh/exactmath.hpp"
#include "parikh/system.hpp"

namespace parikh {

using Monomial = std::vector<std::int64_t>;

struct SeriesTerm {
  Monomial numerator;
  /// Each entry m stands for the factor 1/(1 - x^m); never the zero vector.
  std::vector<Monomial> denominators;
};

struct RationalSeriesExpr {
  std::size_t vars = 0;
  std::vector<SeriesTerm> terms;

  void validate() const;
  /// "x1^a x2^b / ((1 - x1^p x2^q)(1 - x2)) + ..."; "0" without terms.
  std::string to_string() const;
};

/// sum_i x^{c_i} prod_j 1/(1 - x^{A_i column j}).
RationalSeriesExpr generating_function(const std::vector<DiophantineSystem>& systems);

/// Exact coefficients of every monomial of total degree <= degree (zero
/// coefficients included).
std::map<Monomial, Integer> taylor_coefficients(const RationalSeriesExpr& e, std::int64_t degree);

}  // namespace parikh
