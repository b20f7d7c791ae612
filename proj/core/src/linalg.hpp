#pragma once

// Small exact linear algebra over Q used by the semilinear code.

#include <cstdint>
#include <vector>

#include "parikh/exactmath.hpp"

namespace parikh::detail {

using RMatrix = std::vector<std::vector<Rational>>;

RMatrix to_rational(const std::vector<std::vector<std::int64_t>>& m);

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RMatrix& m, std::size_t cols);

std::size_t rank(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols);

/// Basis of {z : sum_j z_j * vectors[j] = 0}, each scaled to a primitive
/// integer vector.
std::vector<std::vector<Integer>> integer_kernel(const std::vector<std::vector<std::int64_t>>& vectors, std::size_t dim);

/// Inverse of a square invertible matrix.
RMatrix inverse(const RMatrix& m);

}  // namespace parikh::detail
