#pragma once

// Counting functions of non-negative Diophantine systems as box splines,
// built one column at a time by summing along lattice rays.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "parikh/chambers.hpp"
#include "parikh/system.hpp"

namespace parikh {

/// lambda(x) = <coefficients, x>: the ray parameter at which x - lambda*a
/// meets a hyperplane.
struct RayFunctional {
  std::vector<Rational> coefficients;
  /// Index of the source hyperplane in its arrangement.
  std::size_t plane = 0;

  Rational eval(std::span<const Rational> x) const;
  Rational eval(std::span<const std::int64_t> x) const;
};

/// beta/gamma with gamma = <beta, a>; nullopt when gamma = 0.
std::optional<RayFunctional> lambda_functional(const Hyperplane& h, std::span<const std::int64_t> a,
                                               std::size_t plane_index = 0);

/// arr plus the planes lambda_p - lambda_q = 0 for every pair of planes
/// crossed by the ray a. Differences with a sign-definite normal are skipped:
/// on N^t their sign is already fixed by the coordinate planes.
Arrangement extend_arrangement(const Arrangement& arr, std::span<const std::int64_t> a);

enum class IntervalBounds { Closed, ClosedOpen, OpenClosed, Open };

/// x -> sum of p(x - lambda*a) over integers lambda in the interval between
/// lower(x) and upper(x) (lower = 0 when absent). Only meaningful where
/// 0 <= lower <= upper (strictly for Open) and every shifted point stays in
/// p's region.
LazyQP sum_over_interval(const LazyQP& p, std::span<const std::int64_t> a, const std::optional<RayFunctional>& lower,
                         const RayFunctional& upper, IntervalBounds bounds);
QuasiPolynomial sum_over_interval(const QuasiPolynomial& p, std::span<const std::int64_t> a,
                                  const std::optional<RayFunctional>& lower, const RayFunctional& upper,
                                  IntervalBounds bounds);

/// Counting function of the single column a: 1 on lattice multiples of a.
BoxSpline ray_base_spline(std::span<const std::int64_t> a);

/// x -> sum_{0 <= lambda <= Lambda(x)} g(x - lambda*a), Lambda(x) = min x_i/a_i.
BoxSpline ray_sum_spline(const BoxSpline& g, std::span<const std::int64_t> a);

/// n -> #{x in N^k : A x = n}. The offset of sys is ignored; k = 0 gives
/// the indicator of the origin.
BoxSpline box_spline_of_system(const DiophantineSystem& sys);

}  // namespace parikh
