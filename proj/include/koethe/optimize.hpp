#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "koethe/estimate.hpp"
#include "koethe/space.hpp"
#include "koethe/vector.hpp"

namespace koethe {

/// Monotone convex nonnegative objective on the positive cone.
struct Objective {
  std::function<double(std::span<const double>)> value;
  /// Optional subgradient writer. Finite differences are used when absent.
  std::function<void(std::span<const double> x, std::span<double> g)> gradient;
  /// Degree of positive homogeneity.
  double degree = 1.0;
  /// Set when the objective is x -> linear . x; convex_max then delegates to linear_max.
  std::optional<CoefficientVector> linear;

  static Objective linear_functional(const CoefficientVector& z);

  /// x -> ||scale . x||_F, with the exact subgradient from F's supports.
  static Objective scaled_norm(const SequenceSpace& F, const CoefficientVector& scale);
};

/// sup { z . x : x in B_E, x >= 0 }.
///
/// Local tangent ascent from canonical and seeded random starts supplies feasible
/// points; supporting functionals at those points are cuts of an outer polyhedral
/// model whose LP maximum is an upper bound. The result is `exact` once
/// (upper - lower) <= tolerance * upper and the ball is known to be convex.
NormEstimate linear_max(const SequenceSpace& E, const CoefficientVector& z,
                        const OptimizerConfig& cfg = {});

/// ||z||_{E^x}. Hoelder closed form for lp-type E when allowed, linear_max otherwise.
NormEstimate dual_norm(const SequenceSpace& E, const CoefficientVector& z,
                       const OptimizerConfig& cfg = {});

/// A point of B_E maximizing g . x (a supporting functional of E^x at g).
std::vector<double> ball_argmax(const SequenceSpace& E, std::span<const double> g,
                                const OptimizerConfig& cfg = {});

/// x / max(1, ||x||_E).
std::vector<double> retract(const SequenceSpace& E, std::span<const double> x);

/// Lower bound on sup { f(x) : x in B_E, x >= 0 } by conditional-gradient ascent
/// (x <- ball_argmax(grad f(x))) from canonical and random starts. Nondecreasing
/// in cfg.restarts for a fixed seed.
NormEstimate convex_max(const SequenceSpace& E, const Objective& f, const OptimizerConfig& cfg = {});

/// Brute-force maximum of f over grid points of the positive part of the unit
/// sphere of E (angles in [0, pi/2], `resolution` per angular coordinate).
/// residual holds the discretization error estimate. Refuses dim > 4.
NormEstimate grid_oracle(const SequenceSpace& E, const Objective& f, int resolution);

}  // namespace koethe
