#pragma once

#include <cstdint>
#include <string_view>

#include "koethe/vector.hpp"

namespace koethe {

enum class EstimateKind { exact, lower_bound };

std::string_view to_string(EstimateKind kind);

/// Result of a norm computation.
///
/// `exact` values are either closed forms or optimizer results carrying a
/// cutting-plane certificate: `upper_bound - value <= tolerance * upper_bound`.
/// For `lower_bound` results `upper_bound` is +inf unless some bound is known.
struct NormEstimate {
  double value = 0.0;
  EstimateKind kind = EstimateKind::lower_bound;
  CoefficientVector witness;
  int restarts = 0;
  /// Relative certificate gap (linear problems), relative improvement of the last
  /// ascent sweep (convex problems) or the discretization error bound (grid oracle).
  double residual = 0.0;
  double upper_bound = 0.0;
};

struct OptimizerConfig {
  int restarts = 32;
  int max_iterations = 2000;
  double tolerance = 1e-8;
  std::uint64_t seed = 0;
  /// Allow closed-form fast paths (Hoelder duality, lp multipliers). Switching this off
  /// forces the numerical route, which is how identities get cross-checked.
  bool closed_forms = true;
};

void validate(const OptimizerConfig& cfg);

}  // namespace koethe
