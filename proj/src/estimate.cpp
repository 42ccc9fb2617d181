#include "koethe/estimate.hpp"

#include <cmath>

#include "koethe/errors.hpp"

namespace koethe {

std::string_view to_string(EstimateKind kind) {
  return kind == EstimateKind::exact ? "exact" : "lower_bound";
}

void validate(const OptimizerConfig& cfg) {
  if (cfg.restarts < 1) throw PreconditionError("optimizer restarts must be positive");
  if (cfg.max_iterations < 1) throw PreconditionError("optimizer max_iterations must be positive");
  if (!(cfg.tolerance > 0.0) || !std::isfinite(cfg.tolerance)) {
    throw PreconditionError("optimizer tolerance must be positive and finite");
  }
}

}  // namespace koethe
