#include "koethe/multipliers.hpp"

#include <algorithm>
#include <cmath>

#include "koethe/errors.hpp"
#include "koethe/optimize.hpp"

namespace koethe {

NormEstimate multiplier_norm(const SequenceSpace& E, const SequenceSpace& F, const DiagonalSymbol& alpha,
                             const OptimizerConfig& cfg) {
  validate(cfg);
  E.check_dim(alpha.size(), "symbol");
  F.check_dim(alpha.size(), "symbol");
  const std::size_t N = alpha.size();
  const auto& a = alpha.moduli();
  if (a.is_zero()) {
    NormEstimate out;
    out.kind = EstimateKind::exact;
    out.witness = CoefficientVector(N);
    return out;
  }
  const auto pa = E.lp_exponent();
  const auto pb = F.lp_exponent();
  if (cfg.closed_forms && pa && pb) {
    const double inv_c = std::max(0.0, 1.0 / *pb - 1.0 / *pa);
    const double c = inv_c == 0.0 ? kInf : 1.0 / inv_c;
    NormEstimate out;
    out.kind = EstimateKind::exact;
    out.value = make_space(SpaceDescriptor::lp(c, N)).norm(a);
    out.upper_bound = out.value;
    std::vector<double> x(N, 0.0);
    if (std::isinf(c)) {
      x[static_cast<std::size_t>(std::max_element(a.begin(), a.end()) - a.begin())] = 1.0;
    } else if (std::isinf(*pa)) {
      std::fill(x.begin(), x.end(), 1.0);
    } else {
      // Equality case of Hoelder: x^a proportional to alpha^c.
      for (std::size_t k = 0; k < N; ++k) x[k] = std::pow(a[k] / out.value, c / *pa);
    }
    out.witness = CoefficientVector(retract(E, x));
    return out;
  }
  return convex_max(E, Objective::scaled_norm(F, a), cfg);
}

SpaceDescriptor lorentz_multiplier_descriptor(double q, const WeightSpec& w, double p, std::size_t dim) {
  if (!(q >= 1.0) || std::isinf(q)) throw ConstructionError("multiplier formula requires 1 <= q < inf");
  if (!(p >= 1.0) || std::isinf(p)) throw ConstructionError("multiplier formula requires 1 <= p < inf");
  if (const auto* e = std::get_if<ExplicitWeights>(&w)) {
    SpaceDescriptor::lorentz(w, p, dim != 0 ? dim : e->values.size()).validate();
  } else {
    SpaceDescriptor::lorentz(w, p, dim != 0 ? dim : 1).validate();
  }
  if (p >= q) return SpaceDescriptor::lp(kInf, dim);
  const double e = q / (q - p);
  WeightSpec out;
  if (const auto* ex = std::get_if<ExplicitWeights>(&w)) {
    ExplicitWeights pw;
    for (double v : ex->values) pw.values.push_back(std::pow(v, e));
    out = pw;
  } else {
    out = PowerWeights{std::get<PowerWeights>(w).theta * e};
  }
  return SpaceDescriptor::lorentz(out, p * q / (q - p), dim);
}

}  // namespace koethe
