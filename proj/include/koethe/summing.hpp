#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "koethe/estimate.hpp"
#include "koethe/space.hpp"
#include "koethe/symbol.hpp"

namespace koethe {

/// Finite family (x_i), i = 1..m, of nonnegative vectors of a common length.
struct WitnessFamily {
  std::vector<CoefficientVector> vectors;

  std::size_t m() const { return vectors.size(); }
  std::size_t dim() const { return vectors.empty() ? 0 : vectors.front().size(); }
  /// Throws PreconditionError for an empty family, DimensionError for ragged lengths.
  void validate() const;
};

struct SummingConfig {
  int m_max = 8;
  /// Random families per family size m.
  int witness_restarts = 16;
  /// Coordinate moves tried per random family during local improvement.
  int local_steps = 60;
  /// Largest accepted estimate of the inclusion constant of lp into E_idx^(1/n).
  double inclusion_cap = 2.0;
  OptimizerConfig base;
};

void validate(const SummingConfig& cfg);

/// w_p(X) = sup { (sum_i <x', x_i>^p)^(1/p) : x' in B_{E^x} }.
/// Exact for E = l_inf (vertices of the l_1 ball) and E = l_1 (all-ones vertex).
NormEstimate weak_p_norm(const SequenceSpace& E, const WitnessFamily& X, double p,
                         const OptimizerConfig& cfg = {});

/// c_p^E = sup { ||x||_E : ||x||_p <= 1 } at the working dimension.
NormEstimate inclusion_constant(const SequenceSpace& E, double p, const OptimizerConfig& cfg = {});

/// ||(||T_alpha(x_i, ..., x_i)||_target)_i||_{E_idx} / w_p(X)^n for one shared family.
/// A missing target means the scalar form sum_k alpha(k) x(k)^n.
double summing_ratio(const SequenceSpace& E_idx, double p, std::size_t n, const SequenceSpace& domain,
                     const std::optional<SequenceSpace>& target, const DiagonalSymbol& alpha,
                     const WitnessFamily& X, const OptimizerConfig& cfg = {});

struct SummingReport {
  /// Largest ratio found; a lower bound for c_p * pi_(E,p)(T_alpha).
  NormEstimate estimate;
  /// Best ratio per family size m = 1..m_max.
  std::vector<double> m_profile;
  /// Estimate of c_p^{E_idx^(1/n)} at the working dimension.
  double inclusion_constant = 0.0;
  WitnessFamily best_family;
  /// True when every weak norm in the search was computed exactly.
  bool weak_norms_exact = false;
};

/// Lower-bound search over witness families with m <= m_max. Each m is searched
/// independently with sub-seeds (seed, m, i), so the result is nondecreasing in m_max
/// and in witness_restarts. Throws PreconditionError when the inclusion constant
/// exceeds cfg.inclusion_cap.
SummingReport summing_norm_lb(const SequenceSpace& E_idx, double p, std::size_t n, const SequenceSpace& domain,
                              const std::optional<SequenceSpace>& target, const DiagonalSymbol& alpha,
                              const SummingConfig& cfg = {});

/// (||(||alpha^(1/n) x_i||_{G^(1/n)})_i||_{E^(1/n)}, ||(||alpha x_i^n||_G)_i||_E^(1/n)).
/// The two entries agree for every family.
std::pair<double, double> convexification_witness_gap(const SequenceSpace& E_idx, double p, std::size_t n,
                                                      const SequenceSpace& F, const SequenceSpace& G,
                                                      const DiagonalSymbol& alpha, const WitnessFamily& X);

struct CompositionBound {
  double lhs = 0.0;
  double rhs = 0.0;
  double operator_norm = 0.0;
};

/// Per-witness form of the composition T o (A_1, ..., A_n) for diagonal T_alpha : Y^n -> target
/// and diagonal A_j = D_{delta_j}:
///   lhs = ||(||T(A_1 x_{1,i}, ..., A_n x_{n,i})||_target)_i||_{E_idx}
///   rhs = ||T|| * prod_j ||(||A_j x_{j,i}||_Y)_i||_{E_idx^(1/n)}.
CompositionBound composition_witness_bound(const SequenceSpace& E_idx, const SequenceSpace& Y,
                                           const SequenceSpace& target, const DiagonalSymbol& alpha,
                                           const std::vector<DiagonalSymbol>& deltas,
                                           const std::vector<WitnessFamily>& families,
                                           const OptimizerConfig& cfg = {});

/// (w_p(beta X), ||beta||_r * w_q(X)) with 1/r = 1/p - 1/q, p < q: the Hoelder step behind
/// the inclusion of (E,p)-summing into (l_n(B; l_r, E), q)-summing operators.
std::pair<double, double> inclusion_witness_check(const SequenceSpace& domain, const WitnessFamily& X,
                                                  const CoefficientVector& beta, double p, double q,
                                                  const OptimizerConfig& cfg = {});

}  // namespace koethe
