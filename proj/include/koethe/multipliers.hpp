#pragma once

#include <cstddef>

#include "koethe/descriptor.hpp"
#include "koethe/estimate.hpp"
#include "koethe/space.hpp"
#include "koethe/symbol.hpp"

namespace koethe {

/// ||alpha||_{M(E,F)} = sup { ||alpha . x||_F : x in B_E }.
/// Exact closed form ||alpha||_c, 1/c = (1/b - 1/a)_+, for E = lp(a), F = lp(b).
NormEstimate multiplier_norm(const SequenceSpace& E, const SequenceSpace& F, const DiagonalSymbol& alpha,
                             const OptimizerConfig& cfg = {});

/// Descriptor of M(lq, d(w,p)): d(w^(q/(q-p)), pq/(q-p)) for p < q and l_inf for p >= q.
/// `dim` is attached to the result (0 leaves it unset).
SpaceDescriptor lorentz_multiplier_descriptor(double q, const WeightSpec& w, double p, std::size_t dim = 0);

}  // namespace koethe
