#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "koethe/estimate.hpp"
#include "koethe/space.hpp"
#include "koethe/symbol.hpp"

namespace koethe {

/// n-linear operator on the N-dimensional truncation, stored by its nonzero
/// coefficients T(e_{i1}, ..., e_{in})(j). Indices are 0-based.
class FiniteMultilinearOperator {
 public:
  using Key = std::vector<std::size_t>;  // (i1, ..., in, j)

  FiniteMultilinearOperator(std::size_t arity, std::size_t dim);

  /// T_alpha with the signed entries of alpha.
  static FiniteMultilinearOperator diagonal(std::size_t arity, const DiagonalSymbol& alpha);

  std::size_t arity() const { return arity_; }
  std::size_t dim() const { return dim_; }

  void set(const std::vector<std::size_t>& inputs, std::size_t output, double value);
  double get(const std::vector<std::size_t>& inputs, std::size_t output) const;
  const std::map<Key, double>& coefficients() const { return coeffs_; }

 private:
  void check(const std::vector<std::size_t>& inputs, std::size_t output) const;

  std::size_t arity_;
  std::size_t dim_;
  std::map<Key, double> coeffs_;
};

/// ||T_alpha||: sup { ||alpha . y^n||_F : y in B_E } (a product of ball elements is
/// y^n for some y in B_E). Closed form ||alpha||_c, 1/c = (1/b - n/a)_+, for lp spaces.
NormEstimate diag_sup_norm(const SequenceSpace& E, const SequenceSpace& F, std::size_t n,
                           const DiagonalSymbol& alpha, const OptimizerConfig& cfg = {});

/// Scalar-valued form: sup { sum alpha(k) y(k)^n : y in B_E }.
NormEstimate diag_scalar_norm(const SequenceSpace& E, std::size_t n, const DiagonalSymbol& alpha,
                              const OptimizerConfig& cfg = {});

/// l_n(B; E, F) as a sequence space. Supports come from the envelope formula
/// y^n . s_F(gamma y^n) at the maximizing y.
SequenceSpace sup_ideal_space(const SequenceSpace& E, const SequenceSpace& F, std::size_t n,
                              const OptimizerConfig& cfg = {});

/// l_n(B; E) (scalar target) as a sequence space.
SequenceSpace scalar_ideal_space(const SequenceSpace& E, std::size_t n, const OptimizerConfig& cfg = {});

/// Integral ideal norm on the truncation: the Koethe dual norm of alpha with respect to
/// gamma -> diag_sup_norm(E^x, F^x, n, gamma).
NormEstimate diag_integral_norm(const SequenceSpace& E, const SequenceSpace& F, std::size_t n,
                                const DiagonalSymbol& alpha, const OptimizerConfig& cfg = {});

/// Scalar target: Koethe dual norm with respect to gamma -> diag_scalar_norm(E^x, n, gamma).
NormEstimate diag_integral_scalar_norm(const SequenceSpace& E, std::size_t n, const DiagonalSymbol& alpha,
                                       const OptimizerConfig& cfg = {});

/// alpha(i) = T(e_i, ..., e_i)(i).
DiagonalSymbol diagonal_part(const FiniteMultilinearOperator& T);

/// sum_i beta(i) T(e_i, ..., e_i)(i), with signed entries.
double pairing(const DiagonalSymbol& beta, const FiniteMultilinearOperator& T);

}  // namespace koethe
