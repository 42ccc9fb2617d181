#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "koethe/vector.hpp"

namespace koethe {

/// Defining sequence alpha of a diagonal operator T_alpha.
///
/// Norms consume only the moduli; the sign record is kept so that pairings with
/// general operators stay exact.
class DiagonalSymbol {
 public:
  DiagonalSymbol() = default;
  DiagonalSymbol(CoefficientVector moduli);  // NOLINT(google-explicit-constructor)
  DiagonalSymbol(std::initializer_list<double> moduli) : DiagonalSymbol(CoefficientVector(moduli)) {}

  static DiagonalSymbol from_signed(std::span<const double> values);

  std::size_t size() const { return moduli_.size(); }
  const CoefficientVector& moduli() const { return moduli_; }
  /// +1 or -1 per entry.
  const std::vector<int>& signs() const { return signs_; }
  double signed_value(std::size_t k) const { return signs_[k] * moduli_[k]; }
  std::vector<double> signed_values() const;
  bool is_zero() const { return moduli_.is_zero(); }

  friend bool operator==(const DiagonalSymbol&, const DiagonalSymbol&) = default;

 private:
  CoefficientVector moduli_;
  std::vector<int> signs_;
};

}  // namespace koethe
