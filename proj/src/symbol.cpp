#include "koethe/symbol.hpp"

#include <cmath>

namespace koethe {

DiagonalSymbol::DiagonalSymbol(CoefficientVector moduli)
    : moduli_(std::move(moduli)), signs_(moduli_.size(), 1) {}

DiagonalSymbol DiagonalSymbol::from_signed(std::span<const double> values) {
  DiagonalSymbol out(CoefficientVector::moduli(values));
  for (std::size_t k = 0; k < values.size(); ++k) out.signs_[k] = std::signbit(values[k]) ? -1 : 1;
  return out;
}

std::vector<double> DiagonalSymbol::signed_values() const {
  std::vector<double> out(size());
  for (std::size_t k = 0; k < size(); ++k) out[k] = signed_value(k);
  return out;
}

}  // namespace koethe
