#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "koethe/detail/random.hpp"
#include "koethe/vector.hpp"

namespace testing {

inline koethe::CoefficientVector random_vector(std::uint64_t seed, std::uint64_t i, std::size_t n) {
  auto g = koethe::detail::make_rng(seed, i);
  std::vector<double> v(n);
  for (auto& x : v) x = 0.05 + koethe::detail::uniform01(g);
  return koethe::CoefficientVector(std::move(v));
}

/// Direct lp sum, independent of the library.
inline double lp(const koethe::CoefficientVector& x, double p) {
  if (std::isinf(p)) return x.max();
  double s = 0.0;
  for (double v : x) s += std::pow(v, p);
  return std::pow(s, 1.0 / p);
}

inline double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace testing
