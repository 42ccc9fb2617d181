#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace koethe {

/// Finite nonnegative real vector standing for the moduli |x(k)| of a sequence.
///
/// Every norm in the library depends only on moduli, so signed or complex data is
/// reduced to its absolute values before it reaches this type.
class CoefficientVector {
 public:
  CoefficientVector() = default;
  explicit CoefficientVector(std::size_t n, double value = 0.0);
  CoefficientVector(std::initializer_list<double> values);
  explicit CoefficientVector(std::vector<double> values);

  /// Takes coordinatewise absolute values of arbitrary real input.
  static CoefficientVector moduli(std::span<const double> values);
  static CoefficientVector unit(std::size_t n, std::size_t k);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  double operator[](std::size_t k) const { return values_[k]; }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  std::span<const double> view() const { return values_; }
  const std::vector<double>& values() const { return values_; }

  bool is_zero() const;
  double max() const;

  friend bool operator==(const CoefficientVector&, const CoefficientVector&) = default;

 private:
  std::vector<double> values_;
};

/// Stable nonincreasing order of the indices of x (ties keep original index order).
std::vector<std::size_t> decreasing_order(std::span<const double> x);

/// Decreasing rearrangement x*.
CoefficientVector rearrange(const CoefficientVector& x);

double dot(std::span<const double> a, std::span<const double> b);

}  // namespace koethe
