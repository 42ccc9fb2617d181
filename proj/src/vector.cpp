#include "koethe/vector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "koethe/errors.hpp"

namespace koethe {

namespace {

void check_entries(const std::vector<double>& values) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!(values[k] >= 0.0) || std::isnan(values[k])) {
      throw Error("coefficient vector entry " + std::to_string(k) +
                  " is negative or NaN; pass moduli");
    }
  }
}

}  // namespace

CoefficientVector::CoefficientVector(std::size_t n, double value) : values_(n, value) {
  check_entries(values_);
}

CoefficientVector::CoefficientVector(std::initializer_list<double> values) : values_(values) {
  check_entries(values_);
}

CoefficientVector::CoefficientVector(std::vector<double> values) : values_(std::move(values)) {
  check_entries(values_);
}

CoefficientVector CoefficientVector::moduli(std::span<const double> values) {
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(), [](double v) { return std::abs(v); });
  return CoefficientVector(std::move(out));
}

CoefficientVector CoefficientVector::unit(std::size_t n, std::size_t k) {
  CoefficientVector e(n);
  e.values_.at(k) = 1.0;
  return e;
}

bool CoefficientVector::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

double CoefficientVector::max() const {
  return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

std::vector<std::size_t> decreasing_order(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });
  return order;
}

CoefficientVector rearrange(const CoefficientVector& x) {
  std::vector<double> sorted(x.begin(), x.end());
  std::stable_sort(sorted.begin(), sorted.end(), std::greater<>());
  return CoefficientVector(std::move(sorted));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace koethe
