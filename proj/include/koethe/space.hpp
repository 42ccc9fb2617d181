#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "koethe/descriptor.hpp"
#include "koethe/estimate.hpp"
#include "koethe/vector.hpp"

namespace koethe {

/// Status of the convexity hypothesis M^(max(1,r))(E) = 1 behind a power E^r.
/// When it holds, E^r is a genuine norm.
enum class Hypothesis { not_applicable, holds, unverified };

std::string_view to_string(Hypothesis h);

struct SpaceFlags {
  bool symmetric = false;
  bool has_closed_form_dual = false;
  /// Norm evaluation itself runs an optimizer (dual spaces, derived ideal spaces).
  bool optimization_backed = false;
  Hypothesis convexity_hypothesis = Hypothesis::not_applicable;

  /// The unit ball is known to be convex, so supporting functionals give valid cuts.
  bool convex() const { return convexity_hypothesis != Hypothesis::unverified; }
};

/// Norm evaluator on nonnegative vectors of a fixed length.
class NormImpl {
 public:
  virtual ~NormImpl() = default;

  virtual double norm(std::span<const double> x) const = 0;

  /// Returns ||x|| and writes a norming functional s >= 0:
  /// s . x = ||x|| and, for convex balls, s . y <= ||y|| for every y >= 0.
  /// For x = 0 the functional is 0.
  virtual double norm_and_support(std::span<const double> x, std::span<double> s) const = 0;
};

/// Executable norm oracle at a fixed dimension.
///
/// Copies share the evaluator; all members are immutable after construction.
class SequenceSpace {
 public:
  SequenceSpace(std::size_t dim, std::string label, SpaceFlags flags,
                std::shared_ptr<const NormImpl> impl,
                std::optional<SpaceDescriptor> descriptor = std::nullopt,
                std::optional<double> lp_exponent = std::nullopt,
                std::shared_ptr<const SequenceSpace> predual = nullptr);

  std::size_t dim() const { return dim_; }
  const std::string& label() const { return label_; }
  const SpaceFlags& flags() const { return flags_; }
  const std::optional<SpaceDescriptor>& descriptor() const { return descriptor_; }

  /// p when the norm coincides with the lp(p) norm.
  std::optional<double> lp_exponent() const { return lp_exponent_; }

  /// For spaces built by dual(E): the space E. Null otherwise.
  const SequenceSpace* predual() const { return predual_.get(); }

  /// Dimension-checked evaluation.
  double norm(const CoefficientVector& x) const;

  /// Unchecked evaluation for inner loops; x.size() must equal dim().
  double eval(std::span<const double> x) const { return impl_->norm(x); }

  double norm_and_support(std::span<const double> x, std::vector<double>& s) const;
  std::vector<double> support(std::span<const double> x) const;

  void check_dim(std::size_t n, const char* what) const;

 private:
  std::size_t dim_;
  std::string label_;
  SpaceFlags flags_;
  std::shared_ptr<const NormImpl> impl_;
  std::optional<SpaceDescriptor> descriptor_;
  std::optional<double> lp_exponent_;
  std::shared_ptr<const SequenceSpace> predual_;
};

/// Builds the oracle for a descriptor. The descriptor dimension must be set.
/// `inner` configures the optimizer behind dual variants.
SequenceSpace make_space(const SpaceDescriptor& d, const OptimizerConfig& inner = {});

/// make_space(d.with_dimension(n), inner).
SequenceSpace make_space(const SpaceDescriptor& d, std::size_t n, const OptimizerConfig& inner = {});

/// E^r with ||x||_{E^r} = || x^(1/r) ||_E^r.
SequenceSpace power(const SequenceSpace& E, double r);

/// Koethe dual E^x. Uses the Hoelder closed form for lp-type E when
/// `cfg.closed_forms` is set, and linear_max otherwise.
SequenceSpace dual(const SequenceSpace& E, const OptimizerConfig& cfg = {});

/// Norm given by an arbitrary callable. Supports come from one-sided finite differences.
SequenceSpace custom_space(std::size_t dim, std::string label,
                           std::function<double(std::span<const double>)> norm,
                           bool symmetric = false);

/// ||(sum_j x_j^r)^(1/r)||_E / (sum_j ||x_j||_E^r)^(1/r) for one family. 0 for an all-zero family.
double convexity_ratio(const SequenceSpace& E, double r, const std::vector<CoefficientVector>& family);

/// Lower bound on the r-convexity constant M^(r)(E) from `samples` seeded random
/// families (plus unit-vector and constant families).
NormEstimate convexity_constant_lb(const SequenceSpace& E, double r, int samples, std::uint64_t seed);

}  // namespace koethe
