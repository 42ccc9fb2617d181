#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace koethe {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Hoelder conjugate with the conventions 1' = inf and inf' = 1.
double conjugate_exponent(double p);

struct ExplicitWeights {
  std::vector<double> values;
};

/// Parametric family k^(-theta), k = 1, 2, ...
struct PowerWeights {
  double theta = 0.5;
};

using WeightSpec = std::variant<ExplicitWeights, PowerWeights>;

/// First n values of a weight sequence. Throws ConstructionError if an explicit
/// list is shorter than n.
std::vector<double> weight_values(const WeightSpec& w, std::size_t n);

/// Psi(1..n) for a Marcinkiewicz space. The power family means partial sums
/// Psi(K) = sum_{k<=K} k^(-theta).
std::vector<double> psi_values(const WeightSpec& psi, std::size_t n);

struct SpaceDescriptor;
using DescriptorPtr = std::shared_ptr<const SpaceDescriptor>;

struct LpSpec {
  double p = 2.0;
};

struct LorentzSpec {
  WeightSpec weights;
  double p = 1.0;
};

struct MarcinkiewiczSpec {
  WeightSpec psi;
};

struct PowerSpec {
  DescriptorPtr base;
  double r = 1.0;
};

struct DualSpec {
  DescriptorPtr base;
};

/// Symbolic description of a sequence space at a fixed truncation dimension.
///
/// `dim == 0` means "inherit": nested bases take the dimension of the enclosing
/// descriptor, and top-level descriptors may pick it up from the data they are
/// evaluated against.
struct SpaceDescriptor {
  using Kind = std::variant<LpSpec, LorentzSpec, MarcinkiewiczSpec, PowerSpec, DualSpec>;

  Kind kind;
  std::size_t dim = 0;

  static SpaceDescriptor lp(double p, std::size_t dim = 0);
  static SpaceDescriptor lorentz(WeightSpec w, double p, std::size_t dim = 0);
  static SpaceDescriptor marcinkiewicz(WeightSpec psi, std::size_t dim = 0);
  static SpaceDescriptor power(SpaceDescriptor base, double r, std::size_t dim = 0);
  static SpaceDescriptor dual(SpaceDescriptor base, std::size_t dim = 0);

  std::string_view type_name() const;

  /// Checks every invariant at the current dimension; throws ConstructionError
  /// naming the violated one.
  void validate() const;

  /// Copy with the dimension set recursively (explicit weight lists are truncated).
  SpaceDescriptor with_dimension(std::size_t n) const;

  /// Dimension if set, otherwise `fallback`.
  std::size_t resolved_dim(std::size_t fallback) const { return dim != 0 ? dim : fallback; }
};

nlohmann::ordered_json to_json(const SpaceDescriptor& d);
SpaceDescriptor descriptor_from_json(const nlohmann::json& doc);

/// Accepts either a JSON document or the shorthand form, e.g.
/// `lorentz(w=(1,.5,.25),p=1)`, `dual(lp(3))`, `power(lp(p=4,N=3),r=2)`.
SpaceDescriptor parse_descriptor(std::string_view text);

std::string to_shorthand(const SpaceDescriptor& d);

/// Structural equality (same variant tree, parameters and weights).
bool equivalent(const SpaceDescriptor& a, const SpaceDescriptor& b);

}  // namespace koethe
