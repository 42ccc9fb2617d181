#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "koethe/ideals.hpp"
#include "koethe/multipliers.hpp"
#include "koethe/optimize.hpp"

using namespace koethe;
using testing::random_vector;
using testing::rel;

namespace {
OptimizerConfig numeric() {
  OptimizerConfig c;
  c.closed_forms = false;
  return c;
}
}  // namespace

TEST_CASE("multiplier examples") {
  const auto l2 = make_space(SpaceDescriptor::lp(2, 3));
  const CoefficientVector a{0.2, 0.7, 0.5};
  CHECK(multiplier_norm(l2, l2, a).value == doctest::Approx(0.7));
  CHECK(multiplier_norm(l2, l2, a, numeric()).value == doctest::Approx(0.7).epsilon(1e-9));
  const auto l4 = make_space(SpaceDescriptor::lp(4, 2));
  const auto l22 = make_space(SpaceDescriptor::lp(2, 2));
  CHECK(multiplier_norm(l4, l22, {1, 1}).value == doctest::Approx(std::pow(2.0, 0.25)));
  CHECK(multiplier_norm(l4, l22, {1, 1}, numeric()).value == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-9));
  CHECK(multiplier_norm(l2, l2, CoefficientVector(3)).value == 0);
}

TEST_CASE("lp multiplier closed form matches the optimizer") {
  for (double a : {1.0, 2.0, 3.0, kInf}) {
    for (double b : {1.0, 1.5, 4.0, kInf}) {
      const auto E = make_space(SpaceDescriptor::lp(a, 4));
      const auto F = make_space(SpaceDescriptor::lp(b, 4));
      const auto alpha = random_vector(21, static_cast<std::uint64_t>(a * 10 + b), 4);
      const auto closed = multiplier_norm(E, F, alpha);
      CAPTURE(a);
      CAPTURE(b);
      CHECK(closed.kind == EstimateKind::exact);
      CHECK(rel(closed.value, multiplier_norm(E, F, alpha, numeric()).value) < 1e-6);
      // Witness attains the value.
      std::vector<double> ax(4);
      for (std::size_t k = 0; k < 4; ++k) ax[k] = alpha[k] * closed.witness[k];
      CHECK(rel(F.norm(CoefficientVector(ax)), closed.value) < 1e-12);
    }
  }
}

TEST_CASE("multiplier norm scales linearly") {
  const auto E = make_space(SpaceDescriptor::lp(3, 4));
  const auto F = make_space(SpaceDescriptor::lorentz(PowerWeights{0.5}, 1.5), 4);
  const auto alpha = random_vector(22, 0, 4);
  std::vector<double> scaled(alpha.begin(), alpha.end());
  for (double& v : scaled) v *= 3.5;
  const double a = multiplier_norm(E, F, alpha).value;
  CHECK(rel(multiplier_norm(E, F, CoefficientVector(scaled)).value, 3.5 * a) < 1e-10);
}

TEST_CASE("lorentz multiplier descriptor") {
  const auto d = lorentz_multiplier_descriptor(2, PowerWeights{0.5}, 1, 4);
  const auto& spec = std::get<LorentzSpec>(d.kind);
  CHECK(spec.p == doctest::Approx(2));
  CHECK(std::get<PowerWeights>(spec.weights).theta == doctest::Approx(1.0));

  const auto e = lorentz_multiplier_descriptor(4, ExplicitWeights{{1, .5, .25}}, 2, 3);
  const auto& es = std::get<LorentzSpec>(e.kind);
  CHECK(es.p == doctest::Approx(4));
  CHECK(weight_values(es.weights, 3)[2] == doctest::Approx(0.0625));

  const auto inf = lorentz_multiplier_descriptor(2, PowerWeights{0.5}, 3, 3);
  REQUIRE(std::holds_alternative<LpSpec>(inf.kind));
  CHECK(std::isinf(std::get<LpSpec>(inf.kind).p));
}

TEST_CASE("lorentz multiplier formula against the optimizer") {
  for (double theta : {0.3, 0.8}) {
    for (auto [p, q] : {std::pair{1.0, 2.0}, {1.5, 3.0}}) {
      const std::size_t N = 4;
      const auto E = make_space(SpaceDescriptor::lp(q, N));
      const auto F = make_space(SpaceDescriptor::lorentz(PowerWeights{theta}, p), N);
      const auto alpha = random_vector(23, static_cast<std::uint64_t>(theta * 10 + p), N);
      const double closed = make_space(lorentz_multiplier_descriptor(q, PowerWeights{theta}, p, N)).norm(alpha);
      CHECK(rel(multiplier_norm(E, F, alpha).value, closed) < 1e-4);
    }
  }
}

TEST_CASE("multipliers into the scalar ideal never exceed the sup norm") {
  const std::size_t N = 3;
  const auto E = make_space(SpaceDescriptor::lp(3, N));
  const auto F = make_space(SpaceDescriptor::lp(2, N));
  for (int i = 0; i < 5; ++i) {
    const auto alpha = random_vector(24, i, N);
    const double lhs = multiplier_norm(dual(F), scalar_ideal_space(E, 2), alpha).value;
    CHECK(lhs <= diag_sup_norm(E, F, 2, alpha).value + 1e-5);
  }
}
