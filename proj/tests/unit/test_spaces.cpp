#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "koethe/errors.hpp"
#include "koethe/optimize.hpp"
#include "koethe/space.hpp"

using namespace koethe;
using testing::random_vector;
using testing::rel;

TEST_CASE("lp norms") {
  CHECK(make_space(SpaceDescriptor::lp(2, 2)).norm({3, 4}) == doctest::Approx(5));
  CHECK(make_space(SpaceDescriptor::lp(1, 3)).norm({1, 2, 3}) == doctest::Approx(6));
  CHECK(make_space(SpaceDescriptor::lp(kInf, 3)).norm({1, 7, 3}) == 7);
  // Scaling keeps huge entries finite.
  CHECK(make_space(SpaceDescriptor::lp(2, 2)).norm({3e200, 4e200}) == doctest::Approx(5e200));
}

TEST_CASE("lorentz norm is the weighted sum of the rearrangement") {
  const auto E = make_space(SpaceDescriptor::lorentz(ExplicitWeights{{1, .5, .25}}, 1, 3));
  CHECK(E.norm({0, 2, 1}) == doctest::Approx(2.5));
  const auto H = make_space(SpaceDescriptor::lorentz(ExplicitWeights{{1, .5, 1.0 / 3, .25}}, 1, 4));
  CHECK(H.norm({1, 4, 2, 3}) == doctest::Approx(4 + 1.5 + 2.0 / 3 + 0.25));
  const auto P = make_space(SpaceDescriptor::lorentz(ExplicitWeights{{1, .5}}, 2, 2));
  CHECK(P.norm({1, 2}) == doctest::Approx(std::sqrt(4 + 0.5)));
  CHECK(E.flags().symmetric);
}

TEST_CASE("marcinkiewicz norm is the normalized sup of partial sums") {
  const auto E = make_space(SpaceDescriptor::marcinkiewicz(ExplicitWeights{{1, 1.5, 1.75}}, 3));
  CHECK(E.norm({1, 1, 1}) == doctest::Approx(12.0 / 7));
  CHECK(E.norm({0, 0, 2}) == doctest::Approx(2));
}

TEST_CASE("zero vector and dimension checks") {
  for (const auto& d : {SpaceDescriptor::lp(1.5), SpaceDescriptor::lorentz(PowerWeights{0.5}, 2),
                        SpaceDescriptor::marcinkiewicz(PowerWeights{0.5}),
                        SpaceDescriptor::power(SpaceDescriptor::lp(3), 2), SpaceDescriptor::dual(SpaceDescriptor::lp(3))}) {
    const auto E = make_space(d, 3);
    CHECK(E.norm(CoefficientVector(3)) == 0);
    CHECK_THROWS_AS(E.norm(CoefficientVector(2)), DimensionError);
  }
  CHECK_THROWS_AS(make_space(SpaceDescriptor::lp(2)), ConstructionError);
  CHECK_THROWS_AS(make_space(SpaceDescriptor::lorentz(ExplicitWeights{{1, 1.2, .5}}, 1, 3)), ConstructionError);
}

TEST_CASE("power spaces") {
  const auto E = make_space(SpaceDescriptor::lp(2, 4));
  for (int i = 0; i < 20; ++i) {
    const auto x = random_vector(1, i, 4);
    CHECK(rel(power(E, 2).norm(x), testing::lp(x, 1)) < 1e-13);
    CHECK(rel(power(E, 1).norm(x), E.norm(x)) < 1e-14);
    CHECK(rel(power(make_space(SpaceDescriptor::lp(3, 4)), 1.5).norm(x), testing::lp(x, 2)) < 1e-13);
    CHECK(rel(power(make_space(SpaceDescriptor::lp(3, 4)), 2).norm(x), testing::lp(x, 1.5)) < 1e-13);
  }
  CHECK_THROWS_AS(power(E, 0), ConstructionError);
  CHECK_THROWS_AS(power(E, -1), ConstructionError);
  CHECK(power(E, 2).flags().convexity_hypothesis == Hypothesis::holds);
  CHECK(power(E, 3).flags().convexity_hypothesis == Hypothesis::unverified);
  CHECK(power(E, 0.5).flags().convexity_hypothesis == Hypothesis::holds);
  CHECK(power(E, 2).lp_exponent() == doctest::Approx(1));
}

TEST_CASE("power of a power recovers the base") {
  const auto E = make_space(SpaceDescriptor::lorentz(PowerWeights{0.4}, 2), 5);
  for (int i = 0; i < 20; ++i) {
    const auto x = random_vector(2, i, 5);
    const double r = 0.3 + 0.2 * i;
    CHECK(rel(power(power(E, r), 1 / r).norm(x), E.norm(x)) < 1e-10);
  }
}

TEST_CASE("dual of lorentz p=1 is the marcinkiewicz space of partial weight sums") {
  const std::size_t N = 5;
  const auto w = weight_values(PowerWeights{0.5}, N);
  std::vector<double> W(N);
  double acc = 0;
  for (std::size_t k = 0; k < N; ++k) W[k] = acc += w[k];
  const auto L = make_space(SpaceDescriptor::lorentz(ExplicitWeights{w}, 1, N));
  const auto M = make_space(SpaceDescriptor::marcinkiewicz(ExplicitWeights{W}, N));
  OptimizerConfig cfg;
  cfg.closed_forms = false;
  for (int i = 0; i < 20; ++i) {
    const auto z = random_vector(3, i, N);
    CHECK(rel(dual_norm(L, z, cfg).value, M.norm(z)) < 1e-7);
    CHECK(rel(dual(L, cfg).norm(z), M.norm(z)) < 1e-7);
  }
}

TEST_CASE("dual spaces") {
  const auto E = make_space(SpaceDescriptor::lp(3, 3));
  const auto closed = dual(E);
  CHECK(closed.lp_exponent() == doctest::Approx(1.5));
  CHECK_FALSE(closed.flags().optimization_backed);
  OptimizerConfig cfg;
  cfg.closed_forms = false;
  const auto numeric = dual(E, cfg);
  CHECK(numeric.flags().optimization_backed);
  REQUIRE(numeric.predual() != nullptr);
  const CoefficientVector z{1, 2, 3};
  CHECK(numeric.norm(z) == doctest::Approx(closed.norm(z)).epsilon(1e-9));
  CHECK(make_space(SpaceDescriptor::dual(SpaceDescriptor::lp(3)), 3).norm(z) == doctest::Approx(closed.norm(z)));
}

TEST_CASE("supports are norming functionals") {
  const std::vector<SpaceDescriptor> ds = {
      SpaceDescriptor::lp(1), SpaceDescriptor::lp(2.5), SpaceDescriptor::lp(kInf),
      SpaceDescriptor::lorentz(PowerWeights{0.5}, 1), SpaceDescriptor::lorentz(PowerWeights{0.7}, 3),
      SpaceDescriptor::marcinkiewicz(PowerWeights{0.5}), SpaceDescriptor::power(SpaceDescriptor::lp(4), 2)};
  for (const auto& d : ds) {
    const auto E = make_space(d, 4);
    CAPTURE(E.label());
    for (int i = 0; i < 10; ++i) {
      const auto x = random_vector(4, i, 4);
      const auto s = E.support(x.view());
      CHECK(rel(dot(s, x.view()), E.norm(x)) < 1e-12);
      const auto y = random_vector(5, i, 4);
      CHECK(dot(s, y.view()) <= E.norm(y) * (1 + 1e-12));
    }
  }
}

TEST_CASE("custom spaces") {
  const auto E = custom_space(3, "weighted l1", [](std::span<const double> x) { return x[0] + 2 * x[1] + 3 * x[2]; });
  CHECK(E.norm({1, 1, 1}) == doctest::Approx(6));
  const auto s = E.support(std::vector<double>{1, 1, 1});
  CHECK(s[2] == doctest::Approx(3).epsilon(1e-5));
  CHECK_FALSE(E.flags().symmetric);
}

TEST_CASE("convexity constant lower bounds") {
  for (double p : {1.0, 2.0, 3.0}) {
    const auto E = make_space(SpaceDescriptor::lp(p, 4));
    for (double r = 1; r <= p; r += 0.5) {
      const auto est = convexity_constant_lb(E, r, 50, 9);
      CHECK(est.value <= 1 + 1e-9);
      CHECK(est.kind == EstimateKind::lower_bound);
    }
  }
  const auto l1 = make_space(SpaceDescriptor::lp(1, 2));
  CHECK(convexity_ratio(l1, 2, {{1, 0}, {0, 1}}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(convexity_ratio(l1, 2, {{0.3, 0.7}}) == doctest::Approx(1));
  CHECK(convexity_constant_lb(l1, 2, 10, 1).value >= std::sqrt(2.0) - 1e-12);
  const auto a = convexity_constant_lb(make_space(SpaceDescriptor::lp(1.5, 3)), 2, 30, 4);
  const auto b = convexity_constant_lb(make_space(SpaceDescriptor::lp(1.5, 3)), 2, 30, 4);
  CHECK(a.value == b.value);
  CHECK_THROWS_AS(convexity_constant_lb(l1, 0.5, 10, 1), PreconditionError);
}
