#include <cmath>
#include <limits>

#include "doctest.h"
#include "helpers.hpp"
#include "koethe/detail/lp.hpp"
#include "koethe/errors.hpp"
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

TEST_CASE("packing simplex") {
  // max x + y s.t. x + 2y <= 1, 2x + y <= 1: optimum (1/3, 1/3).
  const auto sol = detail::maximize_packing({1, 1}, {{1, 2}, {2, 1}});
  REQUIRE(sol.optimal);
  CHECK(sol.value == doctest::Approx(2.0 / 3));
  CHECK(sol.x[0] == doctest::Approx(1.0 / 3));
  // Unbounded direction.
  CHECK_FALSE(detail::maximize_packing({1, 1}, {{1, 0}}).optimal);
}

TEST_CASE("linear_max examples") {
  const auto l1 = make_space(SpaceDescriptor::lp(1, 4));
  CHECK(linear_max(l1, {0.2, 0.9, 0.4, 0.1}).value == doctest::Approx(0.9));
  const auto l2 = make_space(SpaceDescriptor::lp(2, 2));
  const auto e = linear_max(l2, {1, 1});
  CHECK(e.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(e.kind == EstimateKind::exact);
  const auto L = make_space(SpaceDescriptor::lorentz(ExplicitWeights{{1, .5, .25}}, 1, 3));
  CHECK(linear_max(L, {1, 1, 1}).value == doctest::Approx(12.0 / 7).epsilon(1e-9));
  CHECK(linear_max(L, CoefficientVector(3)).value == 0);
  CHECK_THROWS_AS(linear_max(L, {1, 1}), DimensionError);
}

TEST_CASE("dual_norm closed form and optimizer agree") {
  for (double p : {1.0, 1.5, 3.0, kInf}) {
    const auto E = make_space(SpaceDescriptor::lp(p, 5));
    for (int i = 0; i < 10; ++i) {
      const auto z = random_vector(11, i, 5);
      const auto closed = dual_norm(E, z);
      const auto num = dual_norm(E, z, numeric());
      CHECK(closed.kind == EstimateKind::exact);
      CHECK(rel(closed.value, testing::lp(z, conjugate_exponent(p))) < 1e-13);
      CHECK(rel(num.value, closed.value) < 1e-6);
    }
  }
  const auto M = make_space(SpaceDescriptor::marcinkiewicz(PowerWeights{0.5}), 3);
  CHECK(dual_norm(M, CoefficientVector::unit(3, 0)).value == doctest::Approx(1));
}

TEST_CASE("witnesses are feasible and attain the value") {
  const std::vector<SpaceDescriptor> ds = {SpaceDescriptor::lp(1.3), SpaceDescriptor::lorentz(PowerWeights{0.6}, 2),
                                           SpaceDescriptor::marcinkiewicz(PowerWeights{0.4}),
                                           SpaceDescriptor::power(SpaceDescriptor::lp(3), 2)};
  for (const auto& d : ds) {
    const auto E = make_space(d, 5);
    for (int i = 0; i < 5; ++i) {
      const auto z = random_vector(12, i, 5);
      const auto est = linear_max(E, z, numeric());
      CHECK(E.norm(est.witness) <= 1 + 1e-9);
      CHECK(rel(dot(z.view(), est.witness.view()), est.value) < 1e-10);
      // Hoelder inequality.
      const auto x = random_vector(13, i, 5);
      CHECK(dot(z.view(), x.view()) <= est.value * E.norm(x) * (1 + 1e-8));
    }
  }
}

TEST_CASE("linear_max is deterministic and monotone in restarts") {
  const auto E = make_space(SpaceDescriptor::lorentz(PowerWeights{0.5}, 2), 6);
  const auto z = random_vector(14, 0, 6);
  OptimizerConfig a = numeric(), b = numeric();
  a.restarts = 2;
  b.restarts = 16;
  CHECK(linear_max(E, z, a).value <= linear_max(E, z, b).value + 1e-12);
  CHECK(linear_max(E, z, b).value == linear_max(E, z, b).value);
}

TEST_CASE("convex_max") {
  const auto E = make_space(SpaceDescriptor::lp(4, 2));
  const auto F = make_space(SpaceDescriptor::lp(2, 2));
  const auto est = convex_max(E, Objective::scaled_norm(F, {1, 1}));
  CHECK(est.value == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-9));
  CHECK(est.kind == EstimateKind::lower_bound);

  const auto G = make_space(SpaceDescriptor::lorentz(PowerWeights{0.5}, 1), 4);
  CHECK(convex_max(G, Objective::scaled_norm(G, CoefficientVector(4, 1.0))).value == doctest::Approx(1));

  const auto P = make_space(SpaceDescriptor::lp(1.7, 3));
  for (int i = 0; i < 100; ++i) {
    const auto z = random_vector(15, i, 3);
    CHECK(convex_max(P, Objective::linear_functional(z)).value == linear_max(P, z).value);
  }

  Objective bad;
  bad.value = [](std::span<const double>) { return std::numeric_limits<double>::quiet_NaN(); };
  CHECK_THROWS_AS(convex_max(E, bad), ObjectiveError);

  OptimizerConfig few, many;
  few.restarts = 1;
  many.restarts = 12;
  const auto H = make_space(SpaceDescriptor::lorentz(PowerWeights{0.3}, 2), 5);
  const auto f = Objective::scaled_norm(make_space(SpaceDescriptor::lp(3, 5)), random_vector(16, 0, 5));
  CHECK(convex_max(H, f, few).value <= convex_max(H, f, many).value + 1e-12);
}

TEST_CASE("grid oracle") {
  const auto E = make_space(SpaceDescriptor::lp(2, 2));
  CHECK(grid_oracle(E, Objective::linear_functional({1, 1}), 1024).value ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
  Objective one;
  one.value = [](std::span<const double>) { return 1.0; };
  CHECK(grid_oracle(make_space(SpaceDescriptor::lp(3, 3)), one, 32).value == 1);
  const auto L = make_space(SpaceDescriptor::lorentz(ExplicitWeights{{1, .5}}, 1, 2));
  CHECK(std::abs(grid_oracle(L, Objective::linear_functional({1, 1}), 1024).value - 4.0 / 3) <= 2e-3);
  CHECK_THROWS_AS(grid_oracle(make_space(SpaceDescriptor::lp(2, 5)), one, 16), RefusalError);
  CHECK_THROWS_AS(grid_oracle(E, one, 4), PreconditionError);
}

TEST_CASE("retract") {
  const auto E = make_space(SpaceDescriptor::lp(1, 2));
  const std::vector<double> x = {3, 1};
  const auto r = retract(E, x);
  CHECK(r[0] == doctest::Approx(0.75));
  const std::vector<double> small = {0.1, 0.2};
  CHECK(retract(E, small) == small);
}
