#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "koethe/errors.hpp"
#include "koethe/summing.hpp"

using namespace koethe;
using testing::random_vector;
using testing::rel;

TEST_CASE("weak p norms") {
  const auto E = make_space(SpaceDescriptor::lp(3, 3));
  const auto x = random_vector(51, 0, 3);
  CHECK(rel(weak_p_norm(E, WitnessFamily{{x}}, 2).value, E.norm(x)) < 1e-7);
  const auto L = make_space(SpaceDescriptor::lorentz(PowerWeights{0.5}, 1), 3);
  CHECK(rel(weak_p_norm(L, WitnessFamily{{x}}, 1.5).value, L.norm(x)) < 1e-6);

  const auto inf = make_space(SpaceDescriptor::lp(kInf, 3));
  WitnessFamily units{{CoefficientVector::unit(3, 0), CoefficientVector::unit(3, 1), CoefficientVector::unit(3, 2)}};
  for (double p : {1.0, 2.0, 3.0}) {
    const auto w = weak_p_norm(inf, units, p);
    CHECK(w.value == doctest::Approx(1));
    CHECK(w.kind == EstimateKind::exact);
  }
  const auto e1 = CoefficientVector::unit(3, 0);
  for (double p : {1.0, 2.0, 4.0}) {
    CHECK(weak_p_norm(E, WitnessFamily{{e1, e1}}, p).value == doctest::Approx(std::pow(2.0, 1 / p)).epsilon(1e-7));
  }
  CHECK_THROWS_AS(weak_p_norm(E, WitnessFamily{}, 2), PreconditionError);
}

TEST_CASE("inclusion constants") {
  CHECK(inclusion_constant(make_space(SpaceDescriptor::lp(2.5, 4)), 2.5).value == doctest::Approx(1));
  CHECK(inclusion_constant(make_space(SpaceDescriptor::lp(2, 4)), 1).value == doctest::Approx(1));
  CHECK(inclusion_constant(make_space(SpaceDescriptor::lp(1, 5)), 2).value == doctest::Approx(std::sqrt(5.0)));
  OptimizerConfig cfg;
  cfg.closed_forms = false;
  CHECK(inclusion_constant(make_space(SpaceDescriptor::lp(1, 4)), 2, cfg).value ==
        doctest::Approx(2).epsilon(1e-9));
}

TEST_CASE("summing anchor") {
  const std::size_t N = 3;
  const CoefficientVector alpha{0.3, 0.9, 0.5};
  for (double p : {1.0, 2.0}) {
    const auto target = make_space(SpaceDescriptor::lp(p, N));
    const auto domain = make_space(SpaceDescriptor::lp(kInf, N));
    SummingConfig sc;
    const auto idx = make_space(SpaceDescriptor::lp(p, 8));
    const auto rep = summing_norm_lb(idx, p, 1, domain, target, alpha, sc);
    CHECK(rel(rep.estimate.value, testing::lp(alpha, p)) < 0.05);
    CHECK(rep.estimate.kind == EstimateKind::lower_bound);
    CHECK(rep.weak_norms_exact);
    CHECK(rep.m_profile.size() == 8);
    CHECK(summing_norm_lb(idx, p, 1, domain, target, CoefficientVector(N), sc).estimate.value == 0);

    // Self-consistency: every sampled family's ratio is below the estimate.
    for (int i = 0; i < 20; ++i) {
      WitnessFamily X;
      for (int j = 0; j < 1 + i % 5; ++j) X.vectors.push_back(random_vector(52, i * 10 + j, N));
      CHECK(summing_ratio(idx, p, 1, domain, target, alpha, X) <= rep.estimate.value + 1e-12);
    }
    sc.m_max = 1;
    const double one = summing_norm_lb(idx, p, 1, domain, target, alpha, sc).estimate.value;
    sc.m_max = 2;
    CHECK(one <= summing_norm_lb(idx, p, 1, domain, target, alpha, sc).estimate.value + 1e-12);
  }
}

TEST_CASE("summing estimate refuses an oversized inclusion constant") {
  const auto idx = make_space(SpaceDescriptor::lp(1, 8));
  const auto domain = make_space(SpaceDescriptor::lp(kInf, 2));
  CHECK_THROWS_AS(summing_norm_lb(idx, 2, 1, domain, std::nullopt, CoefficientVector{1, 1}), PreconditionError);
}

TEST_CASE("convexification identity per witness") {
  const auto F = make_space(SpaceDescriptor::lp(2, 4));
  const auto G = make_space(SpaceDescriptor::lp(1, 4));
  const auto idx = make_space(SpaceDescriptor::lp(1, 5));
  for (int i = 0; i < 20; ++i) {
    WitnessFamily X;
    for (int j = 0; j < 5; ++j) X.vectors.push_back(random_vector(53, i * 10 + j, 4));
    const auto [a, b] = convexification_witness_gap(idx, 2, 2, F, G, random_vector(54, i, 4), X);
    CHECK(rel(a, b) < 1e-12);
  }
  const auto G2 = make_space(SpaceDescriptor::lp(3, 4));
  const auto [z1, z2] = convexification_witness_gap(idx, 2, 2, F, G2, CoefficientVector(4), WitnessFamily{{random_vector(55, 0, 4)}});
  CHECK(z1 == 0);
  CHECK(z2 == 0);
  const auto e1 = CoefficientVector::unit(4, 0);
  const auto [u1, u2] = convexification_witness_gap(idx, 2, 3, F, G2, e1, WitnessFamily{{e1}});
  CHECK(u1 == doctest::Approx(1));
  CHECK(u2 == doctest::Approx(1));
}

TEST_CASE("composition bound per witness") {
  const std::size_t N = 3;
  const auto Y = make_space(SpaceDescriptor::lp(3, N));
  const auto target = make_space(SpaceDescriptor::lp(1, N));
  const auto idx = make_space(SpaceDescriptor::lp(2, 4));
  for (int i = 0; i < 10; ++i) {
    std::vector<DiagonalSymbol> deltas = {random_vector(56, i, N), random_vector(57, i, N)};
    std::vector<WitnessFamily> fams(2);
    for (auto& f : fams) {
      for (int j = 0; j < 4; ++j) f.vectors.push_back(random_vector(58, i * 100 + j + 10 * (&f - fams.data()), N));
    }
    const auto b = composition_witness_bound(idx, Y, target, random_vector(59, i, N), deltas, fams);
    CHECK(b.lhs <= b.rhs * (1 + 1e-8));
  }
}

TEST_CASE("inclusion step between summing classes") {
  const std::size_t N = 3;
  const auto domain = make_space(SpaceDescriptor::lp(kInf, N));
  for (int i = 0; i < 10; ++i) {
    WitnessFamily X;
    for (int j = 0; j < 4; ++j) X.vectors.push_back(random_vector(60, i * 10 + j, N));
    const auto [lhs, rhs] = inclusion_witness_check(domain, X, random_vector(61, i, 4), 1.5, 3);
    CHECK(lhs <= rhs * (1 + 1e-6));
  }
}
