#include "doctest.h"
#include "koethe/descriptor.hpp"
#include "koethe/errors.hpp"

using namespace koethe;

TEST_CASE("descriptor JSON round trip") {
  const std::vector<SpaceDescriptor> all = {
      SpaceDescriptor::lp(2, 3),
      SpaceDescriptor::lp(kInf, 2),
      SpaceDescriptor::lorentz(ExplicitWeights{{1, .5, .25}}, 1, 3),
      SpaceDescriptor::lorentz(PowerWeights{0.3}, 2, 5),
      SpaceDescriptor::marcinkiewicz(ExplicitWeights{{1, 1.5, 1.75}}, 3),
      SpaceDescriptor::marcinkiewicz(PowerWeights{0.5}, 4),
      SpaceDescriptor::power(SpaceDescriptor::lp(4), 2, 3),
      SpaceDescriptor::dual(SpaceDescriptor::lorentz(PowerWeights{0.5}, 1), 4),
  };
  for (const auto& d : all) {
    CAPTURE(to_shorthand(d));
    CHECK(equivalent(descriptor_from_json(to_json(d)), d));
    CHECK(equivalent(parse_descriptor(to_json(d).dump()), d));
    CHECK(equivalent(parse_descriptor(to_shorthand(d)), d));
  }
}

TEST_CASE("descriptor documents") {
  const auto d = parse_descriptor(R"({"type":"lp","p":"inf","N":2})");
  REQUIRE(std::holds_alternative<LpSpec>(d.kind));
  CHECK(std::isinf(std::get<LpSpec>(d.kind).p));
  CHECK(d.dim == 2);

  const auto l = parse_descriptor(R"({"type":"lorentz","p":1,"weights":{"kind":"power","theta":0.5}})");
  CHECK(weight_values(std::get<LorentzSpec>(l.kind).weights, 4)[3] == doctest::Approx(0.5));

  const auto s = parse_descriptor("power(lp(p=4,N=3),r=2)");
  CHECK(s.type_name() == "power");
  CHECK(s.with_dimension(3).dim == 3);
}

TEST_CASE("descriptor invariants name the violation") {
  CHECK_THROWS_AS(SpaceDescriptor::lorentz(ExplicitWeights{{1, 1.2, .5}}, 1, 3).validate(), ConstructionError);
  CHECK_THROWS_AS(SpaceDescriptor::lorentz(ExplicitWeights{{0.9, 0.5}}, 1, 2).validate(), ConstructionError);
  CHECK_THROWS_AS(SpaceDescriptor::lp(0.5, 2).validate(), ConstructionError);
  CHECK_THROWS_AS(SpaceDescriptor::power(SpaceDescriptor::lp(2), 0, 2).validate(), ConstructionError);
  CHECK_THROWS_AS(SpaceDescriptor::marcinkiewicz(ExplicitWeights{{1, 1, 2}}, 3).validate(), ConstructionError);
  CHECK_THROWS_AS(parse_descriptor("lp("), ParseError);
  CHECK_THROWS_AS(parse_descriptor(R"({"type":"orlicz"})"), ParseError);
  try {
    SpaceDescriptor::lorentz(ExplicitWeights{{1, 1.2}}, 1, 2).validate();
  } catch (const ConstructionError& e) {
    CHECK(std::string(e.what()).find("nonincreasing") != std::string::npos);
  }
}

TEST_CASE("power weights and partial-sum psi") {
  const auto w = weight_values(PowerWeights{1.0}, 3);
  CHECK(w[2] == doctest::Approx(1.0 / 3));
  const auto psi = psi_values(PowerWeights{1.0}, 3);
  CHECK(psi[2] == doctest::Approx(1 + 0.5 + 1.0 / 3));
  CHECK(conjugate_exponent(1) == kInf);
  CHECK(conjugate_exponent(kInf) == 1);
  CHECK(conjugate_exponent(3) == doctest::Approx(1.5));
}
