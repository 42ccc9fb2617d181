#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "koethe/cli.hpp"
#include "koethe/descriptor.hpp"

using namespace koethe;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "koethe");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json doc(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("cli norm") {
  const auto r = run({"norm", "--space", R"({"type":"lp","p":2,"N":2})", "--x", "3,4"});
  REQUIRE(r.code == 0);
  const auto j = doc(r);
  CHECK(j["value"].get<double>() == 5);
  CHECK(j["kind"] == "exact");
  CHECK(j["seed"] == 0);
  CHECK(j["witness"].size() == 2);
  CHECK(j.contains("diagnostics"));
}

TEST_CASE("cli dual norm of a lorentz space") {
  const auto r = run({"dual-norm", "--space", "lorentz(w=(1,.5,.25),p=1)", "--z", "1,1,1"});
  REQUIRE(r.code == 0);
  CHECK(doc(r)["value"].get<double>() == doctest::Approx(12.0 / 7).epsilon(1e-8));
}

TEST_CASE("cli emitted descriptors re-parse") {
  const auto r = run({"mult-norm", "--domain", "lp(4)", "--target", "lorentz(theta=0.5,p=1)", "--alpha", "1,0.5,0.25"});
  REQUIRE(r.code == 0);
  const auto j = doc(r);
  const auto d = descriptor_from_json(j["spaces"]["target"]);
  CHECK(equivalent(d, SpaceDescriptor::lorentz(PowerWeights{0.5}, 1, 3)));
  CHECK(equivalent(parse_descriptor(j["spaces"]["domain"].dump()), SpaceDescriptor::lp(4, 3)));
}

TEST_CASE("cli output is deterministic") {
  const std::vector<std::string> args = {"diag-norm", "--domain", "lorentz(theta=0.3,p=2)", "--target", "lp(1.5)",
                                         "--n", "2", "--alpha", "0.3,0.8,0.1", "--no-closed-forms", "--seed", "5"};
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(doc(a)["seed"] == 5);
  CHECK(doc(a)["kind"] == "lower_bound");
}

TEST_CASE("cli reals carry 17 significant digits") {
  const auto r = run({"norm", "--space", "lp(2)", "--x", "1,1"});
  CHECK(r.out.find("1.4142135623730951") != std::string::npos);
}

TEST_CASE("cli validation errors exit 2 with a document") {
  auto r = run({"norm", "--space", "lorentz(w=(1,1.2,.5),p=1)", "--x", "1,2,3"});
  CHECK(r.code == 2);
  CHECK(nlohmann::json::parse(r.err)["error"]["type"] == "construction_error");
  r = run({"norm", "--space", "lp(p=2,N=3)", "--x", "1,2"});
  CHECK(r.code == 2);
  CHECK(nlohmann::json::parse(r.err)["error"]["type"] == "dimension_error");
  r = run({"norm", "--space", "lp(2)", "--x", "1,abc"});
  CHECK(r.code == 2);
  r = run({"norm", "--bogus"});
  CHECK(r.code == 2);
  r = run({"frobnicate"});
  CHECK(r.code == 2);
  r = run({"verify", "--suite", "nope"});
  CHECK(r.code == 2);
}

TEST_CASE("cli config document with flag overrides") {
  const std::string cfg = R"({"space":{"type":"lp","p":3},"x":[1,2,2],"optimizer":{"seed":11,"restarts":4}})";
  auto r = run({"norm", "--config", cfg});
  REQUIRE(r.code == 0);
  auto j = doc(r);
  CHECK(j["seed"] == 11);
  CHECK(j["config"]["restarts"] == 4);
  CHECK(j["value"].get<double>() == doctest::Approx(std::cbrt(17.0)));
  r = run({"norm", "--config", cfg, "--seed", "3", "--x", "0,0,2"});
  j = doc(r);
  CHECK(j["seed"] == 3);
  CHECK(j["value"].get<double>() == doctest::Approx(2));
}

TEST_CASE("cli seed from the environment") {
  setenv("KOETHE_SEED", "42", 1);
  const auto r = run({"weak-p", "--domain", "lp(inf)", "--family", "1,0;0,1", "--p", "2"});
  unsetenv("KOETHE_SEED");
  REQUIRE(r.code == 0);
  CHECK(doc(r)["seed"] == 42);
  CHECK(doc(r)["value"].get<double>() == doctest::Approx(1));
}

TEST_CASE("cli csv and plain formats") {
  auto r = run({"integral-norm", "--domain", "lp(1)", "--alpha", "0.2,0.7", "--n", "2", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("command,value,kind", 0) == 0);
  CHECK(r.out.find("integral-norm,0.69999999999999996,exact") != std::string::npos);
  r = run({"summing-estimate", "--index", "lp(1)", "--p", "1", "--n", "1", "--domain", "lp(inf)", "--target", "lp(1)",
           "--alpha", "0.5,0.25", "--m-max", "4", "--format", "plain"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("value    0.75") != std::string::npos);
}

TEST_CASE("cli verify runs a suite") {
  const auto r = run({"verify", "--suite", "convexification", "--seed", "7", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = doc(r);
  CHECK(j["passed"] == true);
  CHECK(j["suites"][0]["name"] == "convexification");
  CHECK(j["suites"][0]["max_deviation"].get<double>() < 1e-10);
}
