#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace koethe {

struct SuiteReport {
  std::string name;
  bool passed = false;
  /// Largest observed deviation, in the unit the tolerance is stated in.
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::size_t cases = 0;
  double seconds = 0.0;
  double time_limit = 0.0;
  std::string detail;
};

struct VerifyOptions {
  /// Largest truncation dimension; 0 keeps each suite's default range.
  std::size_t N = 0;
  std::uint64_t seed = 0;
};

/// Suite names in acceptance order.
const std::vector<std::string>& suite_names();

/// Runs one suite. Throws PreconditionError for an unknown name.
/// A suite passes when every deviation is within tolerance and the runtime is within its limit.
SuiteReport run_suite(std::string_view name, const VerifyOptions& opts = {});

/// One-line PASS/FAIL summary with the acceptance index of the suite.
std::string summary_line(const SuiteReport& r);

/// `all` runs every suite; any other name runs that suite alone.
std::vector<SuiteReport> run_suites(std::string_view name, const VerifyOptions& opts = {});

}  // namespace koethe
