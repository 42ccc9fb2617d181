// One line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include "koethe/verify.hpp"

int main(int argc, char** argv) {
  koethe::VerifyOptions opts;
  if (const char* s = std::getenv("KOETHE_SEED")) opts.seed = std::strtoull(s, nullptr, 10);
  const std::string only = argc > 1 ? argv[1] : "all";

  int failures = 0;
  int index = 0;
  for (const auto& name : koethe::suite_names()) {
    ++index;
    if (only != "all" && only != name) continue;
    try {
      const auto r = koethe::run_suite(name, opts);
      std::printf("%s\n", koethe::summary_line(r).c_str());
      if (!r.passed) ++failures;
    } catch (const std::exception& e) {
      std::printf("FAIL  %2d %-20s error: %s\n", index, name.c_str(), e.what());
      ++failures;
    }
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
