#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include "jetseq/checks.hpp"

using namespace jetseq;

namespace {

bool stretch_enabled() {
  const char* v = std::getenv("JETSEQ_SKIP_STRETCH");
  return !(v != nullptr && std::string(v) != "0" && std::string(v) != "");
}

void print_result(const CheckResult& r) {
  std::printf("criterion %2d [%s]: %s\n", r.id, r.name.c_str(), r.passed ? "PASS" : "FAIL");
  std::printf("    %s\n", r.detail.c_str());
  std::fflush(stdout);
}

}  // namespace

TEST_CASE("acceptance checks") {
  CheckOptions opts;
  opts.include_stretch = stretch_enabled();
  for (int id = 1; id <= 10; ++id) {
    auto r = run_check(id, opts);
    print_result(r);
    CAPTURE(r.id);
    CAPTURE(r.name);
    CAPTURE(r.detail);
    CHECK(r.passed);
  }
}
