#include <string>

#include "doctest.h"

#include "cca/verification.hpp"

using namespace cca;

namespace {

const CheckResult* find(const std::vector<CheckResult>& checks, const std::string& name) {
  for (const CheckResult& c : checks) {
    if (c.name == name) {
      return &c;
    }
  }
  return nullptr;
}

}  // namespace

TEST_CASE("the cross-check suite passes on a fresh build") {
  const std::vector<CheckResult> checks = run_verification();
  REQUIRE(checks.size() == 8);
  for (const CheckResult& c : checks) {
    CAPTURE(c.name);
    CAPTURE(c.deviation);
    CHECK(c.pass);
    CHECK(c.deviation <= c.tolerance);
    CHECK_FALSE(c.detail.empty());
  }
  for (const char* expected :
       {"unitarity", "uniform_series_agreement", "modulated_closed_agreement",
        "residue_form_agreement", "sector_vs_full_toy", "single_excitation_equivalence",
        "coherent_closed_form", "heisenberg_perfect_transfer"}) {
    CHECK(find(checks, expected) != nullptr);
  }
}

TEST_CASE("a reversed coupling order is caught by the equivalence check") {
  VerificationOptions options;
  options.corrupt_coupling_order = true;
  const std::vector<CheckResult> checks = run_verification(options);
  const CheckResult* equivalence = find(checks, "single_excitation_equivalence");
  REQUIRE(equivalence != nullptr);
  CHECK_FALSE(equivalence->pass);
  CHECK(equivalence->deviation > 1e-2);
  // The mutation is local to that check.
  const CheckResult* unitarity = find(checks, "unitarity");
  REQUIRE(unitarity != nullptr);
  CHECK(unitarity->pass);
}

TEST_CASE("an impossible tolerance reports measured deviations") {
  VerificationOptions options;
  options.tolerance_override = 1e-15;
  const std::vector<CheckResult> checks = run_verification(options);
  int failures = 0;
  for (const CheckResult& c : checks) {
    CHECK(c.tolerance == doctest::Approx(1e-15));
    CHECK(c.deviation >= 0.0);
    if (!c.pass) {
      ++failures;
    }
  }
  CHECK(failures > 0);
}
