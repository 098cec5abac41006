#pragma once

// Named verification suites, one per acceptance criterion. The CLI `verify`
// subcommand and the acceptance test binary both run these.

#include <string>
#include <vector>

namespace popsort {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct SuiteOptions {
  int max_n = -1;  // -1: suite default
  bool force = false;
  int workers = 1;
};

// Canonical suite names in criterion order: fixtures, sortability, words,
// preimages, counting, classes, compositions, parallel, discovery, psbw,
// conjecture. "fibonacci" is an alias for sortability; "all" runs the lot.
std::vector<std::string> suite_names();

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts = {});

// Renders one line per check, "PASS"/"FAIL" prefixed.
std::string format_suite(const SuiteResult& r);

}  // namespace popsort
