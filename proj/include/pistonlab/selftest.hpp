#pragma once

#include <string>
#include <vector>

// Invariant checks across all modules, run by the `selftest` subcommand.

namespace pistonlab::selftest {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<CheckResult> run_all();

}  // namespace pistonlab::selftest
