#pragma once

#include <string>
#include <vector>

namespace wavebem {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // empty when passed
};

// Full invariant suite over all modules; the seed drives the randomized
// property checks. Deterministic for a fixed seed.
std::vector<CheckResult> run_verification(unsigned seed);

}  // namespace wavebem
