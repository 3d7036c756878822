#pragma once

// Batch self-checks behind `affhurc verify`: each check compares a closed
// formula or fast algorithm against a slower independent computation.

#include <cstdint>
#include <string>
#include <vector>

#include "affhur/quasicox.hpp"

namespace affhur {

struct CheckResult {
  std::string suite;
  std::string group;
  std::string name;
  bool passed = false;
  std::string detail;  // counterexample or summary
  double seconds = 0;
};

struct VerifyOptions {
  std::uint64_t seed = 20240611;
  QuasiLimits limits;
  std::size_t pair_cap = 60;  // tuples per element in main-theorem
};

const std::vector<std::string>& suite_names();

// Throws ParseError for an unknown suite or group.
std::vector<CheckResult> run_suite(const std::string& suite, const std::vector<std::string>& groups,
                                   const VerifyOptions& options);

}  // namespace affhur
