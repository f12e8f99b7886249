#pragma once

// Acceptance criteria 1-10, shared by the standalone runner and `toral verify`.

#include <cstdint>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace toral::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  std::uint64_t seed = 0;
  std::string golden_dir;  // defaults to the source tree's tests/golden
  std::set<int> only;      // empty = all
};

/// Runs the selected criteria, printing one PASS/FAIL line per criterion.
std::vector<CriterionResult> run(const Options& options, std::ostream& out);

std::string default_golden_dir();

}  // namespace toral::acceptance
