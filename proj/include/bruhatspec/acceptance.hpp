#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bruhatspec::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double seconds = 0.0;
  /// Wall-clock limit in seconds; 0 when the criterion has none.
  double limit = 0.0;
  std::string detail;
};

/// Runs all twelve criteria in order. Every criterion is attempted even if an
/// earlier one fails.
std::vector<CriterionResult> run_all();

/// "criterion 3 PASS  <title>: <detail> [0.012 s, limit 5 s]"
std::string format(const CriterionResult& r);

/// Prints one line per criterion and a summary; returns 0 iff all pass.
int report(std::ostream& out);

}  // namespace bruhatspec::acceptance
