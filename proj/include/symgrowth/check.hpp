#pragma once

#include <string>
#include <vector>

namespace symgrowth {

/// One line of a verification report.
struct Check {
  std::string name;
  std::string verdict;  // "pass", "fail", "inconclusive", "no witness found", "not observed"
  std::string witness;
};

inline bool failed(const Check& c) { return c.verdict == "fail"; }

}  // namespace symgrowth
