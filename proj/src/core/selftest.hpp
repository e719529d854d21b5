#pragma once

#include <string>
#include <vector>

namespace fracheat {

struct SelfTestCase {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Fast invariant checks across all modules (a few seconds in total).
std::vector<SelfTestCase> run_selftest();

}  // namespace fracheat
