#pragma once

// Fast invariant suites run by `localmass validate`. Each check is
// deterministic (fixed seeds) and sized to finish in a few seconds overall.

#include <string>
#include <vector>

namespace localmass {

struct ValidationCheck {
  std::string name;
  bool passed{false};
  std::string detail;
};

struct ValidationSuite {
  std::string name;
  std::vector<ValidationCheck> checks;
};

std::vector<ValidationSuite> run_validation_suites(unsigned threads = 0);

}  // namespace localmass
