#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fdslib/common.hpp"

namespace fdslib {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// Names of the acceptance criteria, in run order.
const std::vector<std::string>& acceptance_suite_names();

// Run one named suite or "all". max_n throttles the exhaustive graph sweeps
// (4 is the acceptance setting). One line per criterion goes to `log`.
std::vector<CriterionResult> run_acceptance(const std::string& suite,
                                            int max_n, std::ostream& log,
                                            const Budget& budget = default_budget());

}  // namespace fdslib
