#pragma once

#include <string>
#include <vector>

namespace curvelim::frame {

struct ConsistencyCheck {
  std::string name;
  bool holds = false;
  std::string detail;  // residual when the check fails
};

// Rule tables against the registry: jet axioms agree with the rules, D1 D1(lam_i) matches the
// second-order targets, D1 of the trace constraint is the e_1 target, and the permuted tables
// agree with the index-symmetric axioms.
std::vector<ConsistencyCheck> check_rule_consistency();

}  // namespace curvelim::frame
