#pragma once

#include <string>
#include <vector>

#include "curvelim/exactpoly/polynomial.hpp"

namespace curvelim::pipeline {

struct MatchResult {
  std::string status;  // matched | matched-up-to-content | mismatch
  Scalar content;      // derived == content * printed when not a mismatch
  // Mismatch only: signed terms of derived - r * printed, r the most common coefficient ratio.
  std::vector<std::string> diff;
  Scalar ratio;
};

// Compares exactly, then up to a nonzero rational constant.
MatchResult match_polynomials(const Polynomial& derived, const Polynomial& printed);

// One "+c*m" string per term, in the polynomial's term order.
std::vector<std::string> signed_terms(const Polynomial& p);

}  // namespace curvelim::pipeline
