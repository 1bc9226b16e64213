#pragma once

#include <string>
#include <vector>

#include "curvelim/exactpoly/polynomial.hpp"

namespace curvelim::pipeline {

struct EndgameTraceEntry {
  std::string mode;  // "sylvester" or "gradual"
  unsigned degree = 0;  // degree in the eliminated variable
  std::size_t terms = 0;
};

struct EndgameResult {
  Polynomial resultant;   // Sylvester determinant
  Polynomial eliminant;   // primitive part of the resultant
  Polynomial gradual;     // last element of the pseudo-remainder chain, primitive
  bool gradual_agrees = false;  // one of eliminant, gradual divides the other
  std::vector<EndgameTraceEntry> trace;
};

// Eliminates var from P and Q. Throws DomainError when either has degree 0 in var.
EndgameResult endgame_eliminate(const Polynomial& p, const Polynomial& q, std::size_t var);

}  // namespace curvelim::pipeline
