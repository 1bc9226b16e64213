#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "curvelim/exactpoly/polynomial.hpp"

namespace curvelim {

// Grammar (implicit multiplication is rejected):
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*       '/' requires a nonzero constant divisor
//   unary  := ('+' | '-') unary | power
//   power  := atom ('^' integer)?
//   atom   := identifier | integer | '(' expr ')'
Polynomial parse_polynomial(std::string_view text, const VarTablePtr& vars,
                            const MonomialOrder& order = MonomialOrder::grevlex());

// Identifiers in order of first appearance.
std::vector<std::string> collect_identifiers(std::string_view text);

// Builds a table from the identifiers of all texts (first-appearance order) and parses each.
std::vector<Polynomial> parse_with_fresh_table(const std::vector<std::string>& texts,
                                               const MonomialOrder& order = MonomialOrder::grevlex());

}  // namespace curvelim
