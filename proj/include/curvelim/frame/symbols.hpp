#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curvelim/cert/relation.hpp"

namespace curvelim::frame {

struct SymbolInfo {
  std::string name;
  std::string meaning;
};

// Base symbols in table order, with their meaning in the moving frame.
const std::vector<SymbolInfo>& base_symbols();

// Base symbols that may receive a minted first-order jet d{k}_{x}_1.
const std::vector<std::string>& jet_bases();

// The fixed pipeline table: base symbols, second-order jets, then the jet pool.
// Every call returns the same instance.
VarTablePtr load_frame_symbols();

// Jet symbol names: d{ops}_{base}_{order}, ops = frame indices applied, innermost last.
struct JetName {
  std::string ops;
  std::string base;
  unsigned order = 0;
};
std::string jet_name(const JetName& j);
std::optional<JetName> parse_jet(const std::string& name);

// K = lam2*lam3*lam4, s = u2+u3+u4, B = 4H^2 + lam2^2 + lam3^2 + lam4^2.
struct Definition {
  std::string symbol;
  std::string id;
  Polynomial rhs;
};
const std::vector<Definition>& definitions();
Relation definition_relation(const Definition& d);

// Names accepted in equation text but never stored: lam1 -> -2H and the jets of lam1 and H
// that reduce to h1 or to other jets.
std::map<std::string, Polynomial> aliases(const VarTablePtr& table);

// Parses equation text over `table`, resolving aliases; throws ParseError / StructuralError.
Polynomial parse_frame_poly(const std::string& text, const VarTablePtr& table);

// Replaces K, s, B by their definitions.
Polynomial expand_definitions(const Polynomial& p);

}  // namespace curvelim::frame
