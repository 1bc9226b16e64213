#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "curvelim/exactpoly/polynomial.hpp"

namespace curvelim::frame {

struct Rule {
  enum class Kind { kImage, kFresh, kZero };
  Kind kind = Kind::kZero;
  Polynomial image;  // kImage only
  std::string source;  // citation of the rule

  static Rule zero(std::string source = {}) { return {Kind::kZero, {}, std::move(source)}; }
  static Rule fresh() { return {Kind::kFresh, {}, "undetermined"}; }
  static Rule of(Polynomial p, std::string source = {}) {
    return {Kind::kImage, std::move(p), std::move(source)};
  }
};

// A derivation of the polynomial ring given by its values on the variables.
class RuleTable {
 public:
  // op is the frame index k of e_k; minted symbols are named d{k}_{x}_1.
  RuleTable(std::string name, unsigned op, VarTablePtr vars);

  const std::string& name() const { return name_; }
  unsigned op() const { return op_; }
  const VarTablePtr& vars() const { return vars_; }

  void set(const std::string& var, Rule r);
  // Variables without an explicit rule are FRESH.
  const Rule& rule(std::size_t var) const;
  bool has_rule(std::size_t var) const { return rules_[var].has_value(); }
  // Name of the symbol minted for a FRESH variable; StructuralError if the table lacks it.
  std::string fresh_symbol(std::size_t var) const;

 private:
  std::string name_;
  unsigned op_;
  VarTablePtr vars_;
  std::vector<std::optional<Rule>> rules_;
  Rule fresh_ = Rule::fresh();
};

struct DerivationResult {
  Polynomial image;
  std::set<std::string> fresh;  // minted symbols with nonzero coefficient
};

// Leibniz extension: sum over variables x of dp/dx * D(x).
DerivationResult apply_derivation(const RuleTable& table, const Polynomial& p);

// e_1 and e_2 over load_frame_symbols().
const RuleTable& d1_table();
const RuleTable& d2_table();

// Signed relabelling of frame indices 2..4 (index 1 fixed), acting on symbol names.
class IndexPermutation {
 public:
  // images[i] = pi(i) for i = 1..4; images[1] must be 1.
  explicit IndexPermutation(std::array<int, 5> images);
  static IndexPermutation identity();
  static IndexPermutation transposition(int a, int b);

  std::string name() const;
  int operator()(int i) const { return images_.at(static_cast<std::size_t>(i)); }
  bool is_identity() const;

  // Image of a symbol as (name, sign); symbols without indices map to themselves.
  std::pair<std::string, int> map_symbol(const std::string& symbol) const;
  Polynomial apply(const Polynomial& p) const;
  // D' with D'(pi x) = pi(D(x)); minted symbols follow the new operator index.
  RuleTable apply(const RuleTable& t, const std::string& name) const;

 private:
  std::array<int, 5> images_;
};

// e_3 and e_4, generated from D2 by the transpositions (23) and (24).
const RuleTable& d3_table();
const RuleTable& d4_table();
const RuleTable& table_for(const std::string& name);

// Jets with a determined value are replaced by the rule images (second order by iterating);
// minted jets and jets of undetermined symbols are kept.
Polynomial normalize_jets(const Polynomial& p);
// The substitutions normalize_jets performs, keyed by variable index.
std::map<std::size_t, Polynomial> jet_images(const Polynomial& p);

}  // namespace curvelim::frame
