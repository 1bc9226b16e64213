#include "curvelim/frame/consistency.hpp"

#include "curvelim/frame/derivation.hpp"
#include "curvelim/frame/registry.hpp"

namespace curvelim::frame {
namespace {

ConsistencyCheck zero_check(const std::string& name, const Polynomial& residual) {
  return {name, residual.is_zero(), residual.is_zero() ? "" : to_string(residual)};
}

}  // namespace

std::vector<ConsistencyCheck> check_rule_consistency() {
  const auto& reg = EquationRegistry::frame();
  std::vector<ConsistencyCheck> out;

  // Axioms that only state a first- or second-order jet value.
  for (const char* id : {"eq_3_17", "eq_3_18", "eq_3_19", "eq_3_20", "eq_3_21", "eq_3_22",
                         "eq_3_23", "eq_3_27", "eq_3_28"}) {
    out.push_back(zero_check(std::string("rules agree with ") + id, normalize_jets(reg.at(id).poly)));
  }
  for (const char* id : {"eq_3_50", "eq_3_51", "eq_3_52"}) {
    out.push_back(zero_check(std::string("D1 D1 agrees with ") + id, normalize_jets(reg.at(id).poly)));
  }
  out.push_back(zero_check("D1(eq_3_11) + eq_3_30",
                           apply_derivation(d1_table(), reg.at("eq_3_11").poly).image + reg.at("eq_3_30").poly));
  const Polynomial d2 = apply_derivation(d2_table(), reg.at("eq_3_11").poly).image;
  out.push_back(zero_check("D2(eq_3_11)", d2));
  for (const char* t : {"D3", "D4"}) {
    out.push_back(zero_check(std::string(t) + "(eq_3_11)",
                             apply_derivation(table_for(t), reg.at("eq_3_11").poly).image));
  }
  const auto p23 = IndexPermutation::transposition(2, 3);
  out.push_back(zero_check("(23) fixes eq_3_24", p23.apply(reg.at("eq_3_24").poly) - reg.at("eq_3_24").poly));
  return out;
}

}  // namespace curvelim::frame
