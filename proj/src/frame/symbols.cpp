#include "curvelim/frame/symbols.hpp"

#include <cctype>

#include "curvelim/exactpoly/errors.hpp"
#include "curvelim/exactpoly/parse.hpp"

namespace curvelim::frame {

const std::vector<SymbolInfo>& base_symbols() {
  static const std::vector<SymbolInfo> symbols = {
      {"H", "mean curvature"},
      {"R", "scalar curvature (constant)"},
      {"c", "ambient curvature constant"},
      {"lam2", "principal curvature lambda_2"},
      {"lam3", "principal curvature lambda_3"},
      {"lam4", "principal curvature lambda_4"},
      {"u2", "omega_22^1"},
      {"u3", "omega_33^1"},
      {"u4", "omega_44^1"},
      {"v3", "omega_33^2"},
      {"v4", "omega_44^2"},
      {"w243", "omega_24^3"},
      {"w342", "omega_34^2"},
      {"w432", "omega_43^2"},
      {"h1", "e_1(H)"},
      {"K", "lambda_2 lambda_3 lambda_4"},
      {"s", "omega_22^1 + omega_33^1 + omega_44^1"},
      {"B", "squared norm of the shape operator"},
      {"v23", "omega_22^3"},
      {"v43", "omega_44^3"},
      {"v24", "omega_22^4"},
      {"v34", "omega_33^4"},
      {"d11_H_2", "e_1 e_1(H)"},
      {"d11_lam2_2", "e_1 e_1(lambda_2)"},
      {"d11_lam3_2", "e_1 e_1(lambda_3)"},
      {"d11_lam4_2", "e_1 e_1(lambda_4)"},
  };
  return symbols;
}

const std::vector<std::string>& jet_bases() {
  static const std::vector<std::string> bases = {
      "H",   "lam2", "lam3", "lam4", "u2",   "u3",   "u4", "v3", "v4", "v23",
      "v43", "v24",  "v34",  "w243", "w342", "w432", "h1", "K",  "s",  "B"};
  return bases;
}

std::string jet_name(const JetName& j) {
  return "d" + j.ops + "_" + j.base + "_" + std::to_string(j.order);
}

std::optional<JetName> parse_jet(const std::string& name) {
  if (name.size() < 5 || name[0] != 'd') return std::nullopt;
  const auto first = name.find('_');
  const auto last = name.rfind('_');
  if (first == std::string::npos || first == last || first < 2) return std::nullopt;
  JetName j;
  j.ops = name.substr(1, first - 1);
  j.base = name.substr(first + 1, last - first - 1);
  const std::string ord = name.substr(last + 1);
  if (j.base.empty() || ord.size() != 1 || !std::isdigit(static_cast<unsigned char>(ord[0]))) {
    return std::nullopt;
  }
  for (char ch : j.ops) {
    if (ch < '1' || ch > '4') return std::nullopt;
  }
  j.order = static_cast<unsigned>(ord[0] - '0');
  if (j.order != j.ops.size()) return std::nullopt;
  return j;
}

VarTablePtr load_frame_symbols() {
  static const VarTablePtr table = [] {
    std::vector<std::string> names;
    for (const auto& s : base_symbols()) names.push_back(s.name);
    for (int k = 1; k <= 4; ++k) {
      for (const auto& b : jet_bases()) {
        if (k == 1 && b == "H") continue;  // d1_H_1 is h1
        names.push_back(jet_name({std::to_string(k), b, 1}));
      }
    }
    return VarTable::make(std::move(names));
  }();
  return table;
}

const std::vector<Definition>& definitions() {
  static const std::vector<Definition> defs = [] {
    auto t = load_frame_symbols();
    return std::vector<Definition>{
        {"K", "def_K", parse_polynomial("lam2*lam3*lam4", t)},
        {"s", "def_s", parse_polynomial("u2 + u3 + u4", t)},
        {"B", "def_B", parse_polynomial("4*H^2 + lam2^2 + lam3^2 + lam4^2", t)},
    };
  }();
  return defs;
}

Relation definition_relation(const Definition& d) {
  const auto& t = d.rhs.vars();
  Relation r;
  r.id = d.id;
  r.poly = Polynomial::variable(t, d.symbol) - d.rhs;
  if (d.symbol == "K") {
    r.citation = "Theorem 3.3";
    r.quote = "where K=\\lambda_2\\lambda_3\\lambda_4";
  } else if (d.symbol == "s") {
    r.citation = "Lemma 3.2";
    r.quote = "\\omega_{22}^1+\\omega_{33}^1+\\omega_{44}^1";
  } else {
    r.citation = "shape operator";
    r.quote = "B=\\sum_{i=1}^4\\lambda_i^2=4H^2+\\lambda_2^2+\\lambda_3^2+\\lambda_4^2";
  }
  return r;
}

std::map<std::string, Polynomial> aliases(const VarTablePtr& table) {
  std::map<std::string, Polynomial> out;
  auto var = [&](const std::string& n) { return Polynomial::variable(table, n); };
  const Polynomial two = Polynomial::constant(table, 2);
  out.emplace("lam1", -(two * var("H")));
  out.emplace("d1_H_1", var("h1"));
  out.emplace("d1_lam1_1", -(two * var("h1")));
  for (int k = 2; k <= 4; ++k) {
    const std::string h = jet_name({std::to_string(k), "H", 1});
    if (table->contains(h)) out.emplace(jet_name({std::to_string(k), "lam1", 1}), -(two * var(h)));
  }
  if (table->contains("d11_H_2")) out.emplace("d11_lam1_2", -(two * var("d11_H_2")));
  return out;
}

Polynomial parse_frame_poly(const std::string& text, const VarTablePtr& table) {
  const auto ids = collect_identifiers(text);
  const auto alias = aliases(table);
  std::vector<std::string> extra;
  for (const auto& id : ids) {
    if (table->contains(id)) continue;
    if (!alias.count(id)) throw StructuralError("unknown symbol '" + id + "' in '" + text + "'");
    extra.push_back(id);
  }
  if (extra.empty()) return parse_polynomial(text, table);

  std::vector<std::string> names = table->names();
  names.insert(names.end(), extra.begin(), extra.end());
  auto wide = VarTable::make(names);
  Polynomial p = parse_polynomial(text, wide);
  for (const auto& id : extra) p = substitute(p, id, alias.at(id).in_table(wide));
  return p.in_table(table);
}

Polynomial expand_definitions(const Polynomial& p) {
  Polynomial out = p;
  for (const auto& d : definitions()) {
    if (!p.vars()->contains(d.symbol)) continue;
    out = substitute(out, d.symbol, d.rhs.in_table(p.vars(), p.order()));
  }
  return out;
}

}  // namespace curvelim::frame
