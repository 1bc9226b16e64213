#include "curvelim/frame/derivation.hpp"

#include <array>

#include "curvelim/exactpoly/errors.hpp"
#include "curvelim/frame/symbols.hpp"

namespace curvelim::frame {

RuleTable::RuleTable(std::string name, unsigned op, VarTablePtr vars)
    : name_(std::move(name)), op_(op), vars_(std::move(vars)), rules_(vars_->size()) {}

void RuleTable::set(const std::string& var, Rule r) {
  if (r.kind == Rule::Kind::kImage) {
    if (!r.image.vars()->same_as(*vars_)) throw StructuralError("rule image over a foreign table");
    if (r.image.is_zero()) r.kind = Rule::Kind::kZero;
  }
  rules_[vars_->require(var)] = std::move(r);
}

const Rule& RuleTable::rule(std::size_t var) const {
  const auto& r = rules_.at(var);
  return r ? *r : fresh_;
}

std::string RuleTable::fresh_symbol(std::size_t var) const {
  const std::string& x = vars_->name(var);
  std::string name;
  if (auto j = parse_jet(x)) {
    name = jet_name({std::to_string(op_) + j->ops, j->base, j->order + 1});
  } else {
    name = jet_name({std::to_string(op_), x, 1});
  }
  if (!vars_->contains(name)) {
    throw StructuralError(name_ + "(" + x + ") is undetermined and '" + name +
                          "' is not in the symbol table");
  }
  return name;
}

DerivationResult apply_derivation(const RuleTable& table, const Polynomial& p) {
  if (!p.vars()->same_as(*table.vars())) {
    throw StructuralError("apply_derivation: polynomial is not over the rule table's symbols");
  }
  DerivationResult out{Polynomial(p.vars(), p.order()), {}};
  std::vector<Polynomial> parts;
  for (std::size_t v = 0; v < p.nvars(); ++v) {
    if (!p.uses(v)) continue;
    const Rule& r = table.rule(v);
    if (r.kind == Rule::Kind::kZero) continue;
    Polynomial d = partial(p, v);
    if (r.kind == Rule::Kind::kImage) {
      parts.push_back(d * r.image.with_order(p.order()));
    } else {
      const std::string sym = table.fresh_symbol(v);
      out.fresh.insert(sym);
      parts.push_back(d * Polynomial::variable(p.vars(), sym, p.order()));
    }
  }
  out.image = add_all(std::move(parts), out.image);
  return out;
}

namespace {

void set_text(RuleTable& t, const std::string& var, const std::string& text, const std::string& src) {
  t.set(var, Rule::of(parse_frame_poly(text, t.vars()), src));
}

// K, s and B differentiate through their definitions.
void set_defined(RuleTable& t) {
  for (const auto& d : definitions()) {
    auto img = apply_derivation(t, d.rhs);
    Rule r = Rule::of(img.image, "Leibniz rule on " + d.id);
    t.set(d.symbol, std::move(r));
  }
}

}  // namespace

const RuleTable& d1_table() {
  static const RuleTable table = [] {
    RuleTable t("D1", 1, load_frame_symbols());
    t.set("R", Rule::zero("constant scalar curvature"));
    t.set("c", Rule::zero("constant"));
    set_text(t, "H", "h1", "definition of h1");
    for (int i = 2; i <= 4; ++i) {
      const std::string l = "lam" + std::to_string(i), u = "u" + std::to_string(i);
      set_text(t, l, "(" + l + " - lam1)*" + u, "eq (3.7) with eq (3.6)");
      set_text(t, u, u + "^2 + lam1*" + l + " + c", "eqs (3.17)-(3.19)");
    }
    set_text(t, "v3", "u3*v3", "eq (3.20)");
    set_text(t, "v4", "u4*v4", "eq (3.21)");
    set_text(t, "v23", "u2*v23", "eq (3.20) under (23)");
    set_text(t, "v43", "u4*v43", "eq (3.21) under (23)");
    set_text(t, "v24", "u2*v24", "eq (3.21) under (24)");
    set_text(t, "v34", "u3*v34", "eq (3.20) under (24)");
    set_text(t, "h1", "(u2 + u3 + u4)*h1 + H*(8*c + 16*H^2 - R)", "eq (3.27)");
    set_defined(t);
    return t;
  }();
  return table;
}

const RuleTable& d2_table() {
  static const RuleTable table = [] {
    RuleTable t("D2", 2, load_frame_symbols());
    t.set("R", Rule::zero("constant scalar curvature"));
    t.set("c", Rule::zero("constant"));
    t.set("H", Rule::zero("eq (3.4)"));
    t.set("h1", Rule::zero("eq (3.28)"));
    set_text(t, "lam3", "-(lam2 - lam3)*v3", "eq (3.7) with eq (3.6)");
    set_text(t, "lam4", "-(lam2 - lam4)*v4", "eq (3.7) with eq (3.6)");
    set_text(t, "lam2", "(lam2 - lam3)*v3 + (lam2 - lam4)*v4", "eq (3.11)");
    set_text(t, "u3", "(u3 - u2)*v3", "eq (3.22)");
    set_text(t, "u4", "(u4 - u2)*v4", "eq (3.23)");
    set_defined(t);
    return t;
  }();
  return table;
}

IndexPermutation::IndexPermutation(std::array<int, 5> images) : images_(images) {
  if (images_[1] != 1) throw StructuralError("index permutation must fix 1");
  std::array<bool, 5> seen{};
  for (int i = 1; i <= 4; ++i) {
    const int v = images_[static_cast<std::size_t>(i)];
    if (v < 1 || v > 4 || seen[static_cast<std::size_t>(v)]) {
      throw StructuralError("not a permutation of 1..4");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

IndexPermutation IndexPermutation::identity() { return IndexPermutation({0, 1, 2, 3, 4}); }

IndexPermutation IndexPermutation::transposition(int a, int b) {
  std::array<int, 5> im{0, 1, 2, 3, 4};
  std::swap(im.at(static_cast<std::size_t>(a)), im.at(static_cast<std::size_t>(b)));
  return IndexPermutation(im);
}

std::string IndexPermutation::name() const {
  if (is_identity()) return "()";
  std::string out;
  std::array<bool, 5> done{};
  for (int i = 2; i <= 4; ++i) {
    if (done[static_cast<std::size_t>(i)] || (*this)(i) == i) continue;
    out += "(";
    for (int j = i; !done[static_cast<std::size_t>(j)]; j = (*this)(j)) {
      done[static_cast<std::size_t>(j)] = true;
      out += std::to_string(j);
    }
    out += ")";
  }
  return out;
}

bool IndexPermutation::is_identity() const {
  for (int i = 1; i <= 4; ++i) {
    if ((*this)(i) != i) return false;
  }
  return true;
}

namespace {

int digit(char ch) { return ch - '0'; }
char to_digit(int i) { return static_cast<char>('0' + i); }

// omega_ii^j for distinct i, j in 2..4.
const std::map<std::pair<int, int>, std::string>& v_names() {
  static const std::map<std::pair<int, int>, std::string> m = {
      {{3, 2}, "v3"}, {{4, 2}, "v4"}, {{2, 3}, "v23"}, {{4, 3}, "v43"}, {{2, 4}, "v24"}, {{3, 4}, "v34"}};
  return m;
}

}  // namespace

std::pair<std::string, int> IndexPermutation::map_symbol(const std::string& symbol) const {
  const auto& pi = *this;
  if (auto j = parse_jet(symbol)) {
    auto [base, sign] = map_symbol(j->base);
    std::string ops = j->ops;
    for (char& ch : ops) ch = to_digit(pi(digit(ch)));
    return {jet_name({ops, base, j->order}), sign};
  }
  if (symbol.size() == 4 && symbol.rfind("lam", 0) == 0) {
    return {"lam" + std::string(1, to_digit(pi(digit(symbol[3])))), 1};
  }
  if (symbol.size() == 2 && symbol[0] == 'u' && symbol[1] >= '1' && symbol[1] <= '4') {
    return {"u" + std::string(1, to_digit(pi(digit(symbol[1])))), 1};
  }
  for (const auto& [ij, name] : v_names()) {
    if (name == symbol) return {v_names().at({pi(ij.first), pi(ij.second)}), 1};
  }
  if (symbol.size() == 4 && symbol[0] == 'w') {
    const int k = pi(digit(symbol[1])), i = pi(digit(symbol[2])), j = pi(digit(symbol[3]));
    std::string out = "w";
    out += to_digit(k);
    if (i > j) return {out + to_digit(i) + to_digit(j), 1};
    return {out + to_digit(j) + to_digit(i), -1};
  }
  return {symbol, 1};
}

Polynomial IndexPermutation::apply(const Polynomial& p) const {
  const auto& t = p.vars();
  const std::size_t n = p.nvars();
  std::vector<std::size_t> target(n);
  std::vector<int> sign(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto [name, s] = map_symbol(t->name(v));
    auto idx = t->index(name);
    if (!idx) throw StructuralError("permutation " + this->name() + " maps '" + t->name(v) + "' to unknown '" + name + "'");
    target[v] = *idx;
    sign[v] = s;
  }
  std::vector<Exponent> exps(p.size() * n, 0);
  std::vector<Scalar> coeffs;
  coeffs.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Exponent* e = p.exps(i);
    int s = 1;
    for (std::size_t v = 0; v < n; ++v) {
      if (!e[v]) continue;
      exps[i * n + target[v]] = e[v];
      if (sign[v] < 0 && (e[v] & 1)) s = -s;
    }
    coeffs.push_back(s > 0 ? p.coeff(i) : Scalar(-p.coeff(i)));
  }
  return Polynomial::from_terms(t, p.order(), std::move(exps), std::move(coeffs));
}

RuleTable IndexPermutation::apply(const RuleTable& t, const std::string& name) const {
  RuleTable out(name, static_cast<unsigned>((*this)(static_cast<int>(t.op()))), t.vars());
  const auto& vars = t.vars();
  for (std::size_t v = 0; v < vars->size(); ++v) {
    if (!t.has_rule(v)) continue;
    const Rule& r = t.rule(v);
    auto [image_name, s] = map_symbol(vars->name(v));
    if (!vars->contains(image_name)) continue;
    std::string src = r.source.empty() ? "" : r.source + " under " + this->name();
    if (r.kind == Rule::Kind::kImage) {
      Polynomial img = apply(r.image);
      out.set(image_name, Rule::of(s > 0 ? img : -img, src));
    } else {
      Rule c = r;
      c.source = src;
      out.set(image_name, c);
    }
  }
  return out;
}

const RuleTable& d3_table() {
  static const RuleTable t = IndexPermutation::transposition(2, 3).apply(d2_table(), "D3");
  return t;
}

const RuleTable& d4_table() {
  static const RuleTable t = IndexPermutation::transposition(2, 4).apply(d2_table(), "D4");
  return t;
}

const RuleTable& table_for(const std::string& name) {
  if (name == "D1") return d1_table();
  if (name == "D2") return d2_table();
  if (name == "D3") return d3_table();
  if (name == "D4") return d4_table();
  throw StructuralError("unknown rule table '" + name + "'");
}

std::map<std::size_t, Polynomial> jet_images(const Polynomial& p) {
  const auto& t = p.vars();
  std::map<std::size_t, Polynomial> images;
  if (!t->same_as(*load_frame_symbols())) return images;
  for (std::size_t v = 0; v < t->size(); ++v) {
    if (!p.uses(v)) continue;
    auto j = parse_jet(t->name(v));
    if (!j) continue;
    auto base = t->index(j->base);
    if (!base) continue;
    // Apply the operators innermost first; stop at the first undetermined one.
    Polynomial cur = Polynomial::variable(t, *base, p.order());
    bool determined = true;
    for (auto it = j->ops.rbegin(); it != j->ops.rend() && determined; ++it) {
      const RuleTable& rt = table_for(std::string("D") + *it);
      auto r = apply_derivation(rt, cur);
      if (!r.fresh.empty()) determined = false;
      cur = r.image;
    }
    if (determined) images.emplace(v, cur);
  }
  return images;
}

Polynomial normalize_jets(const Polynomial& p) {
  auto images = jet_images(p);
  return images.empty() ? p : substitute_all(p, images);
}

}  // namespace curvelim::frame
