#include "curvelim/frame/registry.hpp"

#include <sstream>

#include "curvelim/exactpoly/errors.hpp"
#include "curvelim/exactpoly/parse.hpp"
#include "curvelim/frame/codazzi.hpp"
#include "curvelim/frame/symbols.hpp"

namespace curvelim::frame {

extern const char* const kEmbeddedRegistry;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto bar = line.find('|', start);
    out.push_back(trim(line.substr(start, bar == std::string::npos ? std::string::npos : bar - start)));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

const std::vector<std::string> kRoles = {"constraint", "curvature-component", "biharmonic",
                                         "codazzi",    "nondegeneracy",       "definition"};

}  // namespace

std::string to_string(EntryKind k) {
  switch (k) {
    case EntryKind::kAxiom: return "axiom";
    case EntryKind::kTarget: return "target";
    case EntryKind::kSaturation: return "saturation";
  }
  return "?";
}

EquationRegistry EquationRegistry::parse(const std::string& text, const VarTablePtr& table) {
  EquationRegistry reg(table);
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::map<std::string, std::vector<std::string>> pending_notes;
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("registry line " + std::to_string(lineno) + ": " + msg, lineno, 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto fields = split_fields(t);
    auto head = words(fields[0]);
    if (head.empty()) fail("missing entry kind");
    const std::string& kind = head[0];
    if (kind == "NOTE") {
      if (head.size() != 2 || fields.size() != 2) fail("NOTE needs '<id> | <text>'");
      pending_notes[head[1]].push_back(fields[1]);
      continue;
    }
    if (kind == "ALIAS") {
      if (head.size() != 2 || fields.size() != 5) fail("ALIAS needs 5 fields");
      if (!aliases(table).count(fields[1])) fail("'" + fields[1] + "' is not a known alias");
      continue;
    }
    RegistryEntry e;
    if (kind == "AXIOM") {
      if (head.size() != 3) fail("AXIOM needs '<id> <role>'");
      e.kind = EntryKind::kAxiom;
      e.role = head[2];
      bool known = false;
      for (const auto& r : kRoles) known = known || r == e.role;
      if (!known) fail("unknown role '" + e.role + "'");
    } else if (kind == "TARGET" || kind == "SATURATION") {
      if (head.size() != 2) fail(kind + " needs '<id>'");
      e.kind = kind == "TARGET" ? EntryKind::kTarget : EntryKind::kSaturation;
      if (e.kind == EntryKind::kSaturation) e.role = "nondegeneracy";
    } else {
      fail("unknown entry kind '" + kind + "'");
    }
    if (fields.size() != 4) fail("expected '<head> | <polynomial> | <citation> | <quote>'");
    e.id = head[1];
    e.text = fields[1];
    e.citation = fields[2];
    e.quote = fields[3];
    if (e.citation.empty() || e.quote.empty()) fail("citation and quote must be nonempty");
    if (reg.find(e.id)) fail("duplicate id '" + e.id + "'");
    try {
      e.poly = parse_frame_poly(e.text, table);
    } catch (const ParseError& err) {
      fail("'" + e.id + "': " + err.what());
    } catch (const StructuralError& err) {
      fail("'" + e.id + "': " + err.what());
    }
    if (e.poly.is_zero()) fail("'" + e.id + "' is the zero polynomial");
    reg.put(std::move(e));
  }
  for (auto& [id, notes] : pending_notes) {
    if (id.rfind("eq_2_6", 0) == 0) continue;  // encoded by substitution, no entry
    if (!reg.find(id)) throw ParseError("registry note for unknown id '" + id + "'", 0, 1);
    for (auto& n : notes) reg.add_note(id, n);
  }
  return reg;
}

const std::string& embedded_registry_text() {
  static const std::string text(kEmbeddedRegistry);
  return text;
}

const EquationRegistry& EquationRegistry::frame() {
  static const EquationRegistry reg = [] {
    EquationRegistry r = parse(embedded_registry_text(), load_frame_symbols());
    for (const auto& d : definitions()) {
      Relation rel = definition_relation(d);
      RegistryEntry e;
      e.id = rel.id;
      e.kind = EntryKind::kAxiom;
      e.role = "definition";
      e.text = to_string(rel.poly);
      e.poly = rel.poly;
      e.citation = rel.citation;
      e.quote = rel.quote;
      r.put(std::move(e));
    }
    return r;
  }();
  return reg;
}

const EquationRegistry& EquationRegistry::codazzi() {
  static const EquationRegistry reg = build_codazzi_registry();
  return reg;
}

const RegistryEntry* EquationRegistry::find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

const RegistryEntry& EquationRegistry::at(const std::string& id) const {
  const RegistryEntry* e = find(id);
  if (!e) throw StructuralError("unknown equation id '" + id + "'");
  return *e;
}

std::vector<const RegistryEntry*> EquationRegistry::family(const std::string& prefix) const {
  std::vector<const RegistryEntry*> out;
  for (const auto& e : entries_) {
    if (e.id == prefix || e.id.rfind(prefix + "_", 0) == 0) out.push_back(&e);
  }
  return out;
}

void EquationRegistry::put(RegistryEntry e) {
  if (!e.poly.vars()->same_as(*table_)) throw StructuralError("registry entry '" + e.id + "' over a foreign table");
  auto it = index_.find(e.id);
  if (it != index_.end()) {
    entries_[it->second] = std::move(e);
    return;
  }
  index_.emplace(e.id, entries_.size());
  entries_.push_back(std::move(e));
}

void EquationRegistry::add_note(const std::string& id, const std::string& note) {
  auto it = index_.find(id);
  if (it == index_.end()) throw StructuralError("unknown equation id '" + id + "'");
  entries_[it->second].notes.push_back(note);
}

std::vector<Axiom> EquationRegistry::axioms() const {
  std::vector<Axiom> out;
  for (const auto& e : entries_) {
    if (e.kind == EntryKind::kAxiom) out.push_back({e.id, e.poly, e.citation, e.quote, e.role});
  }
  return out;
}

std::vector<NamedSaturation> EquationRegistry::saturations() const {
  std::vector<NamedSaturation> out;
  for (const auto& e : entries_) {
    if (e.kind == EntryKind::kSaturation) out.push_back({e.id, {e.poly, e.quote}, e.citation});
  }
  return out;
}

std::vector<Axiom> load_frame_axioms() { return EquationRegistry::frame().axioms(); }

std::vector<NamedSaturation> frame_saturations() { return EquationRegistry::frame().saturations(); }

}  // namespace curvelim::frame
