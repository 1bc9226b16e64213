#include "curvelim/pipeline/script.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "curvelim/exactpoly/errors.hpp"

namespace curvelim::pipeline {
namespace {

struct KindSpec {
  std::vector<std::string> required;  // "a|b" means one of a, b
  std::set<std::string> optional;
  std::string prefix;  // free keys with this prefix
};

const std::map<std::string, KindSpec>& specs() {
  static const std::map<std::string, KindSpec> m = {
      {"assume", {{"ids"}, {}, ""}},
      {"import", {{"stage", "ids"}, {"as"}, ""}},
      {"derive", {{"op", "source|jet"}, {"match"}, ""}},
      {"assert_member", {{"target|poly|family"}, {"using", "sat", "scope", "fresh_cancelled"}, ""}},
      {"eliminate_vars", {{"target", "vars"}, {"using", "sat", "scope"}, ""}},
      {"reduce", {{"source", "by"}, {"order", "within", "match"}, ""}},
      {"prem", {{"source", "by", "var"}, {"match"}, ""}},
      {"divide", {{"source", "by"}, {"match"}, ""}},
      {"resultant", {{"a", "b", "var"}, {"match"}, ""}},
      {"refine", {{"op", "table"}, {"using"}, "map."}},
      {"rule_check", {{"target", "op"}, {}, ""}},
      {"vanishes", {{"op", "vars"}, {"using"}, ""}},
      {"close", {{"sat"}, {"using"}, ""}},
      {"match_printed", {{"derived", "target"}, {}, ""}},
      {"assert_nonzero", {{"source"}, {}, ""}},
      {"annotate", {{"text"}, {}, ""}},
      {"endgame", {{"p", "q", "var"}, {"samples_c", "samples_r"}, ""}},
  };
  return m;
}

const std::map<std::string, KindSpec>& branch_specs() {
  static const std::map<std::string, KindSpec> m = {
      {"case", {{"nonzero", "conclude"}, {}, ""}},
      {"conditional", {{"hypothesis"}, {}, ""}},
  };
  return m;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_ident(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.' || ch == '(' ||
          ch == ')' || ch == '-')) {
      return false;
    }
  }
  return true;
}

class LineParser {
 public:
  LineParser(std::string text, std::size_t line) : text_(std::move(text)), line_(line) {}

  [[noreturn]] void fail(const std::string& msg, const std::string& step = "") const {
    std::string where = "script line " + std::to_string(line_);
    if (!step.empty()) where += " (step '" + step + "')";
    throw ParseError(where + ": " + msg, line_, 1);
  }

  // Splits off " | citation | quote" outside quotes.
  std::vector<std::string> fields() const {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (char ch : text_) {
      if (ch == '"') quoted = !quoted;
      if (ch == '|' && !quoted) {
        out.push_back(trim(cur));
        cur.clear();
        continue;
      }
      cur += ch;
    }
    if (quoted) fail("unterminated quote");
    out.push_back(trim(cur));
    return out;
  }

  // Whitespace-separated words; "..." groups are kept together with quotes removed.
  std::vector<std::string> words(const std::string& head) const {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false, any = false;
    for (char ch : head) {
      if (ch == '"') {
        quoted = !quoted;
        any = true;
        continue;
      }
      if (!quoted && (ch == ' ' || ch == '\t')) {
        if (any) out.push_back(cur);
        cur.clear();
        any = false;
        continue;
      }
      cur += ch;
      any = true;
    }
    if (any) out.push_back(cur);
    return out;
  }

  std::vector<std::pair<std::string, std::string>> key_values(const std::vector<std::string>& w,
                                                              std::size_t from,
                                                              const std::string& step) const {
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t i = from; i < w.size(); ++i) {
      const auto eq = w[i].find('=');
      if (eq == std::string::npos || eq == 0) fail("expected key=value, got '" + w[i] + "'", step);
      std::string key = w[i].substr(0, eq);
      for (const auto& kv : out) {
        if (kv.first == key) fail("duplicate argument '" + key + "'", step);
      }
      out.emplace_back(std::move(key), w[i].substr(eq + 1));
    }
    return out;
  }

  std::size_t line() const { return line_; }

 private:
  std::string text_;
  std::size_t line_;
};

void check_args(const LineParser& lp, const Step& st, const KindSpec& spec) {
  for (const auto& req : spec.required) {
    bool ok = false;
    std::size_t start = 0;
    while (true) {
      const auto bar = req.find('|', start);
      ok = ok || st.has(req.substr(start, bar == std::string::npos ? std::string::npos : bar - start));
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    if (!ok) lp.fail(st.kind + " requires " + req, st.id);
  }
  for (const auto& [k, v] : st.args) {
    bool known = spec.optional.count(k) > 0;
    for (const auto& req : spec.required) {
      std::size_t start = 0;
      while (true) {
        const auto bar = req.find('|', start);
        known = known || req.substr(start, bar == std::string::npos ? std::string::npos : bar - start) == k;
        if (bar == std::string::npos) break;
        start = bar + 1;
      }
    }
    if (!spec.prefix.empty() && k.rfind(spec.prefix, 0) == 0) known = true;
    if (k == "kind") known = true;
    if (!known) lp.fail("unknown argument '" + k + "' for " + st.kind, st.id);
    if (v.empty()) lp.fail("empty value for '" + k + "'", st.id);
  }
}

std::string quote_if_needed(const std::string& v) {
  if (v.find_first_of(" \t") != std::string::npos) return "\"" + v + "\"";
  return v;
}

void print_args(std::ostringstream& out, const std::vector<std::pair<std::string, std::string>>& args) {
  for (const auto& [k, v] : args) out << ' ' << k << '=' << quote_if_needed(v);
}

void print_tail(std::ostringstream& out, const std::string& citation, const std::string& quote) {
  if (!citation.empty() || !quote.empty()) out << " | " << citation;
  if (!quote.empty()) out << " | " << quote;
}

void print_steps(std::ostringstream& out, const std::vector<Step>& steps, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& st : steps) {
    if (st.kind == "branch") {
      out << pad << "BRANCH " << st.id;
      print_args(out, st.args);
      print_tail(out, st.citation, st.quote);
      out << '\n';
      print_steps(out, st.body, indent + 2);
      out << pad << "END\n";
      continue;
    }
    out << pad << "STEP " << st.id << ' ' << st.kind;
    print_args(out, st.args);
    print_tail(out, st.citation, st.quote);
    out << '\n';
  }
}

}  // namespace

bool Step::has(const std::string& key) const {
  return std::any_of(args.begin(), args.end(), [&](const auto& kv) { return kv.first == key; });
}

std::string Step::get(const std::string& key) const {
  for (const auto& [k, v] : args) {
    if (k == key) return v;
  }
  return "";
}

std::vector<std::string> Step::list(const std::string& key) const {
  std::vector<std::string> out;
  const std::string v = get(key);
  if (v.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = v.find(',', start);
    std::string item = trim(v.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> Step::with_prefix(const std::string& prefix) const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [k, v] : args) {
    if (k.rfind(prefix, 0) == 0) out.emplace_back(k.substr(prefix.size()), v);
  }
  return out;
}

std::string Stage::get(const std::string& key) const {
  for (const auto& [k, v] : args) {
    if (k == key) return v;
  }
  return "";
}

const Stage* Script::find_stage(const std::string& name) const {
  for (const auto& s : stages) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const std::vector<std::string>& step_kinds() {
  static const std::vector<std::string> kinds = [] {
    std::vector<std::string> out;
    for (const auto& [k, spec] : specs()) out.push_back(k);
    return out;
  }();
  return kinds;
}

Script parse_script(const std::string& text) {
  Script script;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  bool symbols_seen = false;
  // Open containers: the current stage's step list, then nested branch bodies.
  std::vector<std::vector<Step>*> open;
  std::vector<std::size_t> branch_lines;
  std::set<std::string> stage_ids;
  std::string scope;  // enclosing branch id

  auto add_step = [&](const LineParser& lp, Step st) {
    if (open.empty()) lp.fail("STEP outside a STAGE", st.id);
    const std::string qualified = scope.empty() ? st.id : scope + "/" + st.id;
    if (!stage_ids.insert(qualified).second) lp.fail("duplicate step id '" + st.id + "'", st.id);
    open.back()->push_back(std::move(st));
  };

  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    std::string t = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (t.empty()) continue;
    LineParser lp(t, lineno);
    auto fields = lp.fields();
    auto w = lp.words(fields[0]);
    const std::string& key = w[0];

    if (key == "SYMBOLS") {
      if (symbols_seen) lp.fail("SYMBOLS given twice");
      if (!script.stages.empty() || !script.entries.empty()) lp.fail("SYMBOLS must come first");
      symbols_seen = true;
      if (w.size() == 2 && w[1] == "frame") continue;
      if (w.size() < 2) lp.fail("SYMBOLS needs 'frame' or a list of names");
      std::set<std::string> seen;
      for (std::size_t i = 1; i < w.size(); ++i) {
        if (!seen.insert(w[i]).second) lp.fail("duplicate symbol '" + w[i] + "'");
        script.symbols.push_back(w[i]);
      }
      continue;
    }
    if (key == "AXIOM" || key == "TARGET" || key == "SATURATION") {
      if (!script.stages.empty()) lp.fail(key + " lines must precede the first STAGE");
      ScriptEntry e;
      e.kind = key;
      e.line = lineno;
      const std::size_t need = key == "AXIOM" ? 3 : 2;
      if (w.size() != need) lp.fail(key == "AXIOM" ? "AXIOM needs '<id> <role>'" : key + " needs '<id>'");
      if (fields.size() != 4) lp.fail(key + " needs '| <polynomial> | <citation> | <quote>'");
      e.id = w[1];
      if (key == "AXIOM") e.role = w[2];
      e.text = fields[1];
      e.citation = fields[2];
      e.quote = fields[3];
      if (e.text.empty() || e.citation.empty() || e.quote.empty()) lp.fail("empty field in " + key + " " + e.id);
      script.entries.push_back(std::move(e));
      continue;
    }
    if (key == "STAGE") {
      if (open.size() > 1) lp.fail("STAGE inside an open BRANCH (missing END)");
      if (w.size() < 2 || !is_ident(w[1])) lp.fail("STAGE needs a name");
      if (script.find_stage(w[1])) lp.fail("duplicate stage '" + w[1] + "'");
      if (fields.size() != 1) lp.fail("STAGE takes no citation");
      Stage s;
      s.name = w[1];
      s.line = lineno;
      s.args = lp.key_values(w, 2, "");
      for (const auto& [k, v] : s.args) {
        if (k != "table" && k != "permute" && k != "from") lp.fail("unknown stage argument '" + k + "'");
      }
      if (!s.get("permute").empty() != !s.get("from").empty()) lp.fail("permute= and from= go together");
      script.stages.push_back(std::move(s));
      open.assign(1, &script.stages.back().steps);
      stage_ids.clear();
      continue;
    }
    if (key == "STEP" || key == "BRANCH") {
      if (fields.size() > 3) lp.fail("too many '|' fields");
      Step st;
      st.line = lineno;
      if (w.size() < 2 || !is_ident(w[1])) lp.fail(key + " needs an id");
      st.id = w[1];
      if (fields.size() > 1) st.citation = fields[1];
      if (fields.size() > 2) st.quote = fields[2];
      if (key == "STEP") {
        if (w.size() < 3) lp.fail("STEP needs a kind", st.id);
        st.kind = w[2];
        auto it = specs().find(st.kind);
        if (it == specs().end()) lp.fail("unknown step kind '" + st.kind + "'", st.id);
        st.args = lp.key_values(w, 3, st.id);
        check_args(lp, st, it->second);
        add_step(lp, std::move(st));
      } else {
        st.kind = "branch";
        st.args = lp.key_values(w, 2, st.id);
        const std::string bk = st.get("kind");
        auto it = branch_specs().find(bk);
        if (it == branch_specs().end()) lp.fail("BRANCH needs kind=case or kind=conditional", st.id);
        check_args(lp, st, it->second);
        if (open.size() > 1) lp.fail("nested BRANCH", st.id);
        const std::string id = st.id;
        add_step(lp, std::move(st));
        scope = id;
        open.push_back(&open.back()->back().body);
        branch_lines.push_back(lineno);
      }
      continue;
    }
    if (key == "END") {
      if (open.size() < 2) lp.fail("END without BRANCH");
      if (w.size() != 1 || fields.size() != 1) lp.fail("END takes no arguments");
      open.pop_back();
      branch_lines.pop_back();
      scope.clear();
      continue;
    }
    lp.fail("unknown line kind '" + key + "'");
  }
  if (!branch_lines.empty()) {
    throw ParseError("script line " + std::to_string(branch_lines.back()) + ": BRANCH without END",
                     branch_lines.back(), 1);
  }
  return script;
}

std::string print_script(const Script& s) {
  std::ostringstream out;
  if (!s.symbols.empty()) {
    out << "SYMBOLS";
    for (const auto& n : s.symbols) out << ' ' << n;
    out << '\n';
  }
  for (const auto& e : s.entries) {
    out << e.kind << ' ' << e.id;
    if (e.kind == "AXIOM") out << ' ' << e.role;
    out << " | " << e.text << " | " << e.citation << " | " << e.quote << '\n';
  }
  for (const auto& st : s.stages) {
    out << "STAGE " << st.name;
    print_args(out, st.args);
    out << '\n';
    print_steps(out, st.steps, 2);
  }
  return out.str();
}

}  // namespace curvelim::pipeline
