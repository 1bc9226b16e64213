#include "curvelim/pipeline/interpreter.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "curvelim/exactpoly/algebra.hpp"
#include "curvelim/exactpoly/compact.hpp"
#include "curvelim/exactpoly/errors.hpp"
#include "curvelim/exactpoly/parse.hpp"
#include "curvelim/exactpoly/resultant.hpp"
#include "curvelim/frame/codazzi.hpp"
#include "curvelim/frame/derivation.hpp"
#include "curvelim/frame/registry.hpp"
#include "curvelim/frame/symbols.hpp"
#include "curvelim/ideal/groebner.hpp"
#include "curvelim/ideal/membership.hpp"
#include "curvelim/pipeline/endgame.hpp"
#include "curvelim/pipeline/match.hpp"

namespace curvelim::pipeline {

extern const char* const kBuiltinScript;

namespace {

using frame::EntryKind;
using frame::EquationRegistry;
using frame::IndexPermutation;
using frame::RegistryEntry;
using frame::RuleTable;

constexpr std::size_t kDiffTerms = 12;

bool frame_table(const VarTablePtr& t) { return t->same_as(*frame::load_frame_symbols()); }

std::vector<std::string> head_terms(const Polynomial& p, std::size_t n = kDiffTerms) {
  auto all = signed_terms(p);
  if (all.size() > n) {
    const std::size_t more = all.size() - n;
    all.resize(n);
    all.push_back("... " + std::to_string(more) + " more terms");
  }
  return all;
}

Certificate scaled_certificate(Certificate c, const Scalar& k) {
  c.target = c.target.scaled(k);
  for (auto& t : c.terms) t.cofactor = t.cofactor.scaled(k);
  return c;
}

IndexPermutation parse_permutation(const std::string& text, std::size_t line) {
  if (text.size() != 4 || text[0] != '(' || text[3] != ')' || text[1] < '2' || text[1] > '4' ||
      text[2] < '2' || text[2] > '4' || text[1] == text[2]) {
    throw ParseError("script line " + std::to_string(line) + ": permute= must be (23), (24) or (34)", line, 1);
  }
  return IndexPermutation::transposition(text[1] - '0', text[2] - '0');
}

struct StageSetup {
  const Stage* stage = nullptr;
  const Stage* body = nullptr;  // stage whose steps run (the from= stage when permuted)
  IndexPermutation perm = IndexPermutation::identity();
  bool codazzi = false;
};

StageSetup setup_for(const Script& script, const Stage& st) {
  StageSetup s;
  s.stage = &st;
  s.body = &st;
  s.codazzi = st.get("table") == "codazzi";
  if (!st.get("table").empty() && !s.codazzi) {
    throw ParseError("script line " + std::to_string(st.line) + ": unknown table '" + st.get("table") + "'",
                     st.line, 1);
  }
  if (!st.get("from").empty()) {
    const Stage* from = script.find_stage(st.get("from"));
    if (!from) {
      throw ParseError("script line " + std::to_string(st.line) + ": unknown stage '" + st.get("from") + "'",
                       st.line, 1);
    }
    if (!from->get("from").empty()) {
      throw ParseError("script line " + std::to_string(st.line) + ": from= must name an unpermuted stage",
                       st.line, 1);
    }
    if (!st.steps.empty()) {
      throw ParseError("script line " + std::to_string(st.line) + ": a permuted stage has no steps of its own",
                       st.line, 1);
    }
    s.body = from;
    s.perm = parse_permutation(st.get("permute"), st.line);
    s.codazzi = from->get("table") == "codazzi";
  }
  return s;
}

VarTablePtr table_for_script(const Script& script, bool codazzi) {
  if (!script.symbols.empty()) return VarTable::make(script.symbols);
  return codazzi ? frame::codazzi_symbols() : frame::load_frame_symbols();
}

Polynomial parse_text(const std::string& text, const VarTablePtr& table, std::size_t line) {
  try {
    if (frame_table(table) || table->same_as(*frame::codazzi_symbols())) {
      return frame::parse_frame_poly(text, table);
    }
    return parse_polynomial(text, table);
  } catch (const ParseError& e) {
    throw ParseError("script line " + std::to_string(line) + ": " + e.what(), line, e.column());
  } catch (const StructuralError& e) {
    throw ParseError("script line " + std::to_string(line) + ": " + e.what(), line, 1);
  }
}

EquationRegistry registry_for(const Script& script, bool codazzi) {
  EquationRegistry reg = !script.symbols.empty() ? EquationRegistry(table_for_script(script, false))
                         : codazzi              ? EquationRegistry::codazzi()
                                                : EquationRegistry::frame();
  if (codazzi && script.symbols.empty()) return reg;
  for (const auto& e : script.entries) {
    RegistryEntry r;
    r.id = e.id;
    r.kind = e.kind == "AXIOM" ? EntryKind::kAxiom : e.kind == "TARGET" ? EntryKind::kTarget : EntryKind::kSaturation;
    r.role = e.role;
    r.text = e.text;
    r.poly = parse_text(e.text, reg.table(), e.line);
    if (r.poly.is_zero()) {
      throw ParseError("script line " + std::to_string(e.line) + ": " + e.id + " is the zero polynomial", e.line, 1);
    }
    r.citation = e.citation;
    r.quote = e.quote;
    reg.put(std::move(r));
  }
  return reg;
}

const RegistryEntry* entry_of(const EquationRegistry& reg, const std::string& id, EntryKind kind) {
  const RegistryEntry* e = reg.find(id);
  return e && e->kind == kind ? e : nullptr;
}

// Axioms named by id or by family prefix.
std::vector<const RegistryEntry*> axioms_named(const EquationRegistry& reg, const std::string& id) {
  if (const auto* e = entry_of(reg, id, EntryKind::kAxiom)) return {e};
  std::vector<const RegistryEntry*> out;
  for (const auto* e : reg.family(id)) {
    if (e->kind == EntryKind::kAxiom) out.push_back(e);
  }
  return out;
}

std::vector<const RegistryEntry*> targets_named(const EquationRegistry& reg, const std::string& prefix) {
  std::vector<const RegistryEntry*> out;
  for (const auto* e : reg.family(prefix)) {
    if (e->kind == EntryKind::kTarget) out.push_back(e);
  }
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  Step tmp;
  tmp.args = {{"v", text}};
  return tmp.list("v");
}

bool is_derivation_op(const std::string& op) {
  return op.size() == 2 && op[0] == 'D' && op[1] >= '1' && op[1] <= '4';
}

// ---------------------------------------------------------------------------------------------
// Static reference check.

class Validator {
 public:
  explicit Validator(const Script& s) : script_(s) {}

  void run() {
    for (const auto& st : script_.stages) {
      StageSetup setup = setup_for(script_, st);
      regs_.emplace(st.name, registry_for(script_, setup.codazzi));
      exports_[st.name] = collect_exports(*setup.body, regs_.at(st.name));
    }
    for (const auto& st : script_.stages) {
      StageSetup setup = setup_for(script_, st);
      check_stage(st, setup);
    }
  }

 private:
  [[noreturn]] void fail(const Step& st, const std::string& msg) const {
    throw ParseError("script line " + std::to_string(st.line) + " (step '" + st.id + "'): " + msg, st.line, 1);
  }

  std::set<std::string> collect_exports(const Stage& body, const EquationRegistry& reg) const {
    std::set<std::string> out;
    std::function<void(const std::vector<Step>&, const std::string&)> walk =
        [&](const std::vector<Step>& steps, const std::string& prefix) {
          for (const auto& st : steps) {
            if (st.kind == "branch") {
              if (st.has("conclude")) out.insert(st.get("conclude"));
              if (st.has("hypothesis")) out.insert(st.id + "/" + st.get("hypothesis"));
              walk(st.body, st.id + "/");
              continue;
            }
            for (const auto& id : defined_by(st, reg)) out.insert(prefix + id);
          }
        };
    walk(body.steps, "");
    return out;
  }

  static std::vector<std::string> defined_by(const Step& st, const EquationRegistry& reg) {
    if (st.kind == "assume") {
      std::vector<std::string> out;
      for (const auto& id : st.list("ids")) {
        for (const auto* e : axioms_named(reg, id)) out.push_back(e->id);
      }
      return out;
    }
    if (st.kind == "import") return st.has("as") ? st.list("as") : st.list("ids");
    if (st.kind == "assert_member" && st.has("family")) {
      std::vector<std::string> out;
      for (const auto* e : targets_named(reg, st.get("family"))) out.push_back(e->id);
      return out;
    }
    static const std::set<std::string> producing = {"derive", "assert_member", "eliminate_vars", "reduce", "prem",
                                                    "divide", "resultant",     "rule_check",     "endgame"};
    if (producing.count(st.kind)) return {st.id};
    return {};
  }

  void check_stage(const Stage& st, const StageSetup& setup) {
    const EquationRegistry& reg = regs_.at(st.name);
    std::set<std::string> known;
    if (frame_table(reg.table())) {
      for (const auto& d : frame::definitions()) known.insert(d.id);
    }
    std::set<std::string> tables;
    check_steps(setup.body->steps, reg, known, tables, setup, false, false);
  }

  void check_steps(const std::vector<Step>& steps, const EquationRegistry& reg, std::set<std::string>& known,
                   std::set<std::string>& tables, const StageSetup& setup, bool in_case, bool in_branch) {
    const bool custom = !script_.symbols.empty();
    for (const auto& st : steps) {
      auto need_known = [&](const std::string& key) {
        for (const auto& id : st.list(key)) {
          if (!known.count(id)) fail(st, "unknown id '" + id + "' in " + key + "=");
        }
      };
      auto need_target = [&](const std::string& key) {
        for (const auto& id : st.list(key)) {
          const auto* e = reg.find(id);
          if (!e || e->kind == EntryKind::kSaturation) fail(st, "unknown id '" + id + "' in " + key + "=");
        }
      };
      auto need_sat = [&](const std::string& key) {
        for (const auto& id : st.list(key)) {
          if (id == "hyp") {
            if (!in_case) fail(st, "sat=hyp outside a case branch");
            continue;
          }
          if (!entry_of(reg, id, EntryKind::kSaturation)) fail(st, "unknown saturation '" + id + "'");
        }
      };
      auto need_op = [&](const std::string& op) {
        if (custom || setup.codazzi) fail(st, st.kind + " needs the frame symbol table");
        if (!is_derivation_op(op) && !tables.count(op)) fail(st, "unknown rule table '" + op + "'");
      };
      auto need_vars = [&](const std::string& key) {
        for (const auto& v : st.list(key)) {
          if (!reg.table()->contains(v)) fail(st, "unknown symbol '" + v + "' in " + key + "=");
        }
      };

      if (st.kind == "branch") {
        if (in_branch) fail(st, "nested branch");
        std::set<std::string> inner = known;
        std::set<std::string> inner_tables = tables;
        const bool is_case = st.get("kind") == "case";
        if (is_case) {
          need_vars("nonzero");
        } else {
          need_target("hypothesis");
          inner.insert(st.get("hypothesis"));
        }
        check_steps(st.body, reg, inner, inner_tables, setup, is_case, true);
        if (is_case) {
          bool closes = std::any_of(st.body.begin(), st.body.end(), [](const Step& s) { return s.kind == "close"; });
          if (!closes) fail(st, "case branch without a close step");
          known.insert(st.get("conclude"));
        }
        continue;
      }
      const std::string& k = st.kind;
      if (k == "assume") {
        for (const auto& id : st.list("ids")) {
          if (axioms_named(reg, id).empty()) fail(st, "unknown axiom id '" + id + "'");
        }
      } else if (k == "import") {
        const Stage* src = script_.find_stage(st.get("stage"));
        if (!src) fail(st, "unknown stage '" + st.get("stage") + "'");
        const auto& ex = exports_.at(src->name);
        for (const auto& id : st.list("ids")) {
          if (!ex.count(id)) fail(st, "unknown id '" + id + "' in stage " + src->name);
        }
        if (st.has("as") && st.list("as").size() != st.list("ids").size()) fail(st, "as= and ids= differ in length");
      } else if (k == "derive") {
        need_op(st.get("op"));
        if (st.has("source")) need_known("source");
        if (st.has("jet")) need_vars("jet");
        need_target("match");
      } else if (k == "assert_member" || k == "eliminate_vars") {
        if (st.has("target")) need_target("target");
        if (st.has("family") && targets_named(reg, st.get("family")).empty()) {
          fail(st, "unknown target family '" + st.get("family") + "'");
        }
        if (st.has("poly")) parse_text(st.get("poly"), reg.table(), st.line);
        need_known("using");
        need_sat("sat");
        if (k == "eliminate_vars") need_vars("vars");
        if (st.has("fresh_cancelled")) need_vars("fresh_cancelled");
        if (st.has("scope") && st.get("scope") != "cited" && st.get("scope") != "all") fail(st, "scope= must be cited or all");
      } else if (k == "reduce") {
        need_known("source");
        need_known("by");
        need_target("match");
        std::string order = st.get("order");
        if (!order.empty()) {
          if (order.rfind("elim:", 0) != 0) fail(st, "order= must be elim:<vars>");
          for (const auto& v : split_list(order.substr(5))) {
            if (!reg.table()->contains(v)) fail(st, "unknown symbol '" + v + "' in order=");
          }
        }
        need_vars("within");
      } else if (k == "prem") {
        need_known("source");
        need_known("by");
        need_vars("var");
        need_target("match");
      } else if (k == "divide") {
        need_known("source");
        need_sat("by");
        need_target("match");
      } else if (k == "resultant") {
        need_known("a");
        need_known("b");
        need_vars("var");
        need_target("match");
      } else if (k == "refine") {
        need_op(st.get("op"));
        if (!is_derivation_op(st.get("op"))) fail(st, "refine needs a base operator D1..D4");
        need_known("using");
        for (const auto& [v, text] : st.with_prefix("map.")) {
          if (!reg.table()->contains(v)) fail(st, "unknown symbol '" + v + "' in map." + v);
          parse_text(text, reg.table(), st.line);
        }
        tables.insert(st.get("table"));
      } else if (k == "rule_check") {
        need_op(st.get("op"));
        need_target("target");
      } else if (k == "vanishes") {
        need_op(st.get("op"));
        need_vars("vars");
        need_known("using");
      } else if (k == "close") {
        if (!in_case) fail(st, "close outside a case branch");
        need_sat("sat");
        need_known("using");
      } else if (k == "match_printed") {
        need_known("derived");
        need_target("target");
      } else if (k == "assert_nonzero") {
        need_known("source");
      } else if (k == "endgame") {
        need_known("p");
        need_known("q");
        need_vars("var");
      }
      for (const auto& id : defined_by(st, reg)) known.insert(id);
    }
  }

  const Script& script_;
  std::map<std::string, EquationRegistry> regs_;
  std::map<std::string, std::set<std::string>> exports_;
};

// ---------------------------------------------------------------------------------------------
// Execution.

struct Export {
  Polynomial poly;
  bool conditional = false;
  std::string digest;
};

struct StageOutput {
  StageRecord record;
  std::map<std::string, Export> exports;
};

struct Knowledge {
  GeneratorSet gens;
  std::set<std::string> conditional;
  std::map<std::string, std::string> digests;
};

class Runner;

class StageRunner {
 public:
  StageRunner(Runner& runner, const StageSetup& setup);
  StageOutput run();

 private:
  struct BranchState {
    std::string prefix;
    bool conditional = false;
    std::optional<SaturationRecord> hyp;
    bool closed = false;
    std::string closure_digest;
  };
  struct Membership {
    std::optional<Certificate> cert;
    const GeneratorSet* gens = nullptr;
    bool fallback = false;
  };

  void run_steps(const std::vector<Step>& steps, StepRecord* branch_record);
  void exec(const Step& st, StepRecord& rec);
  void exec_branch(const Step& st);

  void assume(const Step& st, StepRecord& rec);
  void import(const Step& st, StepRecord& rec);
  void derive(const Step& st, StepRecord& rec);
  void member(const Step& st, StepRecord& rec);
  void reduce(const Step& st, StepRecord& rec);
  void pseudo_remainder(const Step& st, StepRecord& rec);
  void divide(const Step& st, StepRecord& rec);
  void resultant_step(const Step& st, StepRecord& rec);
  void refine(const Step& st, StepRecord& rec);
  void rule_check(const Step& st, StepRecord& rec);
  void vanishes(const Step& st, StepRecord& rec);
  void close(const Step& st, StepRecord& rec);
  void match_printed(const Step& st, StepRecord& rec);
  void assert_nonzero(const Step& st, StepRecord& rec);
  void endgame(const Step& st, StepRecord& rec);

  // Lookups.
  Polynomial permute(const Polynomial& p) const { return setup_.perm.is_identity() ? p : setup_.perm.apply(p); }
  std::string permute_symbol(const std::string& s) const { return setup_.perm.map_symbol(s).first; }
  Polynomial printed(const std::string& id) const;
  const Relation& known(const std::string& id) const;
  SaturationRecord saturation(const std::string& id) const;
  std::vector<SaturationRecord> saturations(const Step& st) const;
  const RuleTable& rule_table(const std::string& op) const;
  std::size_t var(const std::string& name) const { return table_->require(permute_symbol(name)); }
  Polynomial parse(const std::string& text, std::size_t line) const { return permute(parse_text(text, table_, line)); }

  Membership membership_for(const Polynomial& target, const Step& st, const std::vector<SaturationRecord>& sats,
                            const std::string& cert_id);
  // Exact check, oracle check and bookkeeping; false when rejected.
  bool certify(StepRecord& rec, Certificate cert, const GeneratorSet& pool);
  void add_relation(const std::string& id, const Polynomial& p, bool conditional, const std::string& digest);
  bool tainted(const std::vector<std::string>& ids) const;
  void record_match(StepRecord& rec, const Polynomial& derived, const std::string& target);
  std::string cert_id(const StepRecord& rec) const {
    return setup_.stage->name + "/" + rec.id + (cert_count_ ? "#" + std::to_string(cert_count_) : "");
  }

  Runner& runner_;
  StageSetup setup_;
  VarTablePtr table_;
  EquationRegistry registry_;
  std::map<std::string, RuleTable> tables_;
  Knowledge main_;
  Knowledge* kb_ = &main_;
  GeneratorSet cited_;
  BranchState branch_;
  StageOutput out_;
  std::vector<std::string> digests_;  // of the current step
  unsigned cert_count_ = 0;
};

class Runner {
 public:
  Runner(const Script& script, const RunConfig& cfg, RunResult& result)
      : script_(script), cfg_(cfg), result_(result) {}

  const StageOutput& ensure(const std::string& name) {
    if (auto it = done_.find(name); it != done_.end()) return it->second;
    const Stage* st = script_.find_stage(name);
    if (!st) throw UsageError("unknown stage '" + name + "'");
    if (!running_.insert(name).second) throw ParseError("import cycle through stage '" + name + "'", st->line, 1);
    StageRunner runner(*this, setup_for(script_, *st));
    StageOutput out = runner.run();
    running_.erase(name);
    return done_.emplace(name, std::move(out)).first->second;
  }

  const Script& script() const { return script_; }
  const RunConfig& config() const { return cfg_; }
  RunResult& result() { return result_; }
  const std::map<std::string, StageOutput>& done() const { return done_; }

 private:
  const Script& script_;
  const RunConfig& cfg_;
  RunResult& result_;
  std::map<std::string, StageOutput> done_;
  std::set<std::string> running_;
};

StageRunner::StageRunner(Runner& runner, const StageSetup& setup)
    : runner_(runner),
      setup_(setup),
      table_(table_for_script(runner.script(), setup.codazzi)),
      registry_(registry_for(runner.script(), setup.codazzi)) {
  out_.record.name = setup.stage->name;
  if (!setup.perm.is_identity()) {
    out_.record.note = "symmetry-generated from " + setup.body->name + " by " + setup.perm.name() +
                       " (with some similar discussions)";
  }
  for (const auto& d : frame::definitions()) {
    if (frame_table(table_)) add_relation(d.id, frame::definition_relation(d).poly, false, "");
  }
}

StageOutput StageRunner::run() {
  run_steps(setup_.body->steps, nullptr);
  return std::move(out_);
}

void StageRunner::run_steps(const std::vector<Step>& steps, StepRecord*) {
  const auto& cfg = runner_.config();
  for (const auto& st : steps) {
    if (st.kind == "branch") {
      exec_branch(st);
      continue;
    }
    StepRecord rec;
    rec.id = branch_.prefix + st.id;
    rec.kind = st.kind;
    rec.citation = st.citation;
    rec.quote = st.quote;
    if (!setup_.perm.is_identity()) rec.note = "symmetry-generated";
    rec.conditional = branch_.conditional;
    digests_.clear();
    cert_count_ = 0;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      exec(st, rec);
    } catch (const ResourceError& e) {
      rec.status = "resource-fail";
      rec.detail = e.what();
      runner_.result().resource_failure = true;
    } catch (const StructuralError& e) {
      rec.status = "not-member";
      rec.detail = e.what();
    } catch (const DomainError& e) {
      rec.status = "mismatch";
      rec.detail = e.what();
    }
    if (cfg.timing) {
      rec.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
    if (digests_.size() == 1) {
      rec.certificate_digest = digests_.front();
    } else if (digests_.size() > 1) {
      std::string all;
      for (const auto& d : digests_) all += d + "\n";
      rec.certificate_digest = sha256_hex(all);
    }
    out_.record.steps.push_back(std::move(rec));
  }
}

void StageRunner::exec_branch(const Step& st) {
  StepRecord rec;
  rec.id = st.id;
  rec.kind = "branch";
  rec.citation = st.citation;
  rec.quote = st.quote;
  if (!setup_.perm.is_identity()) rec.note = "symmetry-generated";
  const std::size_t slot = out_.record.steps.size();
  out_.record.steps.push_back(rec);

  Knowledge inner = main_;
  kb_ = &inner;
  branch_ = BranchState{};
  branch_.prefix = st.id + "/";
  const bool is_case = st.get("kind") == "case";
  std::string hyp_text;
  if (is_case) {
    Polynomial h = Polynomial::variable(table_, var(st.get("nonzero")));
    branch_.hyp = SaturationRecord{h, "branch hypothesis " + to_string(h) + " != 0"};
    hyp_text = to_string(h) + " != 0";
  } else {
    branch_.conditional = true;
    const std::string& hid = st.get("hypothesis");
    add_relation(hid, printed(hid), true, "");
    hyp_text = "printed " + hid + " taken as hypothesis";
  }
  run_steps(st.body, nullptr);
  const BranchState done = branch_;
  kb_ = &main_;
  branch_ = BranchState{};

  StepRecord& r = out_.record.steps[slot];
  if (is_case) {
    const std::string& concl = st.get("conclude");
    if (done.closed) {
      r.status = "branch-closed";
      r.certificate_digest = done.closure_digest;
      r.detail = "assuming " + hyp_text + " reaches the unit ideal; concludes " + concl;
      add_relation(concl, Polynomial::variable(table_, var(st.get("nonzero"))), false, done.closure_digest);
    } else {
      r.status = "not-member";
      r.detail = "assuming " + hyp_text + " did not reach the unit ideal";
    }
  } else {
    r.status = "annotated";
    r.conditional = true;
    r.detail = "conditional track: " + hyp_text;
  }
}

void StageRunner::exec(const Step& st, StepRecord& rec) {
  const std::string& k = st.kind;
  if (k == "assume") return assume(st, rec);
  if (k == "import") return import(st, rec);
  if (k == "derive") return derive(st, rec);
  if (k == "assert_member" || k == "eliminate_vars") return member(st, rec);
  if (k == "reduce") return reduce(st, rec);
  if (k == "prem") return pseudo_remainder(st, rec);
  if (k == "divide") return divide(st, rec);
  if (k == "resultant") return resultant_step(st, rec);
  if (k == "refine") return refine(st, rec);
  if (k == "rule_check") return rule_check(st, rec);
  if (k == "vanishes") return vanishes(st, rec);
  if (k == "close") return close(st, rec);
  if (k == "match_printed") return match_printed(st, rec);
  if (k == "assert_nonzero") return assert_nonzero(st, rec);
  if (k == "endgame") return endgame(st, rec);
  if (k == "annotate") {
    rec.status = "annotated";
    rec.detail = st.get("text");
    return;
  }
  throw StructuralError("unhandled step kind '" + k + "'");
}

Polynomial StageRunner::printed(const std::string& id) const {
  const RegistryEntry* e = registry_.find(id);
  if (!e || e->kind == EntryKind::kSaturation) throw StructuralError("no printed equation '" + id + "'");
  return permute(e->poly);
}

const Relation& StageRunner::known(const std::string& id) const {
  const Relation* r = kb_->gens.find(id);
  if (!r) throw StructuralError("input '" + id + "' was not established");
  return *r;
}

SaturationRecord StageRunner::saturation(const std::string& id) const {
  if (id == "hyp") {
    if (!branch_.hyp) throw StructuralError("sat=hyp outside a case branch");
    return *branch_.hyp;
  }
  const RegistryEntry* e = entry_of(registry_, id, EntryKind::kSaturation);
  if (!e) throw StructuralError("unknown saturation '" + id + "'");
  return SaturationRecord{permute(e->poly), e->citation + ": " + e->quote};
}

std::vector<SaturationRecord> StageRunner::saturations(const Step& st) const {
  std::vector<SaturationRecord> out;
  for (const auto& id : st.list("sat")) out.push_back(saturation(id));
  return out;
}

const RuleTable& StageRunner::rule_table(const std::string& op) const {
  if (auto it = tables_.find(op); it != tables_.end()) return it->second;
  if (!is_derivation_op(op)) throw StructuralError("unknown rule table '" + op + "'");
  return frame::table_for("D" + std::to_string(setup_.perm(op[1] - '0')));
}

bool StageRunner::tainted(const std::vector<std::string>& ids) const {
  if (branch_.conditional) return true;
  return std::any_of(ids.begin(), ids.end(), [&](const std::string& id) { return kb_->conditional.count(id) > 0; });
}

void StageRunner::add_relation(const std::string& id, const Polynomial& p, bool conditional,
                               const std::string& digest) {
  if (p.is_zero()) return;
  Polynomial q = primitive_part(p);
  kb_->gens.add(id, q);
  if (conditional) kb_->conditional.insert(id);
  kb_->digests[id] = digest;
  const std::string key = branch_.prefix + id;
  out_.exports[key] = Export{q, conditional, digest};
  runner_.result().relations[setup_.stage->name + "/" + key] = q;
}

bool StageRunner::certify(StepRecord& rec, Certificate cert, const GeneratorSet& pool) {
  const auto& cfg = runner_.config();
  cert.target_id = cert_id(rec);
  ++cert_count_;
  GeneratorSet used(pool.order());
  for (const auto& id : cert.used_generators()) {
    const Relation* r = pool.find(id);
    if (!r) throw StructuralError("certificate references unknown generator '" + id + "'");
    if (!used.find(id)) used.add(*r);
  }
  for (const auto& id : used.ids()) {
    if (std::find(rec.used_generators.begin(), rec.used_generators.end(), id) == rec.used_generators.end()) {
      rec.used_generators.push_back(id);
    }
  }
  rec.multiplier_power = std::max(rec.multiplier_power, cert.power);
  Polynomial residual = cert.residual(used);
  if (!residual.is_zero()) {
    rec.status = "mismatch";
    rec.detail = "certificate rejected: nonzero residual";
    rec.diff = head_terms(residual);
    return false;
  }
  if (cfg.spot_checks) {
    oracle::SpotCheckConfig oc;
    oc.seed = cfg.seed;
    oc.trials = cfg.trials;
    oc.prime = cfg.modulus;
    auto sc = oracle::check_certificate(cert, used, oc);
    SpotCheckSummary s{sc.trials, sc.pass(), sc.log2_bound, ""};
    if (!sc.pass()) {
      std::ostringstream w;
      for (const auto& [v, x] : sc.failures.front().point) w << v << "=" << x << " ";
      s.witness = w.str();
    }
    if (!rec.spot_check) {
      rec.spot_check = s;
    } else {
      rec.spot_check->pass = rec.spot_check->pass && s.pass;
      rec.spot_check->log2_bound = std::max(rec.spot_check->log2_bound, s.log2_bound);
      if (rec.spot_check->witness.empty()) rec.spot_check->witness = s.witness;
    }
    if (!sc.pass()) {
      rec.status = "mismatch";
      rec.detail = "oracle rejected the certificate";
      return false;
    }
  }
  const std::string digest = cert.digest();
  digests_.push_back(digest);
  runner_.result().certificates.push_back(
      CertificateRecord{setup_.stage->name, rec.id, std::move(cert), std::move(used), digest});
  return true;
}

void StageRunner::record_match(StepRecord& rec, const Polynomial& derived, const std::string& target) {
  Polynomial p = printed(target);
  MatchResult m = match_polynomials(derived, p);
  if (m.status == "mismatch" && frame_table(table_)) {
    Polynomial de = frame::expand_definitions(derived);
    Polynomial pe = frame::expand_definitions(p);
    if (de != derived || pe != p) m = match_polynomials(de, pe);
  }
  rec.status = m.status;
  if (m.status == "matched-up-to-content") rec.content = m.content.get_str();
  if (m.status == "mismatch") {
    rec.diff = m.diff;
    rec.detail = "differs from printed " + target + " (best ratio " + m.ratio.get_str() + ")";
  } else {
    rec.detail = "matches printed " + target;
  }
}

void StageRunner::assume(const Step& st, StepRecord& rec) {
  std::size_t n = 0;
  for (const auto& id : st.list("ids")) {
    for (const auto* e : axioms_named(registry_, id)) {
      add_relation(e->id, permute(e->poly), branch_.conditional, "");
      ++n;
    }
  }
  rec.status = "assumed";
  rec.detail = std::to_string(n) + " axioms";
}

void StageRunner::import(const Step& st, StepRecord& rec) {
  const StageOutput& src = runner_.ensure(st.get("stage"));
  auto ids = st.list("ids");
  auto as = st.has("as") ? st.list("as") : ids;
  std::vector<std::string> from;
  rec.status = "verified";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto it = src.exports.find(ids[i]);
    if (it == src.exports.end()) {
      rec.status = "not-member";
      rec.detail = "stage " + st.get("stage") + " did not establish " + ids[i];
      return;
    }
    add_relation(as[i], it->second.poly, it->second.conditional || branch_.conditional, it->second.digest);
    if (it->second.conditional) rec.conditional = true;
    if (!it->second.digest.empty()) digests_.push_back(it->second.digest);
    from.push_back(st.get("stage") + "/" + ids[i]);
  }
  std::string d = "from ";
  for (std::size_t i = 0; i < from.size(); ++i) d += (i ? ", " : "") + from[i];
  rec.detail = d;
}

void StageRunner::derive(const Step& st, StepRecord& rec) {
  const RuleTable& t = rule_table(st.get("op"));
  GeneratorSet pool;
  Certificate cert;
  Polynomial raw;
  std::vector<std::string> premises;
  if (st.has("jet")) {
    const std::size_t x = var(st.get("jet"));
    const std::string sym = t.fresh_symbol(x);
    Polynomial dx = apply_derivation(t, Polynomial::variable(table_, x)).image;
    Polynomial jet = Polynomial::variable(table_, sym);
    raw = jet - dx;
    pool.add("jet[" + sym + "]", jet);
    const std::string img_id = t.name() + "[" + table_->name(x) + "]";
    cert.terms.push_back({"jet[" + sym + "]", Polynomial::constant(table_, 1)});
    if (!dx.is_zero()) {
      pool.add(img_id, dx);
      cert.terms.push_back({img_id, Polynomial::constant(table_, -1)});
    }
    rec.fresh.push_back(sym);
  } else {
    const Relation& src = known(st.get("source"));
    premises.push_back(src.id);
    auto res = apply_derivation(t, src.poly);
    raw = res.image;
    rec.fresh.assign(res.fresh.begin(), res.fresh.end());
    for (std::size_t v = 0; v < table_->size(); ++v) {
      if (!src.poly.uses(v)) continue;
      const auto& rule = t.rule(v);
      if (rule.kind == frame::Rule::Kind::kZero) continue;
      Polynomial img = rule.kind == frame::Rule::Kind::kImage
                           ? rule.image
                           : Polynomial::variable(table_, t.fresh_symbol(v));
      const std::string id = t.name() + "[" + table_->name(v) + "]";
      pool.add(id, img);
      cert.terms.push_back({id, partial(src.poly, v)});
    }
  }
  rec.conditional = rec.conditional || tainted(premises);
  rec.used_generators = premises;
  if (raw.is_zero()) {
    rec.status = "verified";
    rec.detail = "derivative vanishes identically";
    return;
  }
  cert.target = raw;
  const Scalar content = gcd_content(raw).content;
  if (!certify(rec, scaled_certificate(cert, Scalar(1) / content), pool)) return;
  add_relation(st.id, raw, rec.conditional, digests_.back());
  rec.status = "verified";
  rec.detail = to_string(raw).size() <= 160 ? to_string(primitive_part(raw)) : std::to_string(raw.size()) + " terms";
  if (st.has("match")) record_match(rec, raw, st.get("match"));
}

StageRunner::Membership StageRunner::membership_for(const Polynomial& target, const Step& st,
                                                    const std::vector<SaturationRecord>& sats,
                                                    const std::string& id) {
  const auto& cfg = runner_.config();
  MembershipOptions opt;
  opt.limits.max_basis = cfg.max_basis;
  opt.limits.max_pairs = cfg.max_pairs;
  opt.limits.stage = setup_.stage->name + "/" + branch_.prefix + st.id;
  Membership m;
  if (st.has("using")) {
    cited_ = GeneratorSet();
    for (const auto& uid : st.list("using")) {
      if (!cited_.find(uid)) cited_.add(known(uid));
    }
    for (const auto& d : frame::definitions()) {
      if (kb_->gens.find(d.id) && !cited_.find(d.id)) cited_.add(kb_->gens.at(d.id));
    }
    m.cert = membership(target, cited_, sats, opt, id);
    m.gens = &cited_;
    if (m.cert || st.get("scope") == "cited") return m;
  }
  m.cert = membership(target, kb_->gens, sats, opt, id);
  m.gens = &kb_->gens;
  m.fallback = st.has("using");
  return m;
}

void StageRunner::member(const Step& st, StepRecord& rec) {
  std::vector<std::pair<std::string, Polynomial>> targets;
  if (st.has("family")) {
    for (const auto* e : targets_named(registry_, st.get("family"))) targets.emplace_back(e->id, permute(e->poly));
  } else if (st.has("target")) {
    targets.emplace_back(st.id, printed(st.get("target")));
  } else {
    targets.emplace_back(st.id, parse(st.get("poly"), st.line));
  }
  const auto sats = saturations(st);
  std::vector<std::size_t> elim;
  for (const auto& v : st.list("vars")) elim.push_back(var(v));
  std::string fresh;
  if (st.has("fresh_cancelled")) fresh = permute_symbol(st.get("fresh_cancelled"));

  std::size_t ok = 0;
  bool fallback = false;
  rec.status = "verified";
  for (const auto& [id, target] : targets) {
    for (std::size_t v : elim) {
      if (target.uses(v)) {
        rec.status = "mismatch";
        rec.detail = id + " still involves " + table_->name(v);
        return;
      }
    }
    if (!fresh.empty() && target.uses(table_->require(fresh))) {
      rec.status = "mismatch";
      rec.detail = id + " still involves the fresh symbol " + fresh;
      return;
    }
    Membership m = membership_for(target, st, sats, id);
    if (!m.cert) {
      rec.status = "not-member";
      rec.detail = id + " is not in the " + (m.gens == &kb_->gens ? "knowledge" : "cited") +
                   " ideal (saturation power <= 8)";
      return;
    }
    fallback = fallback || m.fallback;
    const Scalar content = gcd_content(target).content;
    if (!certify(rec, scaled_certificate(*m.cert, Scalar(1) / content), *m.gens)) return;
    if (!fresh.empty()) {
      const std::size_t f = table_->require(fresh);
      bool used = false;
      for (const auto& t : runner_.result().certificates.back().generators.relations()) used = used || t.poly.uses(f);
      if (!used) {
        rec.status = "mismatch";
        rec.detail = "no generator used involves " + fresh;
        return;
      }
      rec.fresh_cancelled = {fresh};
    }
    rec.conditional = rec.conditional || tainted(rec.used_generators);
    add_relation(id, target, rec.conditional, digests_.back());
    ++ok;
  }
  if (targets.size() > 1) rec.detail = std::to_string(ok) + "/" + std::to_string(targets.size()) + " members";
  if (fallback) {
    rec.detail += std::string(rec.detail.empty() ? "" : "; ") + "cited generators insufficient, full knowledge used";
  }
}

void StageRunner::reduce(const Step& st, StepRecord& rec) {
  const Relation& src = known(st.get("source"));
  std::vector<const Relation*> by;
  for (const auto& id : st.list("by")) by.push_back(&known(id));
  MonomialOrder order = MonomialOrder::grevlex();
  if (st.has("order")) {
    std::vector<bool> front(table_->size(), false);
    for (const auto& v : split_list(st.get("order").substr(5))) front[var(v)] = true;
    order = MonomialOrder::block(front);
  }
  std::vector<const Polynomial*> polys{&src.poly};
  for (const auto* r : by) polys.push_back(&r->poly);
  Compaction cmp = Compaction::of(polys, table_);
  MonomialOrder corder = cmp.compact_order(order);
  std::vector<Polynomial> inputs;
  for (const auto* r : by) inputs.push_back(cmp.down(r->poly, corder));
  GroebnerLimits lim;
  lim.max_basis = runner_.config().max_basis;
  lim.max_pairs = runner_.config().max_pairs;
  lim.stage = setup_.stage->name + "/" + rec.id;
  GroebnerBasis gb = groebner(inputs, corder, lim, true);
  NormalForm nf = normal_form(cmp.down(src.poly, corder), gb);

  const MonomialOrder base = src.poly.order();
  Polynomial rem = cmp.up(nf.remainder, base);
  Certificate cert;
  cert.target = rem;
  cert.terms.push_back({src.id, Polynomial::constant(table_, 1)});
  for (std::size_t j = 0; j < by.size(); ++j) {
    Polynomial c(cmp.table(), corder);
    for (std::size_t k = 0; k < nf.cofactors.size(); ++k) {
      if (!nf.cofactors[k].is_zero() && !gb.provenance[k][j].is_zero()) c += nf.cofactors[k] * gb.provenance[k][j];
    }
    if (!c.is_zero()) cert.terms.push_back({by[j]->id, -cmp.up(c, base)});
  }
  std::vector<std::string> premises{src.id};
  for (const auto* r : by) premises.push_back(r->id);
  rec.conditional = rec.conditional || tainted(premises);
  if (rem.is_zero()) {
    rec.status = "verified";
    rec.detail = "reduces to zero";
    return;
  }
  const Scalar content = gcd_content(rem).content;
  if (!certify(rec, scaled_certificate(cert, Scalar(1) / content), kb_->gens)) return;
  add_relation(st.id, rem, rec.conditional, digests_.back());
  rec.status = "verified";
  if (st.has("within")) {
    std::set<std::size_t> allowed;
    for (const auto& v : st.list("within")) allowed.insert(var(v));
    for (std::size_t v = 0; v < table_->size(); ++v) {
      if (rem.uses(v) && !allowed.count(v)) {
        rec.status = "mismatch";
        rec.detail = "remainder still involves " + table_->name(v);
        return;
      }
    }
  }
  rec.detail = std::to_string(rem.size()) + " terms";
  if (st.has("match")) record_match(rec, rem, st.get("match"));
}

void StageRunner::pseudo_remainder(const Step& st, StepRecord& rec) {
  const Relation& src = known(st.get("source"));
  const Relation& by = known(st.get("by"));
  const std::size_t x = var(st.get("var"));
  if (by.poly.degree(x) == 0) throw DomainError(by.id + " has degree 0 in " + table_->name(x));
  PseudoDivision pd = pseudo_divide(src.poly, by.poly, x);
  Polynomial lc = coefficients_in(by.poly, x).back();
  Certificate cert;
  cert.target = pd.remainder;
  cert.terms.push_back({src.id, pow(lc, pd.power)});
  if (!pd.quotient.is_zero()) cert.terms.push_back({by.id, -pd.quotient});
  rec.conditional = rec.conditional || tainted({src.id, by.id});
  if (pd.remainder.is_zero()) {
    rec.status = "verified";
    rec.detail = "pseudo-remainder is zero";
    return;
  }
  const Scalar content = gcd_content(pd.remainder).content;
  if (!certify(rec, scaled_certificate(cert, Scalar(1) / content), kb_->gens)) return;
  add_relation(st.id, pd.remainder, rec.conditional, digests_.back());
  rec.status = "verified";
  rec.detail = "leading coefficient power " + std::to_string(pd.power) + ", " +
               std::to_string(pd.remainder.size()) + " terms";
  if (st.has("match")) record_match(rec, pd.remainder, st.get("match"));
}

void StageRunner::divide(const Step& st, StepRecord& rec) {
  const Relation& src = known(st.get("source"));
  SaturationRecord s = saturation(st.get("by"));
  auto [q, k] = divide_out(src.poly, s.multiplier);
  Certificate cert;
  cert.target = q;
  cert.multiplier = s.multiplier;
  cert.power = k;
  cert.terms.push_back({src.id, Polynomial::constant(table_, 1)});
  rec.conditional = rec.conditional || tainted({src.id});
  const Scalar content = gcd_content(q).content;
  if (!certify(rec, scaled_certificate(cert, Scalar(1) / content), kb_->gens)) return;
  add_relation(st.id, q, rec.conditional, digests_.back());
  rec.status = "verified";
  rec.detail = "removed (" + to_string(s.multiplier) + ")^" + std::to_string(k);
  if (st.has("match")) record_match(rec, q, st.get("match"));
}

void StageRunner::resultant_step(const Step& st, StepRecord& rec) {
  const Relation& a = known(st.get("a"));
  const Relation& b = known(st.get("b"));
  const std::size_t x = var(st.get("var"));
  if (a.poly.degree(x) == 0 || b.poly.degree(x) == 0) {
    throw DomainError("resultant in " + table_->name(x) + " needs positive degrees");
  }
  ResultantCertificate rc = resultant_with_cofactors(a.poly, b.poly, x);
  Certificate cert;
  cert.target = rc.resultant;
  if (!rc.a.is_zero()) cert.terms.push_back({a.id, rc.a});
  if (!rc.b.is_zero()) cert.terms.push_back({b.id, rc.b});
  rec.conditional = rec.conditional || tainted({a.id, b.id});
  if (rc.resultant.is_zero()) {
    rec.status = "mismatch";
    rec.detail = "resultant vanishes: common factor in " + table_->name(x);
    return;
  }
  const Scalar content = gcd_content(rc.resultant).content;
  if (!certify(rec, scaled_certificate(cert, Scalar(1) / content), kb_->gens)) return;
  add_relation(st.id, rc.resultant, rec.conditional, digests_.back());
  rec.status = "verified";
  rec.detail = std::to_string(rc.resultant.size()) + " terms";
  if (st.has("match")) record_match(rec, rc.resultant, st.get("match"));
}

void StageRunner::refine(const Step& st, StepRecord& rec) {
  const RuleTable& base = rule_table(st.get("op"));
  RuleTable t(st.get("table"), base.op(), table_);
  for (std::size_t v = 0; v < table_->size(); ++v) {
    if (base.has_rule(v)) t.set(table_->name(v), base.rule(v));
  }
  rec.status = "verified";
  std::vector<std::string> done;
  for (const auto& [name, text] : st.with_prefix("map.")) {
    const std::size_t x = var(name);
    Polynomial img = parse(text, st.line);
    Polynomial dx = apply_derivation(base, Polynomial::variable(table_, x)).image;
    Polynomial diff = dx - img;
    if (!diff.is_zero()) {
      Membership m = membership_for(diff, st, {}, st.id + "[" + name + "]");
      if (!m.cert) {
        rec.status = "not-member";
        rec.detail = base.name() + "(" + name + ") - (" + text + ") is not in the ideal";
        return;
      }
      const Scalar content = gcd_content(diff).content;
      if (!certify(rec, scaled_certificate(*m.cert, Scalar(1) / content), *m.gens)) return;
    }
    t.set(table_->name(x), frame::Rule::of(img, st.citation));
    done.push_back(name);
  }
  rec.conditional = rec.conditional || tainted(rec.used_generators);
  tables_.insert_or_assign(st.get("table"), std::move(t));
  std::string d = "table " + st.get("table") + " refines " + base.name() + " on";
  for (const auto& n : done) d += " " + n;
  rec.detail = d;
}

void StageRunner::rule_check(const Step& st, StepRecord& rec) {
  Polynomial t = printed(st.get("target"));
  auto images = frame::jet_images(t);
  GeneratorSet pool;
  Certificate cert;
  cert.target = t;
  Polynomial cur = t;
  for (const auto& [v, img] : images) {
    Polynomial next = substitute(cur, v, img);
    Polynomial jet = Polynomial::variable(table_, v) - img;
    auto cof = divide_exact(cur - next, jet);
    if (!cof) throw std::logic_error("jet substitution is not divisible");
    const std::string id = "jet[" + table_->name(v) + "]";
    pool.add(id, jet);
    if (!cof->is_zero()) cert.terms.push_back({id, *cof});
    cur = next;
  }
  if (!cur.is_zero()) {
    rec.status = "mismatch";
    rec.detail = "rules for " + st.get("op") + " leave a nonzero remainder";
    rec.diff = head_terms(cur);
    return;
  }
  const Scalar content = gcd_content(t).content;
  if (!certify(rec, scaled_certificate(cert, Scalar(1) / content), pool)) return;
  add_relation(st.id, t, branch_.conditional, digests_.back());
  rec.status = "verified";
  rec.detail = "follows from the " + st.get("op") + " rules on " + std::to_string(images.size()) + " jets";
}

void StageRunner::vanishes(const Step& st, StepRecord& rec) {
  const RuleTable& t = rule_table(st.get("op"));
  rec.status = "verified";
  std::string d = t.name() + " vanishes on";
  for (const auto& name : st.list("vars")) {
    Polynomial dx = apply_derivation(t, Polynomial::variable(table_, var(name))).image;
    d += " " + permute_symbol(name);
    if (dx.is_zero()) continue;
    Membership m = membership_for(dx, st, {}, st.id + "[" + name + "]");
    if (!m.cert) {
      rec.status = "not-member";
      rec.detail = t.name() + "(" + name + ") does not vanish modulo the cited relations";
      return;
    }
    const Scalar content = gcd_content(dx).content;
    if (!certify(rec, scaled_certificate(*m.cert, Scalar(1) / content), *m.gens)) return;
  }
  rec.conditional = rec.conditional || tainted(rec.used_generators);
  rec.detail = d;
}

void StageRunner::close(const Step& st, StepRecord& rec) {
  // 1 lies in the saturation iff some power of the multiplier lies in the ideal.
  const auto sats = saturations(st);
  Polynomial m = Polynomial::constant(table_, 1);
  for (const auto& s : sats) m *= s.multiplier;
  for (unsigned k = 1; k <= 8; ++k) {
    Membership mem = membership_for(pow(m, k), st, {}, st.id);
    if (!mem.cert) continue;
    Certificate cert = *mem.cert;
    cert.target = Polynomial::constant(table_, 1);
    cert.multiplier = m;
    cert.power = k;
    if (!certify(rec, cert, *mem.gens)) return;
    rec.status = "branch-closed";
    rec.detail = "unit ideal after saturation";
    branch_.closed = true;
    branch_.closure_digest = digests_.back();
    return;
  }
  rec.status = "not-member";
  rec.detail = "the saturated branch ideal is not the unit ideal";
}

void StageRunner::match_printed(const Step& st, StepRecord& rec) {
  const Relation& d = known(st.get("derived"));
  rec.conditional = rec.conditional || tainted({d.id});
  record_match(rec, d.poly, st.get("target"));
}

void StageRunner::assert_nonzero(const Step& st, StepRecord& rec) {
  const Relation* r = kb_->gens.find(st.get("source"));
  if (!r) {
    rec.status = "mismatch";
    rec.detail = st.get("source") + " is zero or was not established";
    return;
  }
  rec.conditional = rec.conditional || tainted({r->id});
  rec.status = "verified";
  rec.detail = "nonzero, " + std::to_string(r->poly.size()) + " terms, total degree " +
               std::to_string(r->poly.total_degree());
}

void StageRunner::endgame(const Step& st, StepRecord& rec) {
  const Relation& p = known(st.get("p"));
  const Relation& q = known(st.get("q"));
  const std::size_t x = var(st.get("var"));
  rec.conditional = rec.conditional || tainted({p.id, q.id});
  EndgameResult e = endgame_eliminate(p.poly, q.poly, x);
  std::ostringstream trace;
  for (const auto& t : e.trace) trace << t.mode << ":" << t.degree << "/" << t.terms << " ";
  rec.data["trace"] = trace.str();
  rec.data["gradual_agrees"] = e.gradual_agrees ? "true" : "false";
  if (e.eliminant.is_zero()) {
    rec.status = "mismatch";
    rec.detail = "the eliminant vanishes identically";
    return;
  }
  const auto& cfg = runner_.config();
  if (cfg.spot_checks) {
    oracle::SpotCheckConfig oc;
    oc.seed = cfg.seed;
    oc.trials = cfg.trials;
    oc.prime = cfg.modulus;
    auto sc = oracle::check_resultant(p.poly, q.poly, x, e.resultant, oc, setup_.stage->name + "/" + rec.id);
    rec.spot_check = SpotCheckSummary{sc.trials, sc.pass(), sc.log2_bound, ""};
    if (!sc.pass()) {
      rec.status = "mismatch";
      rec.detail = "oracle rejected the Sylvester determinant";
      return;
    }
  }
  const std::string text = to_string(e.eliminant);
  const std::string digest = sha256_hex(text);
  digests_.push_back(digest);
  add_relation(st.id, e.eliminant, rec.conditional, digest);

  rec.status = e.gradual_agrees ? "verified" : "mismatch";
  rec.detail = std::string("nonzero eliminant of ") + std::to_string(e.eliminant.size()) + " terms";
  if (!e.gradual_agrees) rec.detail += "; gradual elimination disagrees with the resultant";
  const VarTablePtr& t = table_;
  if (!t->contains("H") || !t->contains("c") || !t->contains("R")) return;

  // Degree structure in H and the leading coefficient over Z[c, R].
  std::size_t h = t->require("H");
  auto coeffs = coefficients_in(e.eliminant, h);
  const Polynomial& lc = coeffs.back();
  rec.data["H_degree"] = std::to_string(e.eliminant.degree(h));
  rec.data["terms"] = std::to_string(e.eliminant.size());
  rec.data["total_degree"] = std::to_string(e.eliminant.total_degree());
  rec.data["leading_coefficient"] = to_string(lc);
  rec.data["eliminant_sha256"] = digest;
  std::string vars;
  for (std::size_t v = 0; v < t->size(); ++v) {
    if (e.eliminant.uses(v)) vars += (vars.empty() ? "" : ",") + t->name(v);
  }
  rec.data["variables"] = vars;

  const std::size_t c = t->require("c");
  const std::size_t r = t->require("R");
  unsigned nr = st.has("samples_r") ? static_cast<unsigned>(std::stoul(st.get("samples_r"))) : 0;
  std::size_t zeros = 0;
  for (const auto& cs : st.list("samples_c")) {
    const Scalar cv(std::stol(cs));
    for (unsigned i = 0; i < nr; ++i) {
      const std::uint64_t a = oracle::sample(cfg.seed, setup_.stage->name + "/" + rec.id, i, "R_num", cfg.modulus);
      const std::uint64_t b = oracle::sample(cfg.seed, setup_.stage->name + "/" + rec.id, i, "R_den", cfg.modulus);
      Scalar rv(Integer(static_cast<long>(a % 201) - 100), Integer(static_cast<long>(b % 50) + 1));
      rv.canonicalize();
      std::map<std::size_t, Polynomial> at{{c, Polynomial::constant(t, cv, e.eliminant.order())},
                                           {r, Polynomial::constant(t, rv, e.eliminant.order())}};
      const bool lc_zero = substitute_all(lc, at).is_zero();
      const bool el_zero = substitute_all(e.eliminant, at).is_zero();
      zeros += el_zero;
      rec.data["sample c=" + cs + " R=" + rv.get_str()] =
          std::string("leading coefficient ") + (lc_zero ? "zero" : "nonzero") + ", eliminant " +
          (el_zero ? "zero" : "nonzero");
    }
  }
  rec.detail = "nonzero eliminant in H of degree " + rec.data["H_degree"] + ", " + rec.data["terms"] + " terms";
  if (!e.gradual_agrees) rec.detail += "; gradual elimination disagrees with the resultant";
  if (zeros) rec.detail += "; " + std::to_string(zeros) + " sample specializations vanish";
}

}  // namespace

// ---------------------------------------------------------------------------------------------

void validate_script(const Script& script) { Validator(script).run(); }

RunResult run_script(const Script& script, const RunConfig& config, const std::vector<std::string>& stages) {
  for (const auto& name : stages) {
    if (!script.find_stage(name)) throw UsageError("unknown stage '" + name + "'");
  }
  validate_script(script);
  RunResult result;
  result.report.seed = config.seed;
  Runner runner(script, config, result);
  if (stages.empty()) {
    for (const auto& st : script.stages) runner.ensure(st.name);
  } else {
    for (const auto& name : stages) runner.ensure(name);
  }
  for (const auto& st : script.stages) {
    auto it = runner.done().find(st.name);
    if (it != runner.done().end()) result.report.stages.push_back(it->second.record);
  }
  if (result.resource_failure) result.report.error = "resource ceiling exceeded";
  finalize_verdicts(result.report);
  return result;
}

const std::string& builtin_script_text() {
  static const std::string text = kBuiltinScript;
  return text;
}

const Script& builtin_script() {
  static const Script s = parse_script(builtin_script_text());
  return s;
}

std::vector<std::string> builtin_stage_names() {
  std::vector<std::string> out;
  for (const auto& st : builtin_script().stages) out.push_back(st.name);
  return out;
}

RunResult run_builtin(const std::string& stage, const RunConfig& config) {
  if (stage == "all") return run_script(builtin_script(), config);
  if (!builtin_script().find_stage(stage)) throw UsageError("unknown stage '" + stage + "'");
  return run_script(builtin_script(), config, {stage});
}

std::vector<RecheckFailure> recheck_certificates(const std::vector<CertificateRecord>& records,
                                                 const RunConfig& config) {
  std::vector<RecheckFailure> out;
  oracle::SpotCheckConfig oc;
  oc.seed = config.seed;
  oc.trials = config.trials;
  oc.prime = config.modulus;
  for (const auto& r : records) {
    RecheckFailure f{r.stage, r.step, "", {}, ""};
    Polynomial residual = r.certificate.residual(r.generators);
    if (!residual.is_zero()) {
      f.reason = "exact residual is nonzero";
      f.residual = head_terms(residual);
    }
    auto sc = oracle::check_certificate(r.certificate, r.generators, oc);
    if (!sc.pass()) {
      std::ostringstream w;
      for (const auto& [v, x] : sc.failures.front().point) w << v << "=" << x << " ";
      f.witness = w.str();
      if (f.reason.empty()) f.reason = "oracle found a nonzero evaluation";
    }
    if (f.reason.empty() && r.certificate.digest() != r.digest) f.reason = "digest differs from the report";
    if (!f.reason.empty()) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace curvelim::pipeline
