// Acceptance run: one PASS/FAIL line per criterion.
//   acceptance [--expect-fail 1,2] [--seed N]
// Exit 0 iff the failing criteria are exactly the expected ones.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "curvelim/frame/registry.hpp"
#include "curvelim/frame/symbols.hpp"
#include "curvelim/pipeline/interpreter.hpp"
#include "support/macaulay.hpp"
#include "support/property_suites.hpp"

using namespace curvelim;
using namespace curvelim::pipeline;

namespace {

constexpr double kC1Seconds = 60;
constexpr double kC3Seconds = 60;
constexpr double kC4Seconds = 600;
constexpr unsigned kTrials = 100;
constexpr double kLog2Bound = -40;
constexpr std::size_t kRingCases = 1000;
constexpr std::size_t kResultantCases = 200;
constexpr std::size_t kMacaulayCases = 100;
constexpr std::size_t kCorruptions = 10;

const std::set<std::string> kGood = {"verified", "matched", "matched-up-to-content", "branch-closed"};

struct Timed {
  RunResult run;
  double seconds = 0;
};

Timed timed(const std::function<RunResult()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  Timed t{f(), 0};
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return t;
}

const StepRecord* find(const Report& r, const std::string& stage, const std::string& id) {
  for (const auto& s : r.stages) {
    if (s.name != stage) continue;
    for (const auto& st : s.steps) {
      if (st.id == id) return &st;
    }
  }
  return nullptr;
}

std::string secs(double s) {
  std::ostringstream o;
  o.precision(2);
  o << std::fixed << s << "s";
  return o.str();
}

bool certified(const StepRecord* s) {
  return s && kGood.count(s->status) && !s->certificate_digest.empty() && s->spot_check && s->spot_check->pass;
}

struct Line {
  int id;
  bool pass;
  std::string text;
};

Line c1(const Timed& t33, const std::vector<RecheckFailure>& recheck) {
  const Report& r = t33.run.report;
  const StepRecord* s = find(r, "theorem33", "eq_3_62");
  const StepRecord* printed = find(r, "theorem33", "printed/eq_3_62");
  if (!s) return {1, false, "eq_3_62 step missing"};
  const bool match = s->status == "matched" || s->status == "matched-up-to-content";
  std::ostringstream o;
  o << "eq_3_62 " << s->status;
  if (!s->content.empty()) o << " content " << s->content;
  if (!match) {
    o << ", " << s->diff.size() << " diff terms, engine chain re-verified: "
      << (recheck.empty() && r.verdict == "failed" ? "yes" : "no");
    if (printed) o << "; printed-hypothesis track " << printed->status << " content " << printed->content;
  }
  o << "; " << secs(t33.seconds) << " (limit " << kC1Seconds << "s)";
  return {1, match && t33.seconds < kC1Seconds, o.str()};
}

Line c2(const Report& r) {
  const std::vector<std::pair<std::string, std::string>> items = {
      {"lemma32", "eq_3_30"}, {"lemma32", "eq_3_33"}, {"lemma32", "eq_3_34"},
      {"lemma32", "v3_nonzero/eq_3_36"}, {"lemma32", "v3_nonzero/eq_3_37"},
      {"lemma32", "v3_nonzero/eq_3_38"}, {"lemma32", "v3_nonzero/eq_3_39"},
      {"lemma32", "v3_nonzero/eq_3_40"}, {"lemma32", "v3_nonzero/eq_3_41"},
      {"lemma32", "v3_nonzero/eq_3_42"}, {"theorem33", "eq_3_43"}, {"theorem33", "eq_3_44"},
      {"theorem33", "eq_3_45"}, {"theorem33", "eq_3_48"}, {"theorem33", "eq_3_49"},
      {"theorem33", "eq_3_50"}, {"theorem33", "eq_3_51"}, {"theorem33", "eq_3_52"},
      {"theorem33", "eq_3_53"}, {"theorem33", "eq_3_54"}, {"theorem33", "eq_3_55"},
      {"theorem33", "eq_3_59"}, {"theorem33", "eq_3_60"}, {"theorem33", "eq_3_61"},
      {"theorem33", "eq_3_64"}};
  std::vector<std::string> bad;
  for (const auto& [stage, id] : items) {
    const StepRecord* s = find(r, stage, id);
    if (!certified(s)) bad.push_back(id + (s ? "=" + s->status : "=missing"));
  }
  std::ostringstream o;
  o << items.size() - bad.size() << "/" << items.size() << " matched with certificates";
  if (!bad.empty()) {
    o << "; failing:";
    for (const auto& b : bad) o << ' ' << b;
  }
  return {2, bad.empty(), o.str()};
}

Line c3(const Timed& lem) {
  const RunResult& run = lem.run;
  int closed = 0;
  std::vector<std::string> bad;
  for (const char* stage : {"lemma32", "lemma32_e3", "lemma32_e4"}) {
    for (const char* b : {"v3_nonzero", "v4_nonzero"}) {
      const std::string step = std::string(b) + "/contradiction";
      const StepRecord* s = find(run.report, stage, b);
      const CertificateRecord* cert = nullptr;
      for (const auto& c : run.certificates) {
        if (c.stage == stage && c.step == step) cert = &c;
      }
      const bool unit = cert && cert->certificate.target.is_constant() && !cert->certificate.target.is_zero() &&
                        cert->certificate.multiplier && cert->certificate.residual(cert->generators).is_zero();
      const bool by_h1 = unit && cert->certificate.multiplier->uses(cert->certificate.multiplier->vars()->require("h1"));
      if (s && s->status == "branch-closed" && unit && by_h1) {
        ++closed;
      } else {
        bad.push_back(std::string(stage) + "/" + b);
      }
    }
  }
  std::ostringstream o;
  o << closed << "/6 branches closed with unit certificates saturated by h1; " << secs(lem.seconds) << " (limit "
    << kC3Seconds << "s)";
  for (const auto& b : bad) o << " open:" << b;
  return {3, bad.empty() && lem.seconds < kC3Seconds, o.str()};
}

Line c4(const Timed& end) {
  const Report& r = end.run.report;
  const StepRecord* e = find(r, "endgame", "eliminant");
  const StepRecord* nz = find(r, "endgame", "nonzero");
  if (!e || !nz) return {4, false, "endgame steps missing"};
  std::size_t samples = 0, nonzero = 0;
  for (const auto& [k, v] : e->data) {
    if (k.rfind("sample ", 0) != 0) continue;
    ++samples;
    nonzero += v.find("leading coefficient nonzero") != std::string::npos;
  }
  const bool ok = e->status == "verified" && nz->status == "verified" && e->data.count("H_degree") &&
                  e->data.at("H_degree") != "0" && e->data.count("leading_coefficient") && samples == 15 &&
                  end.seconds < kC4Seconds;
  std::ostringstream o;
  o << "eliminant " << e->status << ", H-degree " << (e->data.count("H_degree") ? e->data.at("H_degree") : "?")
    << ", " << samples << " samples recorded (" << nonzero << " leading coefficient nonzero); " << secs(end.seconds)
    << " (limit " << kC4Seconds << "s)";
  return {4, ok, o.str()};
}

Line c5(const RunResult& full, const RunConfig& cfg, const std::vector<RecheckFailure>& recheck) {
  std::size_t steps = 0, bad = 0;
  double worst = -1e9;
  for (const auto& s : full.report.stages) {
    for (const auto& st : s.steps) {
      if (st.certificate_digest.empty() || !st.spot_check) continue;
      ++steps;
      worst = std::max(worst, st.spot_check->log2_bound);
      if (!st.spot_check->pass || st.spot_check->trials != kTrials || !(st.spot_check->log2_bound < kLog2Bound)) ++bad;
    }
  }
  const RunResult again = run_builtin("all", cfg);
  const bool same = to_json(full.report).dump() == to_json(again.report).dump();
  const bool prime_ok = cfg.modulus > (std::uint64_t{1} << 61);
  std::ostringstream o;
  o << full.certificates.size() << " certificates over " << steps << " steps, " << bad << " failing " << kTrials
    << "-trial checks, worst per-trial bound 2^" << worst << " (limit 2^" << kLog2Bound << "), re-check failures "
    << recheck.size() << ", byte-identical rerun " << (same ? "yes" : "no");
  return {5, bad == 0 && steps > 0 && recheck.empty() && same && prime_ok && worst < kLog2Bound, o.str()};
}

Line c6(std::uint64_t seed) {
  auto ring = curvelim::testing::ring_axiom_suite(kRingCases, seed + 1);
  auto res = curvelim::testing::resultant_common_factor_suite(kResultantCases, seed + 2);
  auto mac = curvelim::testing::membership_oracle_suite(kMacaulayCases, seed + 3);
  std::ostringstream o;
  o << "ring " << ring.cases - ring.failures << "/" << ring.cases << ", resultant " << res.cases - res.failures << "/"
    << res.cases << ", Macaulay " << mac.cases - mac.failures << "/" << mac.cases;
  for (const auto* s : {&ring, &res, &mac}) {
    if (s->failures) o << "; first failure: " << s->first_failure;
  }
  const bool ok = ring.failures + res.failures + mac.failures == 0 && ring.cases >= kRingCases &&
                  res.cases >= kResultantCases && mac.cases >= kMacaulayCases;
  return {6, ok, o.str()};
}

// Single-coefficient corruptions of the embedded eq_3_62 target, run through the printed track.
std::size_t coefficient_controls(const RunConfig& cfg, std::vector<std::string>& log) {
  const auto& entry = frame::EquationRegistry::frame().at("eq_3_62");
  const Polynomial& target = entry.poly;
  std::size_t caught = 0;
  const std::size_t picks = kCorruptions / 2 + 1;
  for (std::size_t k = 0; k < picks; ++k) {
    const std::size_t idx = k * (target.size() - 1) / (picks - 1);
    Polynomial bump = Polynomial::monomial(
        target.vars(), std::vector<Exponent>(target.exps(idx), target.exps(idx) + target.vars()->size()), Scalar(1),
        target.order());
    Polynomial corrupted = target + bump;
    Script s = builtin_script();
    s.entries.push_back({"TARGET", "eq_3_62", "", to_string(corrupted), entry.citation, entry.quote, 0});
    RunConfig c = cfg;
    c.trials = 5;
    const RunResult r = run_script(s, c, {"theorem33"});
    const StepRecord* p = find(r.report, "theorem33", "printed/eq_3_62");
    // The match runs after K, s and B are expanded; the diff names the expanded monomial.
    const std::string mono = to_string(frame::expand_definitions(bump));
    bool localized = p && p->status == "mismatch" && p->diff.size() == 1 && r.report.verdict == "failed";
    if (localized) {
      const std::string& d = p->diff.front();
      localized = d.size() > mono.size() && d.compare(d.size() - mono.size(), mono.size(), mono) == 0 &&
                  d[d.size() - mono.size() - 1] == '*';
    }
    caught += localized;
    log.push_back("coefficient of " + to_string(bump) + (localized ? ": diff " + p->diff.front() : ": NOT localized"));
  }
  return caught;
}

// Single-cofactor corruptions of stored certificates, one per stage where available.
std::size_t cofactor_controls(const RunResult& full, const RunConfig& cfg, std::vector<std::string>& log) {
  std::vector<const CertificateRecord*> picks;
  std::set<std::string> stages;
  for (const auto& c : full.certificates) {
    if (c.certificate.terms.empty()) continue;
    if (stages.insert(c.stage).second) picks.push_back(&c);
  }
  for (std::size_t i = full.certificates.size(); i-- > 0 && picks.size() < kCorruptions / 2 + 1;) {
    const auto& c = full.certificates[i];
    if (!c.certificate.terms.empty() && std::find(picks.begin(), picks.end(), &c) == picks.end()) picks.push_back(&c);
  }
  std::size_t caught = 0;
  for (const auto* pick : picks) {
    CertificateRecord rec = *pick;
    auto& term = rec.certificate.terms[rec.certificate.terms.size() / 2];
    term.cofactor = term.cofactor + Polynomial::constant(term.cofactor.vars(), 1, term.cofactor.order());
    auto failures = recheck_certificates({rec}, cfg);
    const bool localized = failures.size() == 1 && failures[0].stage == rec.stage && failures[0].step == rec.step &&
                           !failures[0].residual.empty();
    caught += localized;
    log.push_back("cofactor of " + term.generator_id + " in " + rec.stage + "/" + rec.step +
                  (localized ? ": residual " + failures[0].residual.front() : ": NOT caught"));
  }
  return caught;
}

Line c7(const RunResult& full, const RunConfig& cfg, bool verbose) {
  std::vector<std::string> log;
  const std::size_t a = coefficient_controls(cfg, log);
  const std::size_t na = log.size();
  const std::size_t b = cofactor_controls(full, cfg, log);
  const std::size_t total = log.size();
  if (verbose) {
    for (const auto& l : log) std::cout << "  " << l << "\n";
  }
  std::ostringstream o;
  o << a << "/" << na << " eq_3_62 coefficient corruptions and " << b << "/" << total - na
    << " cofactor corruptions caught with a localized diff (minimum " << kCorruptions << ")";
  return {7, a + b == total && total >= kCorruptions, o.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria 1-7"};
  std::vector<int> expect_fail;
  std::uint64_t seed = 0;
  bool verbose = false;
  app.add_option("--expect-fail", expect_fail, "criteria known to fail")->delimiter(',');
  app.add_option("--seed", seed, "oracle seed");
  app.add_flag("-v,--verbose", verbose, "list negative controls");
  CLI11_PARSE(app, argc, argv);

  RunConfig cfg;
  cfg.seed = seed;
  cfg.trials = kTrials;

  const Timed lem = timed([&] {
    return run_script(builtin_script(), cfg, {"lemma32", "lemma32_e3", "lemma32_e4"});
  });
  const Timed t33 = timed([&] { return run_builtin("theorem33", cfg); });
  const Timed full = timed([&] { return run_builtin("all", cfg); });
  const Timed end = timed([&] { return run_builtin("endgame", cfg); });
  const auto recheck = recheck_certificates(full.run.certificates, cfg);

  std::vector<Line> lines;
  lines.push_back(c1(t33, recheck));
  lines.push_back(c2(full.run.report));
  lines.push_back(c3(lem));
  lines.push_back(c4(end));
  lines.push_back(c5(full.run, cfg, recheck));
  lines.push_back(c6(seed));
  lines.push_back(c7(full.run, cfg, verbose));

  std::set<int> failed;
  for (const auto& l : lines) {
    std::cout << "C" << l.id << " " << (l.pass ? "PASS" : "FAIL") << "  " << l.text << "\n";
    if (!l.pass) failed.insert(l.id);
  }
  const std::set<int> expected(expect_fail.begin(), expect_fail.end());
  if (failed != expected) {
    std::cout << "unexpected outcome: failing set differs from --expect-fail\n";
    return 1;
  }
  if (!expected.empty()) std::cout << "failing criteria match the documented expectation\n";
  return 0;
}
