#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "curvelim/exactpoly/algebra.hpp"
#include "curvelim/exactpoly/errors.hpp"
#include "curvelim/exactpoly/parse.hpp"
#include "curvelim/exactpoly/resultant.hpp"
#include "curvelim/ideal/groebner.hpp"
#include "curvelim/pipeline/interpreter.hpp"

namespace fs = std::filesystem;
using namespace curvelim;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kResource = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "-" reads stdin, "@path" reads a file, anything else is literal text.
std::string input_text(const std::string& arg) {
  if (arg == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  if (arg.size() > 1 && arg[0] == '@') return read_file(arg.substr(1));
  return arg;
}

void write_atomically(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',' || ch == '\n' || ch == ';') {
      if (cur.find_first_not_of(" \t\r") != std::string::npos) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (cur.find_first_not_of(" \t\r") != std::string::npos) out.push_back(cur);
  return out;
}

struct VerifyOptions {
  std::string stage = "all";
  std::string script;
  std::string report;
  std::string format = "json";
  pipeline::RunConfig cfg;
  bool stage_given = false;
};

std::string render(const pipeline::Report& r, const std::string& format) {
  if (format == "text") return pipeline::summarize(r);
  return pipeline::to_json(r).dump(2) + "\n";
}

int emit(const pipeline::Report& r, const VerifyOptions& o) {
  const std::string text = render(r, o.format);
  std::string path = o.report;
  if (path.empty()) {
    if (const char* dir = std::getenv("CURVELIM_REPORT_DIR"); dir && *dir) {
      path = (fs::path(dir) / (o.format == "text" ? "report.txt" : "report.json")).string();
    }
  }
  if (path.empty()) {
    std::cout << text;
    return kOk;
  }
  try {
    write_atomically(path, text);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  std::cerr << pipeline::summarize(r);
  return kOk;
}

int cmd_verify(VerifyOptions& o) {
  pipeline::Report failure;
  failure.seed = o.cfg.seed;
  auto usage = [&](const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    failure.error = msg;
    failure.verdict = "failed";
    emit(failure, o);
    return kUsage;
  };
  try {
    oracle::SpotCheckConfig sc;
    sc.trials = o.cfg.trials;
    sc.prime = o.cfg.modulus;
    sc.validate();
  } catch (const std::exception& e) {
    return usage(e.what());
  }
  pipeline::RunResult result;
  try {
    if (!o.script.empty()) {
      const std::string text = read_file(o.script);
      pipeline::Script script = pipeline::parse_script(text);
      std::vector<std::string> stages;
      if (o.stage_given && o.stage != "all") stages.push_back(o.stage);
      result = pipeline::run_script(script, o.cfg, stages);
    } else {
      result = pipeline::run_builtin(o.stage, o.cfg);
    }
  } catch (const ParseError& e) {
    return usage(std::string("parse error: ") + e.what());
  } catch (const pipeline::UsageError& e) {
    return usage(e.what());
  } catch (const ResourceError& e) {
    failure.error = e.what();
    failure.verdict = "failed";
    emit(failure, o);
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  } catch (const std::runtime_error& e) {
    return usage(e.what());
  }
  if (int rc = emit(result.report, o); rc != kOk) return rc;
  if (result.resource_failure) return kResource;
  return result.report.verdict == "success" ? kOk : kFailed;
}

std::vector<Polynomial> parse_inputs(const std::vector<std::string>& texts, const std::vector<std::string>& extra_vars) {
  std::vector<std::string> names;
  for (const auto& v : extra_vars) names.push_back(v);
  for (const auto& t : texts) {
    for (auto& id : collect_identifiers(t)) {
      if (std::find(names.begin(), names.end(), id) == names.end()) names.push_back(id);
    }
  }
  VarTablePtr table = VarTable::make(names);
  std::vector<Polynomial> out;
  for (const auto& t : texts) out.push_back(parse_polynomial(t, table));
  return out;
}

int cmd_resultant(const std::string& a, const std::string& b, const std::string& var) {
  auto polys = parse_inputs({input_text(a), input_text(b)}, {var});
  const std::size_t v = polys[0].vars()->require(var);
  std::cout << to_string(resultant(polys[0], polys[1], v)) << "\n";
  return kOk;
}

MonomialOrder order_named(const std::string& name) {
  if (name == "lex") return MonomialOrder::lex();
  if (name == "grevlex") return MonomialOrder::grevlex();
  throw std::runtime_error("unknown order '" + name + "' (lex or grevlex)");
}

int cmd_groebner(const std::string& list, const std::string& order) {
  auto texts = split_commas(input_text(list));
  if (texts.empty()) throw std::runtime_error("no polynomials given");
  const MonomialOrder ord = order_named(order);
  std::vector<Polynomial> polys;
  for (auto& p : parse_inputs(texts, {})) polys.push_back(p.with_order(ord));
  GroebnerBasis gb = groebner(polys, ord);
  for (const auto& g : gb.elements) std::cout << to_string(g) << "\n";
  if (gb.elements.empty()) std::cout << "0\n";
  return kOk;
}

int cmd_reduce(const std::string& p, const std::string& list, const std::string& order) {
  auto texts = split_commas(input_text(list));
  texts.insert(texts.begin(), input_text(p));
  const MonomialOrder ord = order_named(order);
  std::vector<Polynomial> polys;
  for (auto& q : parse_inputs(texts, {})) polys.push_back(q.with_order(ord));
  std::vector<Polynomial> divisors(polys.begin() + 1, polys.end());
  GroebnerBasis gb = groebner(divisors, ord);
  std::cout << to_string(normal_form(polys[0], gb).remainder) << "\n";
  return kOk;
}

int cmd_report(const std::string& path, const std::string& format) {
  pipeline::Report r;
  try {
    r = pipeline::report_from_json(nlohmann::json::parse(read_file(path)));
  } catch (const std::exception& e) {
    std::cerr << "error: " << path << ": " << e.what() << "\n";
    return kUsage;
  }
  std::cout << render(r, format == "json" ? "json" : "text");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvelim: certified replay of a curvature elimination argument"};
  app.require_subcommand(1);

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "run built-in stages or a script and write a report");
  verify->add_option("--stage", vo.stage, "lemma31, lemma32, lemma32_e3, lemma32_e4, theorem33, endgame or all");
  verify->add_option("--script", vo.script, "derivation script file");
  verify->add_option("--report", vo.report, "report path (default: $CURVELIM_REPORT_DIR or stdout)");
  verify->add_option("--format", vo.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  verify->add_option("--seed", vo.cfg.seed, "oracle seed");
  verify->add_option("--trials", vo.cfg.trials, "oracle trials per certificate");
  verify->add_option("--modulus", vo.cfg.modulus, "oracle prime");
  verify->add_option("--max-basis", vo.cfg.max_basis, "Groebner basis size ceiling");
  verify->add_option("--max-pairs", vo.cfg.max_pairs, "Groebner pair ceiling");
  verify->add_flag("--timing", vo.cfg.timing, "record wall-clock time per step");

  std::string pa, pb, pvar, order = "grevlex";
  auto* poly = app.add_subcommand("poly", "ad-hoc algebra; '-' reads stdin, '@file' reads a file");
  poly->require_subcommand(1);
  auto* res = poly->add_subcommand("resultant", "Sylvester resultant of two polynomials");
  res->add_option("p", pa)->required();
  res->add_option("q", pb)->required();
  res->add_option("var", pvar)->required();
  auto* gb = poly->add_subcommand("groebner", "reduced Groebner basis of a comma-separated list");
  gb->add_option("polys", pa)->required();
  gb->add_option("--order", order)->check(CLI::IsMember({"lex", "grevlex"}));
  auto* red = poly->add_subcommand("reduce", "normal form of p modulo a comma-separated list");
  red->add_option("p", pa)->required();
  red->add_option("divisors", pb)->required();
  red->add_option("--order", order)->check(CLI::IsMember({"lex", "grevlex"}));

  std::string report_path, report_format = "text";
  auto* rep = app.add_subcommand("report", "summarize a JSON report");
  rep->add_option("path", report_path)->required();
  rep->add_option("--format", report_format)->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  vo.stage_given = verify->count("--stage") > 0;

  try {
    if (*verify) return cmd_verify(vo);
    if (*res) return cmd_resultant(pa, pb, pvar);
    if (*gb) return cmd_groebner(pa, order);
    if (*red) return cmd_reduce(pa, pb, order);
    if (*rep) return cmd_report(report_path, report_format);
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
