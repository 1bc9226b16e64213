#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + CURVELIM_BIN + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("curvelim_cli_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, PolyResultant) {
  auto r = run("poly resultant \"K-H\" \"K+H\" K");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "2*H\n");
}

TEST(Cli, PolyReduce) {
  auto r = run("poly reduce \"x^2\" \"x-1\"");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1\n");
}

TEST(Cli, PolyGroebnerUnitIdeal) {
  auto r = run("poly groebner \"x,x+1\"");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1\n");
}

TEST(Cli, PolyFromStdinAndFile) {
  const auto f = scratch("p.txt");
  std::ofstream(f) << "K-H";
  EXPECT_EQ(run("poly resultant @" + f.string() + " \"K+H\" K").out, "2*H\n");
  EXPECT_EQ(run("poly resultant - \"K+H\" K", "echo 'K-H' |").out, "2*H\n");
}

TEST(Cli, PolyParseErrorExits2) {
  EXPECT_EQ(run("poly reduce \"x^^2\" \"x\"").code, 2);
}

TEST(Cli, UnknownStageExits2) {
  EXPECT_EQ(run("verify --stage nosuch").code, 2);
}

TEST(Cli, CorruptedScriptExits2WithReport) {
  const auto script = scratch("bad.ds");
  std::ofstream(script) << "STAGE a\nSTEP x frobnicate\n";
  const auto report = scratch("bad.json");
  auto r = run("verify --script " + script.string() + " --report " + report.string());
  EXPECT_EQ(r.code, 2);
  auto j = nlohmann::json::parse(slurp(report));
  EXPECT_EQ(j["verdict"], "failed");
  EXPECT_NE(j.dump().find("line 2"), std::string::npos);
}

TEST(Cli, BadModulusExits2) {
  EXPECT_EQ(run("verify --stage lemma31 --modulus 15").code, 2);
}

TEST(Cli, CaseStageExits0AndWritesReportDir) {
  const auto dir = scratch("reports");
  auto r = run("verify --stage lemma32", "CURVELIM_REPORT_DIR=" + dir.string());
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(slurp(dir / "report.json"));
  EXPECT_EQ(j["verdict"], "success");
  EXPECT_EQ(j["seed"], 0);
}

TEST(Cli, ChainStageExits1OnDiscrepancy) {
  const auto report = scratch("t33.json");
  auto r = run("verify --stage theorem33 --format json --report " + report.string());
  EXPECT_EQ(r.code, 1);
  auto j = nlohmann::json::parse(slurp(report));
  bool printed_matched = false;
  for (const auto& st : j["stages"]) {
    for (const auto& s : st["steps"]) {
      if (st["name"] == "theorem33" && s["id"] == "printed/eq_3_62") {
        printed_matched = s["status"] == "matched-up-to-content";
      }
    }
  }
  EXPECT_TRUE(printed_matched);
}

TEST(Cli, ReportSummary) {
  const auto report = scratch("l31.json");
  ASSERT_EQ(run("verify --stage lemma31 --report " + report.string()).code, 0);
  auto r = run("report " + report.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("lemma31: success"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("0 mismatches"), std::string::npos) << r.out;
}

TEST(Cli, EmptyReportSaysNoSteps) {
  const auto report = scratch("empty.json");
  std::ofstream(report) << R"({"engine_version":"curvelim 1.0.0","seed":0,"stages":[],"verdict":"success"})";
  auto r = run("report " + report.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("no steps"), std::string::npos);
}

TEST(Cli, MissingOrCorruptReportExits2) {
  EXPECT_EQ(run("report /nonexistent/report.json").code, 2);
  const auto report = scratch("corrupt.json");
  std::ofstream(report) << "{ not json";
  EXPECT_EQ(run("report " + report.string()).code, 2);
}

TEST(Cli, SameSeedSameBytes) {
  auto a = run("verify --stage lemma31 --seed 7");
  auto b = run("verify --stage lemma31 --seed 7");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}
