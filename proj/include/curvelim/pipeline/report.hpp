#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace curvelim::pipeline {

inline constexpr const char* kEngineVersion = "curvelim 1.0.0";

struct SpotCheckSummary {
  unsigned trials = 0;
  bool pass = false;
  double log2_bound = 0;  // log2 of the per-trial false-accept bound
  std::string witness;    // first failing point, if any
};

struct StepRecord {
  std::string id;
  std::string kind;
  std::string citation;
  std::string quote;
  std::string status;
  std::string certificate_digest;
  unsigned multiplier_power = 0;
  std::optional<double> timing_ms;

  std::string detail;
  std::vector<std::string> diff;
  std::vector<std::string> fresh;
  std::vector<std::string> fresh_cancelled;
  std::vector<std::string> used_generators;
  std::string content;  // matched-up-to-content constant
  bool conditional = false;
  std::string note;
  std::optional<SpotCheckSummary> spot_check;
  std::map<std::string, std::string> data;  // step-specific results (endgame degrees, samples)
};

struct StageRecord {
  std::string name;
  std::string verdict;  // success | failed
  std::string note;
  std::vector<StepRecord> steps;
};

struct Report {
  std::string engine_version = kEngineVersion;
  std::uint64_t seed = 0;
  std::vector<StageRecord> stages;
  std::string verdict = "success";
  std::string error;  // set when the run stopped on a usage or resource error
};

// verified, matched, matched-up-to-content, branch-closed, assumed, annotated.
bool is_success_status(const std::string& status);
// Recomputes stage and overall verdicts from the step statuses.
void finalize_verdicts(Report& r);

nlohmann::ordered_json to_json(const Report& r);
// Throws ParseError when required fields are missing or mistyped.
Report report_from_json(const nlohmann::json& j);

// Per-stage verdicts, mismatch diffs and the certificate digest index.
std::string summarize(const Report& r);

}  // namespace curvelim::pipeline
