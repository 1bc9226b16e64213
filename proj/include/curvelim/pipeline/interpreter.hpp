#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvelim/cert/certificate.hpp"
#include "curvelim/oracle/spot_check.hpp"
#include "curvelim/pipeline/report.hpp"
#include "curvelim/pipeline/script.hpp"

namespace curvelim::pipeline {

// Unknown stage name or similar caller mistake.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint64_t seed = 0;
  unsigned trials = 100;
  std::uint64_t modulus = oracle::kDefaultPrime;
  std::size_t max_basis = 4000;
  std::size_t max_pairs = 200000;
  bool timing = false;      // wall-clock per step; off keeps reports byte-identical
  bool spot_checks = true;  // oracle check of every certificate
};

// A certificate together with the generators it references, enough to re-check it alone.
struct CertificateRecord {
  std::string stage;
  std::string step;
  Certificate certificate;
  GeneratorSet generators;
  std::string digest;  // as reported
};

struct RunResult {
  Report report;
  std::vector<CertificateRecord> certificates;
  // Relations established by each stage, keyed "stage/id" (branch relations "stage/branch/id").
  std::map<std::string, Polynomial> relations;
  bool resource_failure = false;
};

// Runs the named stages (all when empty) plus the stages they import from.
// Throws ParseError for references to unknown ids and UsageError for unknown stages.
RunResult run_script(const Script& script, const RunConfig& config,
                     const std::vector<std::string>& stages = {});

const std::string& builtin_script_text();
const Script& builtin_script();
// lemma31, lemma32, lemma32_e3, lemma32_e4, theorem33, endgame.
std::vector<std::string> builtin_stage_names();
// stage is a built-in stage name or "all".
RunResult run_builtin(const std::string& stage, const RunConfig& config);

// Checks reference resolution without running anything; throws ParseError.
void validate_script(const Script& script);

struct RecheckFailure {
  std::string stage;
  std::string step;
  std::string reason;
  std::vector<std::string> residual;  // leading terms of the exact residual
  std::string witness;
};
// Exact and modular re-verification of stored certificates; also checks the digests.
std::vector<RecheckFailure> recheck_certificates(const std::vector<CertificateRecord>& records,
                                                 const RunConfig& config);

}  // namespace curvelim::pipeline
