#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace curvelim::pipeline {

// AXIOM / TARGET / SATURATION line of the script header; extends or overrides the registry.
struct ScriptEntry {
  std::string kind;
  std::string id;
  std::string role;  // AXIOM only
  std::string text;
  std::string citation;
  std::string quote;
  std::size_t line = 0;
};

struct Step {
  std::string id;
  std::string kind;  // "branch" for BRANCH ... END blocks
  std::vector<std::pair<std::string, std::string>> args;
  std::string citation;
  std::string quote;
  std::size_t line = 0;
  std::vector<Step> body;  // branch steps

  bool has(const std::string& key) const;
  // Empty when absent.
  std::string get(const std::string& key) const;
  // Comma-separated value split into items; empty when absent.
  std::vector<std::string> list(const std::string& key) const;
  // Arguments whose key starts with prefix, with the prefix removed.
  std::vector<std::pair<std::string, std::string>> with_prefix(const std::string& prefix) const;
};

struct Stage {
  std::string name;
  std::vector<std::pair<std::string, std::string>> args;  // table=, permute=, from=
  std::vector<Step> steps;
  std::size_t line = 0;

  std::string get(const std::string& key) const;
};

struct Script {
  // Empty means the built-in frame table.
  std::vector<std::string> symbols;
  std::vector<ScriptEntry> entries;
  std::vector<Stage> stages;

  const Stage* find_stage(const std::string& name) const;
};

// Grammar in docs/script-format.md. Throws ParseError with the line number and step id.
Script parse_script(const std::string& text);
// Canonical text; parse_script(print_script(s)) reproduces s up to line numbers.
std::string print_script(const Script& s);

// Step kinds accepted by the parser.
const std::vector<std::string>& step_kinds();

}  // namespace curvelim::pipeline
