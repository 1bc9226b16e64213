#include "curvelim/pipeline/report.hpp"

#include <sstream>

#include "curvelim/exactpoly/errors.hpp"

namespace curvelim::pipeline {
namespace {

using ojson = nlohmann::ordered_json;

template <typename T>
T field(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field '" + key + "'", 0, 0);
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(where + ": field '" + key + "' has the wrong type", 0, 0);
  }
}

template <typename T>
T optional_field(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<T>();
}

}  // namespace

bool is_success_status(const std::string& s) {
  return s == "verified" || s == "matched" || s == "matched-up-to-content" || s == "branch-closed" ||
         s == "assumed" || s == "annotated";
}

void finalize_verdicts(Report& r) {
  bool all = r.error.empty();
  for (auto& st : r.stages) {
    bool ok = true;
    for (const auto& s : st.steps) ok = ok && is_success_status(s.status);
    st.verdict = ok ? "success" : "failed";
    all = all && ok;
  }
  r.verdict = all ? "success" : "failed";
}

ojson to_json(const Report& r) {
  ojson j;
  j["engine_version"] = r.engine_version;
  j["seed"] = r.seed;
  ojson stages = ojson::array();
  for (const auto& st : r.stages) {
    ojson js;
    js["name"] = st.name;
    js["verdict"] = st.verdict;
    if (!st.note.empty()) js["note"] = st.note;
    ojson steps = ojson::array();
    for (const auto& s : st.steps) {
      ojson x;
      x["id"] = s.id;
      x["citation"] = s.citation;
      x["quote"] = s.quote;
      x["status"] = s.status;
      x["certificate_digest"] = s.certificate_digest;
      x["multiplier_power"] = s.multiplier_power;
      x["timing_ms"] = s.timing_ms ? ojson(*s.timing_ms) : ojson(nullptr);
      x["kind"] = s.kind;
      if (!s.detail.empty()) x["detail"] = s.detail;
      if (!s.diff.empty()) x["diff"] = s.diff;
      if (!s.fresh.empty()) x["fresh"] = s.fresh;
      if (!s.fresh_cancelled.empty()) x["fresh_cancelled"] = s.fresh_cancelled;
      if (!s.used_generators.empty()) x["used_generators"] = s.used_generators;
      if (!s.content.empty()) x["content"] = s.content;
      if (s.conditional) x["conditional"] = true;
      if (!s.note.empty()) x["note"] = s.note;
      if (s.spot_check) {
        ojson sc;
        sc["trials"] = s.spot_check->trials;
        sc["pass"] = s.spot_check->pass;
        sc["log2_bound"] = s.spot_check->log2_bound;
        if (!s.spot_check->witness.empty()) sc["witness"] = s.spot_check->witness;
        x["spot_check"] = sc;
      }
      if (!s.data.empty()) {
        ojson d;
        for (const auto& [k, v] : s.data) d[k] = v;
        x["data"] = d;
      }
      steps.push_back(std::move(x));
    }
    js["steps"] = std::move(steps);
    stages.push_back(std::move(js));
  }
  j["stages"] = std::move(stages);
  j["verdict"] = r.verdict;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

Report report_from_json(const nlohmann::json& j) {
  Report r;
  r.engine_version = field<std::string>(j, "engine_version", "report");
  r.seed = field<std::uint64_t>(j, "seed", "report");
  r.verdict = field<std::string>(j, "verdict", "report");
  r.error = optional_field<std::string>(j, "error", "");
  const auto& stages = j.contains("stages") ? j.at("stages") : nlohmann::json();
  if (!stages.is_array()) throw ParseError("report: 'stages' must be an array", 0, 0);
  for (const auto& js : stages) {
    StageRecord st;
    st.name = field<std::string>(js, "name", "stage");
    const std::string where = "stage '" + st.name + "'";
    st.verdict = optional_field<std::string>(js, "verdict", "");
    st.note = optional_field<std::string>(js, "note", "");
    if (!js.contains("steps") || !js.at("steps").is_array()) {
      throw ParseError(where + ": 'steps' must be an array", 0, 0);
    }
    for (const auto& x : js.at("steps")) {
      StepRecord s;
      s.id = field<std::string>(x, "id", where);
      const std::string sw = where + " step '" + s.id + "'";
      s.citation = field<std::string>(x, "citation", sw);
      s.quote = field<std::string>(x, "quote", sw);
      s.status = field<std::string>(x, "status", sw);
      s.certificate_digest = field<std::string>(x, "certificate_digest", sw);
      s.multiplier_power = field<unsigned>(x, "multiplier_power", sw);
      if (x.contains("timing_ms") && !x.at("timing_ms").is_null()) s.timing_ms = x.at("timing_ms").get<double>();
      s.kind = optional_field<std::string>(x, "kind", "");
      s.detail = optional_field<std::string>(x, "detail", "");
      s.diff = optional_field<std::vector<std::string>>(x, "diff", {});
      s.fresh = optional_field<std::vector<std::string>>(x, "fresh", {});
      s.fresh_cancelled = optional_field<std::vector<std::string>>(x, "fresh_cancelled", {});
      s.used_generators = optional_field<std::vector<std::string>>(x, "used_generators", {});
      s.content = optional_field<std::string>(x, "content", "");
      s.conditional = optional_field<bool>(x, "conditional", false);
      s.note = optional_field<std::string>(x, "note", "");
      if (x.contains("spot_check")) {
        const auto& sc = x.at("spot_check");
        s.spot_check = SpotCheckSummary{field<unsigned>(sc, "trials", sw), field<bool>(sc, "pass", sw),
                                        field<double>(sc, "log2_bound", sw),
                                        optional_field<std::string>(sc, "witness", "")};
      }
      if (x.contains("data")) {
        for (const auto& [k, v] : x.at("data").items()) s.data[k] = v.get<std::string>();
      }
      st.steps.push_back(std::move(s));
    }
    r.stages.push_back(std::move(st));
  }
  return r;
}

std::string summarize(const Report& r) {
  std::ostringstream out;
  std::size_t steps = 0, mismatches = 0;
  for (const auto& st : r.stages) {
    steps += st.steps.size();
    for (const auto& s : st.steps) mismatches += s.status == "mismatch";
  }
  out << r.engine_version << ", seed " << r.seed << ": verdict " << r.verdict << '\n';
  if (!r.error.empty()) out << "error: " << r.error << '\n';
  if (steps == 0) {
    out << "no steps\n";
    return out.str();
  }
  out << r.stages.size() << " stages, " << steps << " steps, " << mismatches << " mismatches\n";
  for (const auto& st : r.stages) {
    std::size_t ok = 0;
    for (const auto& s : st.steps) ok += is_success_status(s.status);
    out << "  " << st.name << ": " << st.verdict << " (" << ok << "/" << st.steps.size() << ")";
    if (!st.note.empty()) out << " [" << st.note << "]";
    out << '\n';
    for (const auto& s : st.steps) {
      if (is_success_status(s.status)) continue;
      out << "    " << s.id << ": " << s.status;
      if (!s.detail.empty()) out << " - " << s.detail;
      out << '\n';
      for (const auto& d : s.diff) out << "      diff " << d << '\n';
    }
  }
  out << "certificate digests:\n";
  for (const auto& st : r.stages) {
    for (const auto& s : st.steps) {
      if (!s.certificate_digest.empty()) out << "  " << st.name << "/" << s.id << " " << s.certificate_digest << '\n';
    }
  }
  return out.str();
}

}  // namespace curvelim::pipeline
