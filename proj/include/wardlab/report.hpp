#pragma once

#include <chrono>
#include <ctime>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wardlab/classifiers.hpp"
#include "wardlab/continuity.hpp"
#include "wardlab/convergence.hpp"
#include "wardlab/density.hpp"

namespace wardlab {

inline constexpr const char* kSchemaVersion = "1.0";

inline std::string iso8601_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline nlohmann::json to_json(const Rational& r) {
  return nlohmann::json{{"count", r.num()},
                        {"n", r.den()},
                        {"decimal", r.to_decimal_string()}};
}

inline nlohmann::json to_json(const DensityTrace& trace) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& cp : trace.checkpoints) {
    arr.push_back({{"n", cp.n},
                   {"count", cp.count},
                   {"density", cp.density.to_decimal_string()}});
  }
  return arr;
}

inline nlohmann::json to_json(const Verdict& v) {
  nlohmann::json j{{"status", to_string(v.status)},
                   {"horizon", v.horizon},
                   {"note", v.note}};
  if (v.epsilon) j["epsilon"] = *v.epsilon;
  if (!v.witness_indices.empty()) j["witnessIndices"] = v.witness_indices;
  if (!v.trace.empty()) {
    j["trace"] = to_json(v.trace);
    j["finalDensity"] = v.trace.final().density.to_decimal_string();
  }
  return j;
}

inline nlohmann::json to_json(const AnalysisConfig& c) {
  return nlohmann::json{{"horizon", c.horizon},
                        {"checkpointCount", c.checkpoint_count},
                        {"epsilonGrid", c.epsilon_grid},
                        {"passTolerance", c.pass_tolerance},
                        {"failThreshold", c.fail_threshold},
                        {"lambdaGrid", c.lambda_grid}};
}

inline nlohmann::json to_json(const ClassReport& report) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [cls, verdict] : report.entries) {
    nlohmann::json e = to_json(verdict);
    e["class"] = to_string(cls);
    entries.push_back(std::move(e));
  }
  return nlohmann::json{{"sequence", report.sequence_name},
                        {"classes", std::move(entries)}};
}

inline nlohmann::json to_json(const MethodVerdict& mv) {
  nlohmann::json j = to_json(mv.verdict);
  j["method"] = mv.method;
  if (mv.limit_estimate) j["limitEstimate"] = *mv.limit_estimate;
  return j;
}

inline nlohmann::json to_json(const PropertyOutcome& o) {
  nlohmann::json j{{"property", label(o.property)},
                   {"verdict", to_json(o.verdict)},
                   {"skipped", o.skipped}};
  nlohmann::json evaluated = nlohmann::json::array();
  for (const auto& [name, status] : o.evaluated)
    evaluated.push_back({{"sequence", name}, {"status", to_string(status)}});
  j["evaluated"] = std::move(evaluated);
  if (o.witness) j["witness"] = *o.witness;
  return j;
}

inline nlohmann::json to_json(const LatticeReport& r) {
  nlohmann::json props = nlohmann::json::array();
  for (const auto& o : r.properties) props.push_back(to_json(o));
  nlohmann::json imps = nlohmann::json::array();
  for (const auto& c : r.implications) {
    imps.push_back({{"from", label(c.from)},
                    {"to", label(c.to)},
                    {"consistent", c.consistent}});
  }
  return nlohmann::json{{"function", r.function_name},
                        {"properties", std::move(props)},
                        {"implications", std::move(imps)},
                        {"allConsistent", r.all_consistent()}};
}

struct Report {
  std::string command;
  AnalysisConfig config;
  nlohmann::json results;
  std::string timestamp = iso8601_utc_now();

  nlohmann::json to_json() const {
    return nlohmann::json{{"schemaVersion", kSchemaVersion},
                          {"command", command},
                          {"config", wardlab::to_json(config)},
                          {"results", results},
                          {"timestamp", timestamp}};
  }
};

// Fixed header; rows are emitted in report order (catalogue order, then
// epsilon descending inside a class, which the verdicts already encode).
inline std::string render_csv(const Report& report) {
  std::ostringstream os;
  os << "class,status,epsilon,finalDensity,horizon\n";
  auto row = [&os](const nlohmann::json& e, const std::string& label_key) {
    os << e.value(label_key, e.value("method", std::string{"-"}));
    os << ',' << e.value("status", std::string{});
    os << ',';
    if (e.contains("epsilon")) os << e["epsilon"].get<double>();
    os << ',';
    if (e.contains("finalDensity")) os << e["finalDensity"].get<std::string>();
    os << ',' << e.value("horizon", 0ULL) << '\n';
  };
  const auto& results = report.results;
  if (results.is_array()) {
    for (const auto& r : results) {
      if (r.contains("classes")) {
        for (const auto& e : r["classes"]) row(e, "class");
      } else if (r.contains("status")) {
        row(r, "class");
      }
    }
  } else if (results.contains("classes")) {
    for (const auto& e : results["classes"]) row(e, "class");
  } else if (results.contains("status")) {
    row(results, "class");
  }
  return os.str();
}

inline std::string render_text(const Report& report) {
  std::ostringstream os;
  os << "# wardlab " << report.command << " (horizon "
     << report.config.horizon << ")\n";
  os << report.results.dump(2) << '\n';
  return os.str();
}

}  // namespace wardlab
