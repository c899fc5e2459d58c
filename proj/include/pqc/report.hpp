#pragma once

#include <nlohmann/json.hpp>

#include "pqc/check.hpp"

namespace pqc {

inline constexpr const char* kEngineVersion = "0.1.0";

struct SuiteLedger {
  std::string name;
  CheckList checks;
};

/// Machine- and human-readable run record. The JSON rendering is
/// deterministic: byte-identical for identical inputs and engine version.
struct VerificationReport {
  std::string command;
  std::string model_name;
  int n = 0;
  std::vector<SuiteLedger> suites;
  std::vector<std::string> notes;

  bool all_pass() const {
    for (const auto& s : suites)
      if (!s.checks.all_pass()) return false;
    return true;
  }

  void add_suite(std::string name, CheckList checks) {
    suites.push_back({std::move(name), std::move(checks)});
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["format"] = "pqc-report";
    j["report_version"] = 1;
    j["engine_version"] = kEngineVersion;
    j["command"] = command;
    j["model"] = {{"name", model_name}, {"n", n}};
    j["overall"] = all_pass() ? "pass" : "fail";
    nlohmann::ordered_json suites_j = nlohmann::ordered_json::array();
    for (const auto& s : suites) {
      nlohmann::ordered_json sj;
      sj["name"] = s.name;
      sj["pass"] = s.checks.all_pass();
      nlohmann::ordered_json checks_j = nlohmann::ordered_json::array();
      for (const auto& c : s.checks.checks) {
        nlohmann::ordered_json cj;
        cj["id"] = c.id;
        cj["anchor"] = c.anchor;
        cj["status"] = c.pass ? "pass" : "fail";
        if (!c.witness.empty()) cj["witness"] = c.witness;
        checks_j.push_back(std::move(cj));
      }
      sj["checks"] = std::move(checks_j);
      suites_j.push_back(std::move(sj));
    }
    j["suites"] = std::move(suites_j);
    j["notes"] = notes;
    return j;
  }

  std::string to_text() const {
    std::string out;
    out += "== " + command + (model_name.empty() ? "" : " : " + model_name) + " ==\n";
    for (const auto& s : suites) {
      out += "[" + s.name + "]\n";
      for (const auto& c : s.checks.checks) {
        out += "  " + std::string(c.pass ? "ok  " : "FAIL") + "  " + c.id + " (" + c.anchor + ")";
        if (!c.witness.empty()) out += "  -- " + c.witness;
        out += "\n";
      }
    }
    for (const auto& note : notes) out += "note: " + note + "\n";
    out += std::string("overall: ") + (all_pass() ? "pass" : "FAIL") + "\n";
    return out;
  }
};

}  // namespace pqc
