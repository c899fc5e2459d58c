#pragma once

#include <string>
#include <vector>

namespace pqc {

/// One verified identity instance: stable id, identity tag ("anchor"),
/// outcome, and a witness string on failure.
struct Check {
  std::string id;
  std::string anchor;
  bool pass = true;
  std::string witness;
};

struct CheckList {
  std::vector<Check> checks;

  void add(std::string id, std::string anchor, bool pass, std::string witness = "") {
    checks.push_back({std::move(id), std::move(anchor), pass, std::move(witness)});
  }
  void merge(const CheckList& o) {
    checks.insert(checks.end(), o.checks.begin(), o.checks.end());
  }
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  std::vector<std::string> failing_ids() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (!c.pass) out.push_back(c.id);
    return out;
  }
};

}  // namespace pqc
