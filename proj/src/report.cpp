#include "serre/report.hpp"

namespace serre {

json CheckOutcome::to_json() const {
  json j = {{"suite", suite},       {"axiom", axiom}, {"pass", pass()}, {"samples", samples},
            {"failures", failures}, {"notes", notes}};
  if (witness) j["witness"] = *witness;
  return j;
}

bool AxiomReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass()) return false;
  return true;
}

const CheckOutcome* AxiomReport::find(const std::string& axiom) const {
  for (const auto& c : checks)
    if (c.axiom == axiom) return &c;
  return nullptr;
}

const CheckOutcome* AxiomReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass()) return &c;
  return nullptr;
}

json AxiomReport::to_json() const {
  json cs = json::array();
  for (const auto& c : checks) cs.push_back(c.to_json());
  return {{"suite", suite}, {"engine", engine}, {"candidate", candidate}, {"seed", seed},
          {"n", n},         {"pass", pass()},   {"checks", cs}};
}

void AxiomReport::merge(const AxiomReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  if (suite.empty())
    suite = other.suite;
  else if (suite != other.suite)
    suite += "+" + other.suite;
}

}  // namespace serre
