#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace serre {

using json = nlohmann::json;

inline constexpr const char* kVersion = "1.0.0";

// Verdict of one law/axiom over all of its samples.
struct CheckOutcome {
  std::string suite;
  std::string axiom;
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::optional<json> witness{};  // first failure, replayable
  json notes = json::object();

  bool pass() const { return failures == 0; }
  json to_json() const;
};

struct AxiomReport {
  std::string suite;
  json engine;
  std::string candidate;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::vector<CheckOutcome> checks;

  bool pass() const;
  const CheckOutcome* find(const std::string& axiom) const;
  // First failing check, if any.
  const CheckOutcome* first_failure() const;
  json to_json() const;
  void merge(const AxiomReport& other);
};

}  // namespace serre
