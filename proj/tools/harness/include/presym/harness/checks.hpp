#pragma once

#include <string>
#include <vector>

#include "presym/harness/report.hpp"

namespace presym::harness {

/// Polynomial degree cap in effect for suites and instance replays.
inline constexpr unsigned kHarnessDegreeCap = 64;

struct Outcome {
  Outcome(Status s = Status::Pass, std::string d = {}, std::optional<json> w = std::nullopt)
      : status(s), detail(std::move(d)), witness(std::move(w)) {}
  Status status;
  std::string detail;
  std::optional<json> witness;
};

/// Named single-input checks. Every suite trial goes through run_identity so
/// that {"check": name, "inputs": ...} replays it exactly.
std::vector<std::string> identity_names();
/// Throws SchemaError for an unknown name or malformed inputs.
Outcome run_identity(const std::string& name, const json& inputs);
json identity_payload(const std::string& name, const json& inputs);

struct InstanceStats {
  std::size_t deformations = 0;
  std::size_t maurer_cartan = 0;
  std::size_t lambda3_contributing = 0;
};

/// { "n", "eta": [[..]], "G": [[..]] (rows span G, optional), "beta": [[..]] }:
/// the parametrization theorem, F-map invariants and the linear lemmas.
Report run_linear_instance(const json& instance, const std::string& id);

/// { "chart", "eta", "G"?, "ref_point"?, "rule"?, "betas"?: [{"name", "beta"}], "seed"? }:
/// certification, kernel checks, horizontality preservation, deform and Dirac checks.
Report run_presymplectic_instance(const json& instance, const std::string& id, InstanceStats* stats = nullptr);

/// Dispatches on the payload shape ("check", "n" or "chart").
Report run_instance(const json& payload, const std::string& id);

/// Throws IoError when unreadable, ParseError when not JSON.
json read_json_file(const std::string& path);

}  // namespace presym::harness
