#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace presym::harness {

using nlohmann::json;

enum class Status { Pass, Fail, Skipped };

std::string_view status_name(Status s);

/// Aggregate over all trials of one named check.
struct CheckRecord {
  std::string name;
  Status status = Status::Pass;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::string detail;
  std::optional<json> witness;         // e.g. a non-horizontal output form
  std::optional<json> counterexample;  // replayable with `presym run`
  double seconds = 0;
};

class Report {
 public:
  /// `kind` is "suite" or "instance".
  Report(std::string kind, std::string id, json config = json::object())
      : kind_(std::move(kind)), id_(std::move(id)), config_(std::move(config)) {}

  /// Adds one trial outcome to the record `name` (created on first use). The
  /// first failure keeps its detail, witness and counterexample.
  void record(const std::string& name, bool passed, double seconds, const std::string& detail = {},
              std::optional<json> witness = std::nullopt, std::optional<json> counterexample = std::nullopt);
  /// A check that could not run; only counts when nothing else was recorded.
  void skip(const std::string& name, const std::string& reason);
  /// Appends the records of another report, prefixing their names.
  void absorb(const Report& other, const std::string& prefix);

  const std::vector<CheckRecord>& checks() const { return checks_; }
  const CheckRecord* find(const std::string& name) const;
  std::size_t count(Status s) const;
  bool passed() const { return count(Status::Fail) == 0; }

  /// Wall times go to a separate "timing" object so the rest is reproducible.
  json to_json(bool with_timing = true) const;

 private:
  CheckRecord& slot(const std::string& name);

  std::string kind_;
  std::string id_;
  json config_;
  std::vector<CheckRecord> checks_;
};

/// Writes pretty JSON; throws Error(IoError).
void write_json(const json& j, const std::string& path);

}  // namespace presym::harness
