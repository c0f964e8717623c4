#include "presym/harness/report.hpp"

#include <fstream>

#include "presym/error.hpp"

namespace presym::harness {

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Skipped:
      return "skipped";
  }
  return "?";
}

CheckRecord& Report::slot(const std::string& name) {
  for (auto& c : checks_) {
    if (c.name == name) return c;
  }
  CheckRecord rec;
  rec.name = name;
  checks_.push_back(std::move(rec));
  return checks_.back();
}

const CheckRecord* Report::find(const std::string& name) const {
  for (const auto& c : checks_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void Report::record(const std::string& name, bool passed, double seconds, const std::string& detail,
                    std::optional<json> witness, std::optional<json> counterexample) {
  CheckRecord& c = slot(name);
  if (c.status == Status::Skipped && c.trials == 0) {
    c.status = Status::Pass;
    c.detail.clear();
  }
  ++c.trials;
  c.seconds += seconds;
  if (passed) {
    if (c.failures == 0 && c.detail.empty()) c.detail = detail;
    return;
  }
  if (c.failures++ == 0) {
    c.status = Status::Fail;
    c.detail = detail;
    c.witness = std::move(witness);
    c.counterexample = std::move(counterexample);
  }
}

void Report::skip(const std::string& name, const std::string& reason) {
  CheckRecord& c = slot(name);
  if (c.trials > 0) return;
  c.status = Status::Skipped;
  c.detail = reason;
}

void Report::absorb(const Report& other, const std::string& prefix) {
  for (const auto& c : other.checks_) {
    CheckRecord& mine = slot(prefix + c.name);
    if (c.trials == 0) {
      if (mine.trials == 0) {
        mine.status = c.status;
        mine.detail = c.detail;
      }
      continue;
    }
    if (mine.status == Status::Skipped && mine.trials == 0) {
      mine.status = Status::Pass;
      mine.detail.clear();
    }
    mine.trials += c.trials;
    mine.seconds += c.seconds;
    if (c.failures > 0 && mine.failures == 0) {
      mine.status = Status::Fail;
      mine.detail = c.detail;
      mine.witness = c.witness;
      mine.counterexample = c.counterexample;
    } else if (mine.failures == 0 && mine.detail.empty()) {
      mine.detail = c.detail;
    }
    mine.failures += c.failures;
  }
}

std::size_t Report::count(Status s) const {
  std::size_t n = 0;
  for (const auto& c : checks_) n += c.status == s;
  return n;
}

json Report::to_json(bool with_timing) const {
  json checks = json::array();
  json timing = json::object();
  double total = 0;
  for (const auto& c : checks_) {
    json j = {{"name", c.name}, {"status", status_name(c.status)}, {"trials", c.trials}, {"failures", c.failures}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    if (c.witness) j["witness"] = *c.witness;
    if (c.counterexample) j["counterexample"] = *c.counterexample;
    checks.push_back(std::move(j));
    timing[c.name] = c.seconds;
    total += c.seconds;
  }
  json out = {{kind_, id_},
              {"config", config_},
              {"checks", checks},
              {"summary",
               {{"checks", checks_.size()},
                {"pass", count(Status::Pass)},
                {"fail", count(Status::Fail)},
                {"skipped", count(Status::Skipped)}}}};
  if (with_timing) out["timing"] = {{"total_seconds", total}, {"checks", timing}};
  return out;
}

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write to " + path + " failed");
}

}  // namespace presym::harness
