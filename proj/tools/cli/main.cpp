#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "presym/error.hpp"
#include "presym/harness/checks.hpp"
#include "presym/harness/families.hpp"
#include "presym/harness/suite.hpp"

using namespace presym;
using namespace presym::harness;

namespace {

constexpr int kUsageError = 2;

bool input_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::SchemaError:
    case ErrorCode::ParseError:
    case ErrorCode::InvalidConfig:
    case ErrorCode::IoError:
    case ErrorCode::InvalidKind:
      return true;
    default:
      return false;
  }
}

/// --report wins; otherwise $PRESYM_REPORT_DIR/<stem>.json; otherwise stdout.
std::string report_path(const std::string& explicit_path, const std::string& stem) {
  if (!explicit_path.empty()) return explicit_path;
  if (const char* dir = std::getenv("PRESYM_REPORT_DIR"); dir && *dir) {
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / (stem + ".json")).string();
  }
  return {};
}

int emit(const Report& r, const std::string& path) {
  json j = r.to_json();
  if (path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json(j, path);
  }
  std::cerr << r.count(Status::Pass) << " passed, " << r.count(Status::Fail) << " failed, " << r.count(Status::Skipped)
            << " skipped" << (path.empty() ? "" : " (report: " + path + ")") << '\n';
  for (const auto& c : r.checks()) {
    if (c.status == Status::Fail) std::cerr << "FAIL " << c.name << ": " << c.detail << '\n';
  }
  return r.passed() ? 0 : 1;
}

std::vector<Rational> parse_grid(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.emplace_back(item);
      out.back().canonicalize();
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::InvalidConfig, "bad grid value \"" + item + "\"");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification harness for pre-symplectic deformations"};
  app.require_subcommand(1);

  SuiteConfig suite;
  int dim = 0, form_degree = -1, coef_degree = -1;
  std::size_t trials = 0;
  std::string grid, report;
  auto* verify = app.add_subcommand("verify", "Run a randomized verification suite");
  verify->add_option("suite", suite.suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--dim", dim, "Chart dimension");
  verify->add_option("--trials", trials, "Number of randomized trials");
  verify->add_option("--seed", suite.seed, "64-bit seed");
  verify->add_option("--max-form-degree", form_degree, "Largest form degree drawn");
  verify->add_option("--max-coef-degree", coef_degree, "Largest coefficient polynomial degree");
  verify->add_option("--grid", grid, "Comma-separated coordinate values of the sample grid");
  verify->add_option("--report", report, "Report path (default: $PRESYM_REPORT_DIR or stdout)");

  std::string instance_path;
  auto* run = app.add_subcommand("run", "Run the checks for one instance or counterexample file");
  run->add_option("file", instance_path, "Instance JSON")->required();
  run->add_option("--report", report, "Report path (default: $PRESYM_REPORT_DIR or stdout)");

  std::string kind, out;
  GenerateConfig gen;
  auto* generate_cmd = app.add_subcommand("generate", "Write a random instance");
  generate_cmd->add_option("kind", kind, "One of: skew-form, bivector-field, horizontal-form, presymplectic-instance")
      ->required();
  generate_cmd->add_option("--seed", gen.seed, "64-bit seed");
  generate_cmd->add_option("--dim", gen.dim, "Chart dimension");
  generate_cmd->add_option("--max-coef-degree", gen.max_coef_degree, "Coefficient (shear) degree");
  generate_cmd->add_option("--out", out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (verify->parsed()) {
      if (verify->count("--dim")) suite.dim = dim;
      if (verify->count("--trials")) suite.trials = trials;
      if (verify->count("--max-form-degree")) suite.max_form_degree = form_degree;
      if (verify->count("--max-coef-degree")) suite.max_coef_degree = coef_degree;
      if (!grid.empty()) suite.grid = parse_grid(grid);
      Report r = run_suite(suite);
      return emit(r, report_path(report, suite.suite));
    }
    if (run->parsed()) {
      json payload = read_json_file(instance_path);
      std::string stem = std::filesystem::path(instance_path).stem().string();
      Report r = run_instance(payload, stem);
      return emit(r, report_path(report, stem));
    }
    json j = generate(kind, gen);
    if (out.empty()) {
      std::cout << j.dump(2) << '\n';
    } else {
      write_json(j, out);
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return input_error(e.code()) ? kUsageError : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
