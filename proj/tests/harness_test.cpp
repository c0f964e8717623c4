#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "support/printers.hpp"
#include "presym/exterior/serialization.hpp"
#include "presym/harness/checks.hpp"
#include "presym/harness/codec.hpp"
#include "presym/harness/families.hpp"
#include "presym/harness/suite.hpp"

using namespace presym;
using namespace presym::harness;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "presym-harness-test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

SuiteConfig config(const std::string& suite) {
  SuiteConfig c;
  c.suite = suite;
  return c;
}

int cli(const std::string& args) {
  std::string cmd = std::string(PRESYM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Report, AggregatesTrials) {
  Report r("suite", "demo");
  r.record("a", true, 0.5);
  r.record("a", false, 0.25, "first", json{{"w", 1}}, json{{"check", "x"}});
  r.record("a", false, 0.25, "second");
  r.skip("b", "no data");
  r.skip("c", "no data");
  r.record("c", true, 0);
  const CheckRecord* a = r.find("a");
  ASSERT_NE(a, nullptr);
  EXPECT_EQ(a->status, Status::Fail);
  EXPECT_EQ(a->trials, 3u);
  EXPECT_EQ(a->failures, 2u);
  EXPECT_EQ(a->detail, "first");
  EXPECT_EQ(r.find("b")->status, Status::Skipped);
  EXPECT_EQ(r.find("c")->status, Status::Pass);
  EXPECT_TRUE(r.find("c")->detail.empty());
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.count(Status::Skipped), 1u);

  Report outer("suite", "outer");
  outer.absorb(r, "inner/");
  EXPECT_NE(outer.find("inner/a"), nullptr);
  json j = r.to_json(false);
  EXPECT_FALSE(j.contains("timing"));
  EXPECT_TRUE(r.to_json(true).contains("timing"));
}

TEST(Codec, RoundTrips) {
  std::vector<Rational> p{Rational(1, 2), Rational(-3), Rational(0)};
  EXPECT_EQ(point_from_json(point_to_json(p), 3), p);
  EXPECT_EQ(point_from_json(json::array({1, "2/3"}), 2), (std::vector<Rational>{Rational(1), Rational(2, 3)}));
  EXPECT_THROW(point_from_json(json::array({1}), 2), Error);
  EXPECT_THROW(point_from_json(json::array({"1/0", 1}), 2), Error);

  Matrix<Scalar> m = matrix_from_json(json::array({json::array({"0", "x1"}), json::array({"-x1", "0"})}), 2);
  EXPECT_FALSE(all_constant(m));
  EXPECT_EQ(matrix_from_json(matrix_to_json(m), 2), m);
  EXPECT_THROW(matrix_from_json(json::array({json::array({"x3"})}), 2), Error);

  Chart c(3);
  DistributionFrame k(c, {MultivectorField::basis(c, {2}, Scalar::parse("x1/(1 + x2^2)"))});
  EXPECT_EQ(frame_from_json(frame_to_json(k), c).sections(), k.sections());
  EXPECT_THROW(member(json::object(), "eta"), Error);
}

TEST(Identities, PayloadReplays) {
  Chart c(3);
  json inputs{{"alpha", to_json(DifferentialForm::basis(c, {0}, Scalar::parse("x2*x3")))}};
  EXPECT_EQ(run_identity("d-squared", inputs).status, Status::Pass);
  Report replay = run_instance(identity_payload("d-squared", inputs), "replay");
  EXPECT_TRUE(replay.passed());
  EXPECT_EQ(replay.checks().size(), 1u);

  EXPECT_EQ(run_identity("preservation-witness", engineered_negative_case()).status, Status::Pass);
  EXPECT_THROW(run_identity("no-such-check", json::object()), Error);
  EXPECT_THROW(run_identity("d-squared", json::object()), Error);
  for (const auto& name : identity_names()) EXPECT_FALSE(name.empty());
}

TEST(Instances, BundledFamilies) {
  for (const auto& [id, inst] : bundled_families()) {
    InstanceStats stats;
    Report r = run_presymplectic_instance(inst, id, &stats);
    EXPECT_TRUE(r.passed()) << id << "\n" << r.to_json(false).dump(2);
    EXPECT_GT(stats.deformations, 0u);
  }
}

TEST(Instances, CannotCertifyIsSkipped) {
  Chart c(2);
  json inst{{"chart", 2}, {"eta", to_json(DifferentialForm::basis(c, {0, 1}, Scalar::parse("x1")))}};
  Report r = run_instance(inst, "uncertified");
  EXPECT_TRUE(r.passed());
  EXPECT_GT(r.count(Status::Skipped), 0u);
}

TEST(Instances, LinearWorkedExample) {
  json inst{{"n", 4},
            {"eta", json::array({json::array({"0", "1", "0", "0"}), json::array({"-1", "0", "0", "0"}),
                                 json::array({"0", "0", "0", "0"}), json::array({"0", "0", "0", "0"})})},
            {"beta", json::array({json::array({"0", "0", "0", "1"}), json::array({"0", "0", "0", "0"}),
                                  json::array({"0", "0", "0", "0"}), json::array({"-1", "0", "0", "0"})})}};
  Report r = run_linear_instance(inst, "worked");
  EXPECT_TRUE(r.passed()) << r.to_json(false).dump(2);
}

TEST(Generators, SkewFormSnapshot) {
  json g = generate("skew-form", {4, 0, 1});
  json expected = json::array({json::array({"0", "55/29", "-32/31", "-14/85"}),
                               json::array({"-55/29", "0", "-89/29", "-15/49"}),
                               json::array({"32/31", "89/29", "0", "65/77"}),
                               json::array({"14/85", "15/49", "-65/77", "0"})});
  EXPECT_EQ(g.at("matrix"), expected);
  EXPECT_EQ(generate("skew-form", {4, 0, 1}), g);
  EXPECT_NE(generate("skew-form", {4, 0, 2}), g);
  EXPECT_THROW(generate("nonsense", {}), Error);
  EXPECT_THROW(generate("skew-form", {9, 0, 1}), Error);
}

TEST(Generators, HorizontalFormsAreHorizontal) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    json g = generate("horizontal-form", {4, 1, seed});
    Chart c(4);
    DistributionFrame k = frame_from_json(g.at("K"), c);
    EXPECT_TRUE(is_horizontal(form_from_json(g.at("form"), 4), k));
  }
}

TEST(Generators, PresymplecticInstancesPass) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    json inst = generate("presymplectic-instance", {4, 1, seed});
    EXPECT_TRUE(run_instance(inst, "generated").passed());
  }
  json flat = generate("presymplectic-instance", {4, 0, 1});
  EXPECT_FALSE(flat.contains("G"));
}

TEST(Suites, DeterministicAndValidated) {
  SuiteConfig cfg = config("convention");
  cfg.trials = 5;
  cfg.seed = 42;
  json first = run_suite(cfg).to_json(false);
  EXPECT_EQ(run_suite(cfg).to_json(false), first);
  cfg.seed = 43;
  EXPECT_NE(run_suite(cfg).to_json(false), first);
  EXPECT_THROW(run_suite(config("nonsense")), Error);
  SuiteConfig zero = config("exterior");
  zero.trials = 0;
  EXPECT_THROW(run_suite(zero), Error);
  EXPECT_EQ(suite_names().size(), 7u);
}

TEST(Cli, ExitCodes) {
  auto report = scratch("report.json");
  EXPECT_EQ(cli("verify convention --trials 3 --report " + report.string()), 0);
  EXPECT_TRUE(std::filesystem::exists(report));
  EXPECT_EQ(cli("verify nonsense"), 2);
  EXPECT_EQ(cli("verify exterior --trials 0"), 2);
  EXPECT_EQ(cli("generate nonsense"), 2);
  EXPECT_EQ(cli("--no-such-flag"), 2);

  auto bad = scratch("bad.json");
  std::ofstream(bad) << "{ not json";
  EXPECT_EQ(cli("run " + bad.string()), 2);
  EXPECT_EQ(cli("run " + scratch("missing.json").string()), 2);

  auto inst = scratch("instance.json");
  std::ofstream(inst) << generate("presymplectic-instance", {4, 1, 7}).dump();
  EXPECT_EQ(cli("run " + inst.string() + " --report " + report.string()), 0);
}
