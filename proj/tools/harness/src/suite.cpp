#include "presym/harness/suite.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>

#include "presym/exterior/serialization.hpp"
#include "presym/harness/checks.hpp"
#include "presym/harness/codec.hpp"
#include "presym/harness/families.hpp"
#include "presym/harness/random.hpp"
#include "presym/koszul/linfty.hpp"

namespace presym::harness {

namespace {

struct Resolved {
  std::string suite;
  int dim;
  std::size_t trials;
  std::uint64_t seed;
  int form_degree;
  int coef_degree;
  std::optional<std::vector<Rational>> grid;

  json echo() const {
    json j{{"suite", suite}, {"dim", dim}, {"trials", trials}, {"seed", seed},
           {"max_form_degree", form_degree}, {"max_coef_degree", coef_degree}};
    if (grid) j["grid"] = point_to_json(*grid);
    return j;
  }
};

struct Defaults {
  int dim;
  std::size_t trials;
  int form_degree;
  int coef_degree;
};

const std::map<std::string, Defaults>& defaults() {
  static const std::map<std::string, Defaults> d{
      {"exterior", {4, 100, 3, 4}},     {"convention", {3, 100, 1, 2}}, {"linf-jacobi", {4, 25, 3, 2}},
      {"linalg", {4, 200, 2, 0}},       {"mc", {4, 20, 2, 1}},          {"presymplectic", {4, 4, 2, 1}},
      {"dirac", {3, 20, 2, 2}},
  };
  return d;
}

Resolved resolve(const SuiteConfig& c) {
  auto it = defaults().find(c.suite);
  if (it == defaults().end()) throw Error(ErrorCode::InvalidConfig, "unknown suite \"" + c.suite + "\"");
  const Defaults& d = it->second;
  Resolved r{c.suite, c.dim.value_or(d.dim), c.trials.value_or(d.trials), c.seed,
             c.max_form_degree.value_or(d.form_degree), c.max_coef_degree.value_or(d.coef_degree), c.grid};
  if (r.dim < 1 || r.dim > Chart::kMaxDimension) throw Error(ErrorCode::InvalidConfig, "dimension must be in 1..8");
  if (r.trials < 1) throw Error(ErrorCode::InvalidConfig, "trials must be at least 1");
  if (r.form_degree < 0) throw Error(ErrorCode::InvalidConfig, "max form degree must be nonnegative");
  if (r.coef_degree < 0) throw Error(ErrorCode::InvalidConfig, "max coefficient degree must be nonnegative");
  if (r.grid && r.grid->empty()) throw Error(ErrorCode::InvalidConfig, "grid needs at least one value");
  if ((r.suite == "convention" || r.suite == "dirac") && r.dim < 2) {
    throw Error(ErrorCode::InvalidConfig, r.suite + " needs dimension >= 2");
  }
  if (r.suite == "presymplectic" && r.dim < 3) throw Error(ErrorCode::InvalidConfig, "presymplectic needs dimension >= 3");
  return r;
}

/// One trial of a registered identity; its payload is the counterexample.
void trial(Report& r, const std::string& name, const json& inputs, const std::string& label = {}) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = run_identity(name, inputs);
  } catch (const Error& e) {
    o = {Status::Fail, e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string key = label.empty() ? name : label;
  if (o.status == Status::Skipped) {
    r.skip(key, o.detail);
    return;
  }
  bool ok = o.status == Status::Pass;
  r.record(key, ok, secs, ok ? std::string() : o.detail, ok ? std::nullopt : o.witness,
           ok ? std::nullopt : std::make_optional<json>(identity_payload(name, inputs)));
}

int draw_degree(Random& rng, int lo, int hi) { return static_cast<int>(rng.integer(lo, std::max(lo, hi))); }

// ---- suites -------------------------------------------------------------------

void exterior_suite(const Resolved& c, Report& r) {
  const Chart chart(c.dim);
  const int top = std::min(c.form_degree, c.dim);
  for (std::size_t t = 0; t < c.trials; ++t) {
    Random rng(sub_seed(c.seed, t));
    FormShape shape{c.coef_degree, 3, 2, 100};
    auto any_form = [&](int deg) {
      return rng.percent(25) ? random_rational_form(rng, chart, deg, shape) : random_form(rng, chart, deg, shape);
    };
    int p = draw_degree(rng, 0, top);
    trial(r, "d-squared", {{"alpha", to_json(any_form(p))}});

    int a = draw_degree(rng, 0, top), b = draw_degree(rng, 0, std::min(top, c.dim - a));
    trial(r, "graded-leibniz", {{"a", to_json(any_form(a))}, {"b", to_json(any_form(b))}});
    int a3 = draw_degree(rng, 0, 2), b3 = draw_degree(rng, 0, 2), c3 = draw_degree(rng, 0, 2);
    trial(r, "wedge-associativity",
          {{"a", to_json(random_form(rng, chart, a3, shape))}, {"b", to_json(random_form(rng, chart, b3, shape))},
           {"c", to_json(random_form(rng, chart, c3, shape))}});
    trial(r, "wedge-graded-commutativity",
          {{"a", to_json(random_form(rng, chart, a, shape))}, {"b", to_json(random_form(rng, chart, b, shape))}});

    int pd = draw_degree(rng, 1, std::min(3, c.dim)), qd = draw_degree(rng, 1, std::min(3, c.dim));
    trial(r, "schouten-graded-symmetry", {{"p", to_json(random_multivector(rng, chart, pd, shape))},
                                          {"q", to_json(random_multivector(rng, chart, qd, shape))}});

    int p2 = draw_degree(rng, 1, std::min(2, c.dim)), q2 = draw_degree(rng, 1, std::min(2, c.dim));
    int ad = draw_degree(rng, std::min(c.dim, p2 + q2 - 1), c.dim);
    trial(r, "schouten-derived-bracket", {{"p", to_json(random_multivector(rng, chart, p2, shape))},
                                          {"q", to_json(random_multivector(rng, chart, q2, shape))},
                                          {"alpha", to_json(random_form(rng, chart, ad, shape))}});

    int hp = draw_degree(rng, 1, std::min(2, c.dim));
    int ha = draw_degree(rng, 0, c.dim), hb = draw_degree(rng, 0, c.dim - ha);
    trial(r, "evaluate-homomorphism",
          {{"a", to_json(any_form(ha))}, {"b", to_json(any_form(hb))},
           {"p", to_json(random_multivector(rng, chart, hp, shape))}, {"point", point_to_json(random_point(rng, c.dim))}});

    trial(r, "derivative-crosscheck", {{"alpha", to_json(random_rational_form(rng, chart, draw_degree(rng, 0, top), shape))},
                                       {"point", point_to_json(random_point(rng, c.dim))}});
  }
}

void convention_suite(const Resolved& c, Report& r) {
  const Chart chart(c.dim);
  trial(r, "koszul-r2-example", json::object());
  trial(r, "contraction-order-example", json::object());
  trial(r, "lie-derivative-example", json::object());
  for (std::size_t t = 0; t < c.trials; ++t) {
    Random rng(sub_seed(c.seed, t));
    FormShape shape{c.coef_degree, 3, 2, 100};
    trial(r, "koszul-one-form-formula", {{"z", to_json(random_multivector(rng, chart, 2, shape))},
                                         {"a", to_json(random_form(rng, chart, 1, shape))},
                                         {"b", to_json(random_form(rng, chart, 1, shape))}});
  }
}

void jacobi_suite(const Resolved& c, Report& r) {
  const Chart chart(c.dim);
  const int top = std::min(c.form_degree, c.dim);
  std::size_t non_poisson = 0;
  for (std::size_t t = 0; t < c.trials; ++t) {
    Random rng(sub_seed(c.seed, t));
    FormShape zshape{c.coef_degree, 3, 2, 100};
    MultivectorField z = random_multivector(rng, chart, 2, zshape);
    // the first draw is forced away from the Poisson locus so lambda_3 is exercised
    for (int attempt = 0; t == 0 && attempt < 20 && KoszulContext(z).is_poisson(); ++attempt) {
      z = random_multivector(rng, chart, 2, zshape);
    }
    if (!KoszulContext(z).is_poisson()) ++non_poisson;
    FormShape shape{c.coef_degree, 2, 2, 100};
    std::vector<DifferentialForm> xs;
    for (int i = 0; i < 5; ++i) xs.push_back(random_form(rng, chart, draw_degree(rng, 0, top), shape));
    json zj = to_json(z);
    auto first = [&](std::size_t k) { return forms_to_json(std::vector<DifferentialForm>(xs.begin(), xs.begin() + k)); };
    for (std::size_t k = 1; k <= 5; ++k) {
      trial(r, "jacobi", {{"family", "lambda"}, {"z", zj}, {"inputs", first(k)}}, "jacobi:lambda:arity-" + std::to_string(k));
    }
    for (std::size_t k = 1; k <= 3; ++k) {
      trial(r, "jacobi", {{"family", "mu"}, {"z", zj}, {"inputs", first(k)}}, "jacobi:mu:arity-" + std::to_string(k));
    }
    trial(r, "lambda2-expressions", {{"z", zj}, {"a", to_json(xs[0])}, {"b", to_json(xs[1])}});
    trial(r, "lambda-graded-symmetry", {{"z", zj}, {"inputs", first(3)}});
    trial(r, "mu-lambda-relation", {{"z", zj}, {"inputs", first(3)}});
  }
  r.record("non-poisson-draw", non_poisson > 0, 0,
           non_poisson > 0 ? std::string() : "every bivector draw satisfied [Z,Z] = 0");
}

std::size_t linalg_rank(int n) { return n >= 3 ? static_cast<std::size_t>(2 * ((n - 1) / 2)) : (n == 2 ? 2 : 0); }

json rows_json(const Subspace<Rational>& s) { return matrix_to_json(s.basis().transpose()); }

void linalg_suite(const Resolved& c, Report& r) {
  const auto n = static_cast<std::size_t>(c.dim);
  const std::size_t k = linalg_rank(c.dim);
  Random seed_rng(c.seed);
  trial(r, "worked-kernel-example", {{"s", to_string(seed_rng.nonzero_rational(10))}});
  trial(r, "worked-kernel-example", {{"s", "0"}});
  trial(r, "worked-rank-breakout", json::object());
  for (std::size_t t = 0; t < c.trials; ++t) {
    Random rng(sub_seed(c.seed, t));
    SkewBilinear<Rational> eta = random_rank_skew(rng, n, k, 100);
    Subspace<Rational> ker = rank_and_kernel(eta).kernel;
    Subspace<Rational> g = random_complement(rng, ker, 100);
    Bivector<Rational> z = Z_from_eta_G(eta, g);
    // a third of the draws are not horizontal (only meaningful when dim K >= 2)
    bool horizontal = ker.dimension() < 2 || t % 3 != 0;
    SkewBilinear<Rational> beta = random_adapted_skew(rng, ker, g, horizontal, 10);
    for (int attempt = 0; attempt < 10 && !in_I_Z(beta, z); ++attempt) {
      beta = random_adapted_skew(rng, ker, g, horizontal, 10);
    }
    json inst{{"n", n}, {"eta", matrix_to_json(eta.sharp())}, {"G", rows_json(g)}, {"beta", matrix_to_json(beta.sharp())}};
    r.absorb(run_linear_instance(inst, "linalg-" + std::to_string(t)), "");
  }
}

PreSymplecticData family_data(const json& inst) {
  const Chart chart(inst.at("chart").get<int>());
  std::optional<DistributionFrame> g;
  if (inst.contains("G")) g = frame_from_json(inst["G"], chart);
  return make_presymplectic(form_from_json(inst.at("eta"), chart.dimension()), g);
}

void mc_suite(const Resolved& c, Report& r) {
  auto with_grid = [&](json in) {
    if (c.grid) in["grid"] = point_to_json(*c.grid);
    return in;
  };
  for (const auto& [id, inst] : bundled_families()) {
    PreSymplecticData data = family_data(inst);
    json zj = to_json(data.z);
    for (const auto& b : inst.at("betas")) {
      trial(r, "mc-equivalence", with_grid({{"z", zj}, {"beta", b.at("beta")}}), "mc-equivalence:" + id);
    }
  }
  trial(r, "f-two-by-two", {{"t", "1"}});
  const Chart chart(c.dim);
  for (std::size_t t = 0; t < c.trials; ++t) {
    Random rng(sub_seed(c.seed, t));
    Rational s = rng.rational(10);
    trial(r, "f-two-by-two", {{"t", to_string(s)}});
    // random pairs: constant Z with a polynomial beta, or polynomial Z with a constant beta
    bool constant_z = t % 2 == 0;
    MultivectorField z = random_multivector(rng, chart, 2, {constant_z ? 0 : c.coef_degree, 3, 1, 10});
    DifferentialForm beta = random_form(rng, chart, 2, {constant_z ? c.coef_degree : 0, 2, 1, 10});
    trial(r, "mc-equivalence", with_grid({{"z", to_json(z)}, {"beta", to_json(beta)}}), "mc-equivalence:random");
    // a closed beta under a constant Z: MC exactly when lambda_2(beta, beta) vanishes
    DifferentialForm closed = de_rham(random_form(rng, chart, 1, {c.coef_degree + 1, 2, 1, 10}));
    if (!closed.is_zero()) {
      MultivectorField zc = random_multivector(rng, chart, 2, {0, 2, 1, 10});
      trial(r, "mc-equivalence", with_grid({{"z", to_json(zc)}, {"beta", to_json(closed)}}), "mc-equivalence:closed");
    }
  }
}

void presymplectic_suite(const Resolved& c, Report& r) {
  InstanceStats stats;
  for (const auto& [id, inst] : bundled_families()) r.absorb(run_presymplectic_instance(inst, id, &stats), id + "/");
  trial(r, "preservation-witness", engineered_negative_case(), "engineered-negative-case");
  for (std::size_t t = 0; t < c.trials; ++t) {
    json inst = generate("presymplectic-instance", {c.dim, c.coef_degree, sub_seed(c.seed, t)});
    r.absorb(run_presymplectic_instance(inst, "generated-" + std::to_string(t), &stats), "generated/");
  }
  r.record("lambda3-contributes", stats.lambda3_contributing > 0, 0,
           std::to_string(stats.lambda3_contributing) + " of " + std::to_string(stats.deformations) +
               " deformations (" + std::to_string(stats.maurer_cartan) + " mc)");
}

void dirac_suite(const Resolved& c, Report& r) {
  const Chart chart(c.dim);
  for (std::size_t t = 0; t < c.trials; ++t) {
    Random rng(sub_seed(c.seed, t));
    DifferentialForm eta = t % 2 == 0 ? de_rham(random_form(rng, chart, 1, {c.coef_degree + 1, 3, 2, 10}))
                                      : random_form(rng, chart, 2, {c.coef_degree, 3, 2, 10});
    trial(r, "dirac-graph", {{"eta", to_json(eta)}});

    json inst = generate("presymplectic-instance", {c.dim, std::min(c.coef_degree, 1), sub_seed(c.seed, t)});
    PreSymplecticData data = family_data(inst);
    json zj = to_json(data.z);
    for (const auto& b : inst.at("betas")) {
      trial(r, "dirac-phi-z", {{"z", zj}, {"beta", b.at("beta")}});
    }
    trial(r, "dirac-phi-z", {{"z", zj}, {"beta", to_json(random_form(rng, chart, 2, {1, 2, 1, 5}))}});
  }
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, d] : defaults()) out.push_back(name);
  return out;
}

Report run_suite(const SuiteConfig& config) {
  Resolved c = resolve(config);
  DegreeCapScope cap(kHarnessDegreeCap);
  Report r("suite", c.suite, c.echo());
  static const std::map<std::string, std::function<void(const Resolved&, Report&)>> runners{
      {"exterior", exterior_suite}, {"convention", convention_suite}, {"linf-jacobi", jacobi_suite},
      {"linalg", linalg_suite},     {"mc", mc_suite},                 {"presymplectic", presymplectic_suite},
      {"dirac", dirac_suite},
  };
  runners.at(c.suite)(c, r);
  return r;
}

}  // namespace presym::harness
