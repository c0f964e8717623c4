#include "presym/harness/families.hpp"

#include "presym/harness/codec.hpp"
#include "presym/harness/random.hpp"

namespace presym::harness {

namespace {

Scalar x(int i) { return Scalar::variable(i); }

MultivectorField d(Chart c, int i, Scalar coef = Scalar(1)) { return MultivectorField::basis(c, {i}, std::move(coef)); }

DifferentialForm dx(Chart c, int i, int j, Scalar coef = Scalar(1)) {
  return DifferentialForm::basis(c, {i, j}, std::move(coef));
}

std::vector<Scalar> identity_map(int n) {
  std::vector<Scalar> phi;
  for (int i = 0; i < n; ++i) phi.push_back(x(i));
  return phi;
}

json beta_entry(const std::string& name, const DifferentialForm& beta) { return {{"name", name}, {"beta", to_json(beta)}}; }

/// Instance with betas derived from targets phi^* (normal form) as well as
/// explicitly given ones.
json assemble(const DifferentialForm& eta, const std::optional<DistributionFrame>& g, int rank,
              const std::vector<std::pair<std::string, std::vector<Scalar>>>& shears,
              const std::vector<std::pair<std::string, DifferentialForm>>& explicit_betas, std::uint64_t seed) {
  PreSymplecticData data = make_presymplectic(eta, g);
  json betas = json::array();
  betas.push_back(beta_entry("zero", DifferentialForm(eta.chart())));
  for (const auto& [name, phi] : shears) {
    try {
      betas.push_back(beta_entry(name, beta_for_target(data, pullback_normal_form(phi, rank))));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotInIZ) throw;
    }
  }
  for (const auto& [name, beta] : explicit_betas) betas.push_back(beta_entry(name, beta));
  json out = {{"chart", eta.dim()}, {"eta", to_json(eta)}, {"betas", betas}, {"seed", seed}};
  if (g) out["G"] = frame_to_json(*g);
  return out;
}

}  // namespace

json family_f1() {
  Chart c(4);
  DifferentialForm eta = dx(c, 0, 1);
  DistributionFrame g(c, {d(c, 0), d(c, 1)});
  auto shear = identity_map(4);
  shear[1] += x(2) * x(2);  // x2 -> x2 + x3^2
  auto shear2 = identity_map(4);
  shear2[0] += x(3) * Scalar(Rational(1, 2));  // x1 -> x1 + x4/2
  shear2[1] += x(2) * x(3);
  return assemble(eta, g, 2, {{"shear-x2+x3^2", shear}, {"shear-x1+x4/2,x2+x3x4", shear2}},
                  {{"constant", dx(c, 0, 2, Scalar(Rational(-3, 2)))},
                   {"x4-dx1-dx3", dx(c, 0, 2, x(3))},
                   {"x3-dx1-dx4", dx(c, 0, 3, x(2))},
                   {"x4-dx3-dx2", dx(c, 1, 2, -x(3))}},
                  11);
}

json family_f2() {
  Chart c(5);
  DifferentialForm eta = dx(c, 0, 1) + dx(c, 2, 3);
  DistributionFrame g(c, {d(c, 0), d(c, 1), d(c, 2), d(c, 3) + d(c, 4, x(0))});
  auto s1 = identity_map(5);
  s1[1] += x(4) * x(4);
  auto s2 = identity_map(5);
  s2[0] += x(2);
  s2[2] += x(3) * x(3);
  s2[3] += x(4) * x(4);
  auto s3 = identity_map(5);
  s3[0] += x(1);
  s3[1] -= x(2) * x(3);
  auto s4 = identity_map(5);
  s4[0] -= x(3) * x(4);
  s4[2] += x(4);
  s4[3] += x(4);
  return assemble(eta, g, 4,
                  {{"shear-x2+x5^2", s1}, {"shear-a", s2}, {"shear-b", s3}, {"shear-c", s4}},
                  {{"x3-dx2-dx5", dx(c, 1, 4, x(2))}, {"x1-dx3-dx5", dx(c, 2, 4, x(0))}, {"x5-dx1-dx3", dx(c, 0, 2, x(4))}},
                  12);
}

std::vector<std::pair<std::string, json>> bundled_families() { return {{"F1", family_f1()}, {"F2", family_f2()}}; }

json engineered_negative_case() {
  Chart c(4);
  DistributionFrame k(c, {d(c, 2), d(c, 3) + d(c, 0, x(2))});
  return {{"K", frame_to_json(k)}, {"z", to_json(MultivectorField::basis(c, {0, 1}))}, {"max_degree", 2}};
}

std::vector<std::string> generator_kinds() { return {"skew-form", "bivector-field", "horizontal-form", "presymplectic-instance"}; }

namespace {

json presymplectic_instance(Random& rng, const GenerateConfig& cfg) {
  const int n = cfg.dim;
  const int rank = 2 * ((n - 1) / 2);
  std::vector<Scalar> phi = random_shear(rng, n, cfg.max_coef_degree, 5);
  DifferentialForm eta = pullback_normal_form(phi, rank);
  std::optional<DistributionFrame> g;
  if (cfg.max_coef_degree > 0) {
    Chart c(n);
    std::vector<MultivectorField> frame;
    for (int i = 0; i < rank; ++i) frame.push_back(d(c, i));
    g = DistributionFrame(c, frame);
  }
  // a second shear on top of phi gives a closed rank-k target, hence an MC beta
  std::vector<Scalar> target = phi;
  std::vector<Scalar> extra = random_shear(rng, n, 1, 3);
  for (int i = 0; i < n; ++i) target[static_cast<std::size_t>(i)] += extra[static_cast<std::size_t>(i)] - x(i);
  std::vector<std::pair<std::string, DifferentialForm>> explicit_betas;
  if (rank > 0 && rank < n) {
    PreSymplecticData data = make_presymplectic(eta, g);
    explicit_betas.emplace_back("random-horizontal", random_horizontal_form(rng, data.kernel, 2, {1, 2, 1, 5}));
  }
  json out = assemble(eta, g, rank, {{"shear", target}}, explicit_betas, rng.integer(0, 1 << 30));
  out["kind"] = "presymplectic-instance";
  return out;
}

}  // namespace

json generate(const std::string& kind, const GenerateConfig& cfg) {
  if (cfg.dim < 1 || cfg.dim > Chart::kMaxDimension) throw Error(ErrorCode::InvalidConfig, "dimension must be in 1..8");
  if (cfg.max_coef_degree < 0) throw Error(ErrorCode::InvalidConfig, "negative coefficient degree");
  Random rng(cfg.seed);
  const Chart c(cfg.dim);
  FormShape shape{cfg.max_coef_degree, 3, 2, 100};
  if (kind == "skew-form") {
    return {{"kind", kind}, {"n", cfg.dim}, {"matrix", matrix_to_json(random_skew(rng, static_cast<std::size_t>(cfg.dim)).sharp())}};
  }
  if (kind == "bivector-field") {
    if (cfg.dim < 2) throw Error(ErrorCode::InvalidConfig, "bivector fields need dimension >= 2");
    return {{"kind", kind}, {"chart", cfg.dim}, {"z", to_json(random_multivector(rng, c, 2, shape))}};
  }
  if (kind == "presymplectic-instance") return presymplectic_instance(rng, cfg);
  if (kind == "horizontal-form") {
    if (cfg.dim < 3) throw Error(ErrorCode::InvalidConfig, "horizontal-form needs dimension >= 3");
    json inst = presymplectic_instance(rng, cfg);
    PreSymplecticData data = make_presymplectic(form_from_json(inst["eta"]),
                                                inst.contains("G") ? std::optional(frame_from_json(inst["G"], c)) : std::nullopt);
    int degree = static_cast<int>(rng.integer(1, std::min(3, cfg.dim)));
    DifferentialForm f = random_horizontal_form(rng, data.kernel, degree, {std::min(cfg.max_coef_degree, 2), 2, 2, 100});
    return {{"kind", kind}, {"chart", cfg.dim}, {"K", frame_to_json(data.kernel)}, {"form", to_json(f)}};
  }
  throw Error(ErrorCode::InvalidKind, "unknown kind \"" + kind + "\"");
}

}  // namespace presym::harness
