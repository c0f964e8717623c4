#include <cmath>
#include <complex>
#include <functional>
#include <map>

#include "presym/harness/checks.hpp"
#include "presym/harness/codec.hpp"
#include "presym/koszul/linfty.hpp"

namespace presym::harness {

namespace {

using Check = std::function<Outcome(const json&)>;

Outcome verdict(bool ok, std::string detail = {}, std::optional<json> witness = std::nullopt) {
  return {ok ? Status::Pass : Status::Fail, std::move(detail), std::move(witness)};
}

/// Passes when `diff` is zero; otherwise reports it as witness.
Outcome zero(const DifferentialForm& diff, const std::string& what) {
  if (diff.is_zero()) return verdict(true);
  return verdict(false, what + " is nonzero", to_json(diff));
}

DifferentialForm form(const json& in, const char* key) { return form_from_json(member(in, key)); }
MultivectorField field(const json& in, const char* key) { return multivector_from_json(member(in, key)); }

int degree_of(const DifferentialForm& f) {
  auto d = f.homogeneous_degree();
  if (!d) throw Error(ErrorCode::InhomogeneousInput, "check inputs must be homogeneous");
  return *d;
}

// ---- exterior calculus ------------------------------------------------------

Outcome d_squared(const json& in) { return zero(de_rham(de_rham(form(in, "alpha"))), "d(d alpha)"); }

Outcome graded_leibniz(const json& in) {
  DifferentialForm a = form(in, "a"), b = form(in, "b");
  DifferentialForm rhs = wedge(de_rham(a), b);
  DifferentialForm tail = wedge(a, de_rham(b));
  rhs += degree_of(a) % 2 ? -tail : tail;
  return zero(de_rham(wedge(a, b)) - rhs, "d(a^b) - da^b -+ a^db");
}

Outcome wedge_associativity(const json& in) {
  DifferentialForm a = form(in, "a"), b = form(in, "b"), c = form(in, "c");
  return zero(wedge(wedge(a, b), c) - wedge(a, wedge(b, c)), "(a^b)^c - a^(b^c)");
}

Outcome wedge_graded_commutativity(const json& in) {
  DifferentialForm a = form(in, "a"), b = form(in, "b");
  DifferentialForm ba = wedge(b, a);
  if ((degree_of(a) * degree_of(b)) % 2) ba = -ba;
  return zero(wedge(a, b) - ba, "a^b -+ b^a");
}

Outcome schouten_symmetry(const json& in) {
  MultivectorField p = field(in, "p"), q = field(in, "q");
  auto dp = p.homogeneous_degree(), dq = q.homogeneous_degree();
  if (!dp || !dq) throw Error(ErrorCode::InhomogeneousInput, "schouten symmetry inputs must be homogeneous");
  MultivectorField qp = schouten(q, p);
  MultivectorField sum = schouten(p, q);
  sum += ((*dp - 1) * (*dq - 1)) % 2 ? -qp : qp;
  if (sum.is_zero()) return verdict(true);
  return verdict(false, "[P,Q] + (-1)^{(p-1)(q-1)}[Q,P] is nonzero", to_json(sum));
}

// i([P, Q]) = [[i(P), d], i(Q)] with graded commutators; deg i(P) = -p.
Outcome derived_bracket(const json& in) {
  MultivectorField p = field(in, "p"), q = field(in, "q");
  DifferentialForm alpha = form(in, "alpha");
  auto dp = p.homogeneous_degree(), dq = q.homogeneous_degree();
  if (!dp || !dq) throw Error(ErrorCode::InhomogeneousInput, "derived bracket inputs must be homogeneous");
  auto ipd = [&](const DifferentialForm& f) {
    DifferentialForm a = contract(p, de_rham(f)), b = de_rham(contract(p, f));
    return *dp % 2 ? a + b : a - b;
  };
  DifferentialForm first = ipd(contract(q, alpha));
  DifferentialForm second = contract(q, ipd(alpha));
  DifferentialForm nested = ((1 - *dp) * *dq) % 2 ? first + second : first - second;
  return zero(contract(schouten(p, q), alpha) - nested, "i([P,Q]) - [[i(P), d], i(Q)]");
}

Outcome evaluate_homomorphism(const json& in) {
  DifferentialForm a = form(in, "a"), b = form(in, "b");
  MultivectorField p = field(in, "p");
  std::vector<Rational> pt = point_from_json(member(in, "point"), static_cast<std::size_t>(a.dim()));
  DifferentialForm w = evaluate(wedge(a, b), pt) - wedge(evaluate(a, pt), evaluate(b, pt));
  if (!w.is_zero()) return verdict(false, "evaluate does not commute with wedge", to_json(w));
  return zero(evaluate(contract(p, a), pt) - contract(evaluate(p, pt), evaluate(a, pt)), "evaluate vs contract");
}

// Exact partial derivatives against complex-step differentiation, relative
// tolerance 1e-9 scaled by max(|exact|, |value|, 1).
Outcome derivative_crosscheck(const json& in) {
  DifferentialForm alpha = form(in, "alpha");
  const auto n = static_cast<std::size_t>(alpha.dim());
  std::vector<Rational> pt = point_from_json(member(in, "point"), n);
  constexpr double h = 1e-20;
  double worst = 0;
  for (const auto& [b, c] : alpha.terms()) {
    for (std::size_t i = 0; i < n; ++i) {
      double exact = c.derivative(static_cast<int>(i)).evaluate(pt).get_d();
      std::vector<std::complex<double>> z;
      for (const auto& q : pt) z.emplace_back(q.get_d(), 0.0);
      double value = c.evaluate(pt).get_d();
      z[i] += std::complex<double>(0.0, h);
      double approx = c.evaluate_as<std::complex<double>>(z).imag() / h;
      double scale = std::max({std::abs(exact), std::abs(value), 1.0});
      worst = std::max(worst, std::abs(approx - exact) / scale);
    }
  }
  return verdict(worst <= 1e-9, "max relative deviation " + std::to_string(worst));
}

// ---- conventions and brackets ---------------------------------------------

Outcome koszul_one_form_formula(const json& in) {
  KoszulContext ctx(field(in, "z"));
  DifferentialForm a = form(in, "a"), b = form(in, "b");
  return zero(koszul_bracket(a, b, ctx) - koszul_bracket_one_forms(a, b, ctx), "definition - 1-form formula");
}

Outcome koszul_r2_example(const json&) {
  Chart c(2);
  KoszulContext ctx(MultivectorField::basis(c, {0, 1}, Scalar::variable(0)));
  DifferentialForm dx1 = DifferentialForm::basis(c, {0}), dx2 = DifferentialForm::basis(c, {1});
  DifferentialForm def = koszul_bracket(dx1, dx2, ctx), formula = koszul_bracket_one_forms(dx1, dx2, ctx);
  bool ok = def == dx1 && formula == dx1;
  return verdict(ok, "[dx1, dx2] = " + to_json(def).dump(), ok ? std::nullopt : std::make_optional<json>(to_json(def)));
}

Outcome contraction_order_example(const json&) {
  Chart c(2);
  DifferentialForm r = contract(MultivectorField::basis(c, {0, 1}, Scalar::variable(0)), DifferentialForm::basis(c, {0, 1}));
  return verdict(r == DifferentialForm::function(c, -Scalar::variable(0)), "i(x1 d1^d2)(dx1^dx2) = " + to_json(r).dump());
}

Outcome lie_derivative_example(const json&) {
  Chart c(2);
  DifferentialForm r = lie_derivative(MultivectorField::basis(c, {0, 1}, Scalar::variable(0)), DifferentialForm::basis(c, {0, 1}));
  return verdict(r == DifferentialForm::basis(c, {0}), "L(x1 d1^d2)(dx1^dx2) = " + to_json(r).dump());
}

std::vector<ShiftedForm> shifted_inputs(const json& in) {
  std::vector<ShiftedForm> xs;
  for (const auto& f : forms_from_json(member(in, "inputs"))) xs.emplace_back(f);
  return xs;
}

Outcome lambda2_expressions(const json& in) {
  KoszulContext ctx(field(in, "z"));
  DifferentialForm a = form(in, "a"), b = form(in, "b");
  ShiftedForm l = lambda(ShiftedForm(a), ShiftedForm(b), ctx);
  return zero(l.form() - lambda2_lie_expansion(a, b, ctx), "bracket expression - L_Z expression");
}

int swap_sign(const ShiftedForm& a, const ShiftedForm& b) {
  return (a.shifted_degree() * b.shifted_degree()) % 2 ? -1 : 1;
}

Outcome lambda_graded_symmetry(const json& in) {
  KoszulContext ctx(field(in, "z"));
  auto xs = shifted_inputs(in);
  if (xs.size() != 3) throw Error(ErrorCode::SchemaError, "lambda-graded-symmetry needs three inputs");
  const auto& a = xs[0];
  const auto& b = xs[1];
  const auto& c = xs[2];
  DifferentialForm d2 = lambda(a, b, ctx).form() - lambda(b, a, ctx).form() * Scalar(swap_sign(a, b));
  if (!d2.is_zero()) return verdict(false, "lambda_2 not graded symmetric", to_json(d2));
  DifferentialForm d3 = lambda(a, b, c, ctx).form() - lambda(b, a, c, ctx).form() * Scalar(swap_sign(a, b));
  if (!d3.is_zero()) return verdict(false, "lambda_3 not symmetric in slots 1,2", to_json(d3));
  d3 = lambda(a, b, c, ctx).form() - lambda(a, c, b, ctx).form() * Scalar(swap_sign(b, c));
  return zero(d3, "lambda_3 asymmetry in slots 2,3");
}

Outcome mu_lambda_relation(const json& in) {
  KoszulContext ctx(field(in, "z"));
  auto xs = shifted_inputs(in);
  if (xs.size() != 3) throw Error(ErrorCode::SchemaError, "mu-lambda-relation needs three inputs");
  const int sign[] = {1, -1, 1};
  for (std::size_t k = 1; k <= 3; ++k) {
    std::span<const ShiftedForm> args(xs.data(), k);
    DifferentialForm diff = mu(static_cast<int>(k), args, ctx).form() - lambda(static_cast<int>(k), args, ctx).form() * Scalar(sign[k - 1]);
    if (!diff.is_zero()) return verdict(false, "mu_" + std::to_string(k) + " relation fails", to_json(diff));
  }
  return verdict(true);
}

Outcome jacobi(const json& in) {
  KoszulContext ctx(field(in, "z"));
  auto xs = shifted_inputs(in);
  std::string family = member(in, "family").get<std::string>();
  if (family != "lambda" && family != "mu") throw Error(ErrorCode::SchemaError, "family must be lambda or mu");
  DifferentialForm j = jacobiator(xs, ctx, family == "mu" ? BracketFamily::Mu : BracketFamily::Lambda);
  Outcome o = zero(j, "arity-" + std::to_string(xs.size()) + " jacobiator");
  if (o.status == Status::Pass) o.detail = ctx.is_poisson() ? "poisson" : "non-poisson";
  return o;
}

// ---- Maurer-Cartan and Dirac ------------------------------------------------

std::vector<Rational> grid_values(const json& in) {
  if (!in.contains("grid")) return default_grid_values();
  const json& g = in["grid"];
  return point_from_json(g, g.is_array() ? g.size() : 0);
}

Outcome mc_equivalence(const json& in) {
  KoszulContext ctx(field(in, "z"));
  DifferentialForm beta = form(in, "beta");
  McEquivalence r;
  try {
    r = check_mc_equivalence(beta, ctx, grid_values(in));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::GenericallySingular) throw;
    return {Status::Skipped, "generically-singular"};
  }
  std::string detail = std::string(r.maurer_cartan ? "mc" : "not mc") + ", " + (r.closed ? "closed" : "not closed") + ", " +
                       (r.symbolic ? "symbolic" : "grid " + std::to_string(r.points_checked) + " points");
  return verdict(r.agrees(), detail, r.agrees() ? std::nullopt : std::make_optional<json>(to_json(r.residual)));
}

Outcome f_two_by_two(const json& in) {
  Rational t = point_from_json(json::array({member(in, "t")}), 1)[0];
  SkewBilinear<Rational> beta = skew_from_entries<Rational>(2, {{0, 1, t}});
  Bivector<Rational> z = bivector_from_entries<Rational>(2, {{0, 1, Rational(1)}});
  if (t == 1) return verdict(!in_I_Z(beta, z), "t = 1 is the boundary of I_Z");
  Rational expected = t / (1 - t);
  bool linear = F_map(beta, z) == skew_from_entries<Rational>(2, {{0, 1, expected}});
  Chart c(2);
  KoszulContext ctx(MultivectorField::basis(c, {0, 1}));
  SkewBilinear<Scalar> sym = F_symbolic(DifferentialForm::basis(c, {0, 1}, Scalar(t)), ctx);
  bool symbolic = to_form(sym, c) == DifferentialForm::basis(c, {0, 1}, Scalar(expected));
  return verdict(linear && symbolic, "F = " + to_string(expected) + " e1*^e2*");
}

// eta = e1*^e2* on R^4, G = span(e1, e2), K = span(e3, e4), Z = e1^e2.
Outcome worked_kernel_example(const json& in) {
  Rational s = point_from_json(json::array({member(in, "s")}), 1)[0];
  SkewBilinear<Rational> eta = skew_from_entries<Rational>(4, {{0, 1, Rational(1)}});
  Subspace<Rational> g = Subspace<Rational>::span({{1, 0, 0, 0}, {0, 1, 0, 0}}, 4);
  SkewBilinear<Rational> beta = -SkewBilinear<Rational>(skew_from_entries<Rational>(4, {{0, 2, s}}));  // s e3*^e1*
  RankKernel<Rational> rk = rank_and_kernel(dirac_exp(eta, g, beta));
  Subspace<Rational> expected = Subspace<Rational>::span({{0, s, 1, 0}, {0, 0, 0, 1}}, 4);
  return verdict(rk.rank == 2 && rk.kernel == expected, "rank " + std::to_string(rk.rank));
}

Outcome worked_rank_breakout(const json&) {
  SkewBilinear<Rational> eta = skew_from_entries<Rational>(4, {{0, 1, Rational(1)}});
  Subspace<Rational> g = Subspace<Rational>::span({{1, 0, 0, 0}, {0, 1, 0, 0}}, 4);
  SkewBilinear<Rational> beta = skew_from_entries<Rational>(4, {{2, 3, Rational(1)}});
  std::size_t r = rank(dirac_exp(eta, g, beta).sharp());
  return verdict(r == 4, "rank " + std::to_string(r));
}

Outcome dirac_graph(const json& in) {
  DifferentialForm eta = form(in, "eta");
  bool closed = de_rham(eta).is_zero();
  bool dirac = is_dirac(graph_frame(eta));
  return verdict(closed == dirac, std::string(closed ? "closed" : "not closed") + ", " + (dirac ? "dirac" : "not dirac"));
}

Outcome dirac_phi_z(const json& in) {
  MultivectorField z = field(in, "z");
  DifferentialForm beta = form(in, "beta");
  bool mc = mc_residual(beta, KoszulContext(z)).is_zero();
  bool dirac = is_dirac(phi_Z_frame(beta, z));
  return verdict(mc == dirac, std::string(mc ? "mc" : "not mc") + ", " + (dirac ? "dirac" : "not dirac"));
}

// ---- horizontality ------------------------------------------------------------

Outcome preservation_witness(const json& in) {
  MultivectorField z = field(in, "z");
  DistributionFrame k = frame_from_json(member(in, "K"), z.chart());
  KoszulContext ctx(z);
  PreservationFlags flags = horizontal_preservation_conditions(k, ctx);
  int max_degree = in.contains("max_degree") ? in["max_degree"].get<int>() : 2;
  auto w = find_preservation_witness(k, ctx, max_degree);
  std::string detail = std::string("subalgebroid=") + (flags.subalgebroid ? "true" : "false") +
                       " pairing=" + (flags.pairing ? "true" : "false");
  std::optional<json> witness;
  if (w) {
    detail += " witness arity " + std::to_string(w->arity);
    witness = json{{"inputs", forms_to_json(w->inputs)}, {"output", to_json(w->output)}};
    // the witness must be genuine
    for (const auto& f : w->inputs) {
      if (!is_horizontal(f, k)) return verdict(false, "witness input is not horizontal", witness);
    }
  }
  bool both = flags.subalgebroid && flags.pairing;
  return verdict(both != w.has_value(), detail, witness);
}

Outcome horizontal_preservation(const json& in) {
  MultivectorField z = field(in, "z");
  DistributionFrame k = frame_from_json(member(in, "K"), z.chart());
  auto inputs = forms_from_json(member(in, "inputs"), z.chart().dimension());
  PreservationReport r = check_horizontal_preservation(k, KoszulContext(z), inputs);
  if (r.passed()) return verdict(true, std::to_string(r.checked) + " brackets");
  return verdict(false, "arity-" + std::to_string(r.witness->arity) + " output is not horizontal", to_json(r.witness->output));
}

const std::map<std::string, Check>& registry() {
  static const std::map<std::string, Check> checks = {
      {"d-squared", d_squared},
      {"graded-leibniz", graded_leibniz},
      {"wedge-associativity", wedge_associativity},
      {"wedge-graded-commutativity", wedge_graded_commutativity},
      {"schouten-graded-symmetry", schouten_symmetry},
      {"schouten-derived-bracket", derived_bracket},
      {"evaluate-homomorphism", evaluate_homomorphism},
      {"derivative-crosscheck", derivative_crosscheck},
      {"koszul-one-form-formula", koszul_one_form_formula},
      {"koszul-r2-example", koszul_r2_example},
      {"contraction-order-example", contraction_order_example},
      {"lie-derivative-example", lie_derivative_example},
      {"lambda2-expressions", lambda2_expressions},
      {"lambda-graded-symmetry", lambda_graded_symmetry},
      {"mu-lambda-relation", mu_lambda_relation},
      {"jacobi", jacobi},
      {"mc-equivalence", mc_equivalence},
      {"f-two-by-two", f_two_by_two},
      {"worked-kernel-example", worked_kernel_example},
      {"worked-rank-breakout", worked_rank_breakout},
      {"dirac-graph", dirac_graph},
      {"dirac-phi-z", dirac_phi_z},
      {"preservation-witness", preservation_witness},
      {"horizontal-preservation", horizontal_preservation},
  };
  return checks;
}

}  // namespace

std::vector<std::string> identity_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : registry()) out.push_back(name);
  return out;
}

Outcome run_identity(const std::string& name, const json& inputs) {
  auto it = registry().find(name);
  if (it == registry().end()) throw Error(ErrorCode::SchemaError, "unknown check \"" + name + "\"");
  return it->second(inputs);
}

json identity_payload(const std::string& name, const json& inputs) { return {{"check", name}, {"inputs", inputs}}; }

}  // namespace presym::harness
