#include "presym/presymplectic/presymplectic.hpp"

#include <algorithm>
#include <numeric>

namespace presym {

namespace {

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// A(i, j) = eta(e_i, e_j), so dx1^dx2 has Pfaffian +1 on {0, 1}.
Matrix<Scalar> coefficient_matrix(const DifferentialForm& eta) { return -to_skew(eta).sharp(); }

std::vector<Rational> origin(int n) { return std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)); }

std::vector<Scalar> stacked(const GeneralizedSection& s) {
  std::vector<Scalar> v = components(s.x);
  std::vector<Scalar> a = components(s.alpha);
  v.insert(v.end(), a.begin(), a.end());
  return v;
}

bool in_column_span(const Matrix<Scalar>& frame, const std::vector<Scalar>& v) {
  Matrix<Scalar> b(v.size(), 1);
  b.set_column(0, v);
  return solve(frame, b).has_value();
}

MultivectorField wedge_all(const std::vector<MultivectorField>& vs, const Chart& chart) {
  MultivectorField w = MultivectorField::function(chart, Scalar(1));
  for (const auto& v : vs) w = wedge(w, v);
  return w;
}

}  // namespace

DistributionFrame::DistributionFrame(Chart chart, std::vector<MultivectorField> sections)
    : chart_(chart), sections_(std::move(sections)) {
  for (const auto& s : sections_) {
    if (!(s.chart() == chart_)) throw Error(ErrorCode::ChartMismatch, "distribution frame");
    if (!s.is_homogeneous_of(1)) throw Error(ErrorCode::WrongDegree, "frame sections must be vector fields");
  }
}

Matrix<Scalar> DistributionFrame::matrix() const {
  std::vector<std::vector<Scalar>> cols;
  for (const auto& s : sections_) cols.push_back(components(s));
  return Matrix<Scalar>::from_columns(cols, static_cast<std::size_t>(chart_.dimension()));
}

Subspace<Rational> DistributionFrame::at(std::span<const Rational> point) const {
  return Subspace<Rational>::span(evaluate(matrix(), point));
}

bool certified_nonvanishing(const Scalar& s, CertificationRule rule) {
  if (s.is_zero()) return false;
  if (s.is_constant()) return true;
  if (rule == CertificationRule::Strict) return false;
  auto ok = [](const Polynomial& p) { return p.is_constant() || is_pattern_nonvanishing(p); };
  return ok(s.num()) && ok(s.den());
}

RankCertificate certify_constant_rank(const DifferentialForm& eta, CertificationRule rule) {
  if (!eta.is_homogeneous_of(2)) throw Error(ErrorCode::WrongDegree, "certification expects a 2-form");
  const auto n = static_cast<std::size_t>(eta.dim());
  Matrix<Scalar> a = coefficient_matrix(eta);
  RankCertificate cert;
  cert.rule = rule;
  cert.pfaffian = Scalar(1);
  for (std::size_t k = n - n % 2; k >= 2; k -= 2) {
    bool generic = false;
    for (const auto& s : subsets(n, k)) {
      Scalar pf = pfaffian(a.select(s, s));
      if (pf.is_zero()) continue;
      generic = true;
      if (certified_nonvanishing(pf, rule)) {
        cert.rank = static_cast<int>(k);
        cert.witness.assign(s.begin(), s.end());
        cert.pfaffian = pf;
        return cert;
      }
    }
    if (generic) {
      throw Error(ErrorCode::CannotCertify,
                  "generic rank " + std::to_string(k) + " but no principal Pfaffian is certified nonvanishing");
    }
  }
  return cert;  // eta = 0
}

DistributionFrame kernel_distribution(const DifferentialForm& eta, const RankCertificate& cert) {
  const auto n = static_cast<std::size_t>(eta.dim());
  Matrix<Scalar> a = coefficient_matrix(eta);
  std::vector<std::size_t> s(cert.witness.begin(), cert.witness.end());
  std::vector<std::size_t> rest;
  for (std::size_t j = 0; j < n; ++j) {
    if (std::find(s.begin(), s.end(), j) == s.end()) rest.push_back(j);
  }
  Matrix<Scalar> inv_ss = Matrix<Scalar>::identity(0);
  if (!s.empty()) {
    auto inv = inverse(a.select(s, s));
    if (!inv) throw Error(ErrorCode::CannotCertify, "witness block is singular");
    inv_ss = *inv;
  }
  std::vector<MultivectorField> frame;
  for (std::size_t j : rest) {
    std::vector<Scalar> v(n);
    v[j] = Scalar(1);
    if (!s.empty()) {
      std::vector<Scalar> col = inv_ss * a.select(s, {j}).column(0);
      for (std::size_t t = 0; t < s.size(); ++t) v[s[t]] = -col[t];
    }
    for (const auto& c : v) {
      if (!c.is_polynomial() && !certified_nonvanishing(Scalar(c.den()), cert.rule)) {
        throw Error(ErrorCode::CannotCertify, "kernel frame has a denominator with possible real zeros");
      }
    }
    MultivectorField field = vector_field(eta.chart(), v);
    if (!contract(field, eta).is_zero()) {
      throw Error(ErrorCode::CannotCertify, "rank is not constant: kernel candidate fails to annihilate eta");
    }
    frame.push_back(std::move(field));
  }
  return DistributionFrame(eta.chart(), std::move(frame));
}

std::vector<DifferentialForm> annihilator_frame(const DistributionFrame& k) {
  const auto n = static_cast<std::size_t>(k.chart().dimension());
  const std::size_t d = k.rank();
  Matrix<Scalar> kb = k.matrix();
  // Pick d rows T with invertible K_T, preferring a constant determinant so the
  // annihilator has polynomial coefficients. theta_s = dx_s - (K_s K_T^-1) dx_T.
  std::optional<std::vector<std::size_t>> chosen;
  for (const auto& t : subsets(n, d)) {
    Scalar det = determinant(kb.select(t, [&] {
      std::vector<std::size_t> all(d);
      std::iota(all.begin(), all.end(), 0);
      return all;
    }()));
    if (det.is_zero()) continue;
    if (det.is_constant()) {
      chosen = t;
      break;
    }
    if (!chosen) chosen = t;
  }
  if (!chosen) throw Error(ErrorCode::NotASubbundle, "frame sections are dependent");
  std::vector<std::size_t> cols(d);
  std::iota(cols.begin(), cols.end(), 0);
  Matrix<Scalar> inv_t = *inverse(kb.select(*chosen, cols));
  std::vector<DifferentialForm> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (std::find(chosen->begin(), chosen->end(), s) != chosen->end()) continue;
    Matrix<Scalar> row = kb.select({s}, cols) * inv_t;
    std::vector<Scalar> theta(n);
    theta[s] = Scalar(1);
    for (std::size_t t = 0; t < d; ++t) theta[(*chosen)[t]] = -row(0, t);
    out.push_back(one_form(k.chart(), theta));
  }
  return out;
}

bool is_horizontal(const DifferentialForm& alpha, const DistributionFrame& k) {
  if (!(alpha.chart() == k.chart())) throw Error(ErrorCode::ChartMismatch, "is_horizontal");
  if (!alpha.component(0).is_zero()) return false;
  for (std::size_t p = 1; p <= k.rank(); ++p) {
    DifferentialForm comp = alpha.component(static_cast<int>(p));
    if (comp.is_zero()) continue;
    for (const auto& idx : subsets(k.rank(), p)) {
      std::vector<MultivectorField> vs;
      for (std::size_t i : idx) vs.push_back(k.sections()[i]);
      if (!contract(wedge_all(vs, k.chart()), comp).is_zero()) return false;
    }
  }
  return true;
}

bool is_involutive(const DistributionFrame& k) {
  Matrix<Scalar> kb = k.matrix();
  for (std::size_t a = 0; a < k.rank(); ++a) {
    for (std::size_t b = a + 1; b < k.rank(); ++b) {
      if (!in_column_span(kb, components(schouten(k.sections()[a], k.sections()[b])))) return false;
    }
  }
  return true;
}

DistributionFrame default_complement(const DistributionFrame& k, std::span<const Rational> point) {
  Subspace<Rational> g = k.at(point).dot_complement();
  std::vector<MultivectorField> frame;
  for (std::size_t j = 0; j < g.dimension(); ++j) {
    std::vector<Scalar> v;
    for (const auto& c : g.basis().column(j)) v.emplace_back(c);
    frame.push_back(vector_field(k.chart(), v));
  }
  return DistributionFrame(k.chart(), std::move(frame));
}

PreSymplecticData make_presymplectic(const DifferentialForm& eta, std::optional<DistributionFrame> g,
                                     std::optional<std::vector<Rational>> ref_point, CertificationRule rule) {
  if (!eta.is_homogeneous_of(2)) throw Error(ErrorCode::WrongDegree, "eta must be a 2-form");
  if (!de_rham(eta).is_zero()) throw Error(ErrorCode::NotClosed, "d eta != 0");
  const int n = eta.dim();
  std::vector<Rational> ref = ref_point ? *ref_point : origin(n);
  if (static_cast<int>(ref.size()) != n) throw Error(ErrorCode::DimensionMismatch, "reference point");
  RankCertificate cert = certify_constant_rank(eta, rule);
  DistributionFrame kernel = kernel_distribution(eta, cert);
  DistributionFrame complement = g ? *g : default_complement(kernel, ref);
  if (!(complement.chart() == eta.chart())) throw Error(ErrorCode::ChartMismatch, "complement frame");
  if (kernel.rank() + complement.rank() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::NotComplementary, "rank K + rank G != dimension");
  }
  Scalar det = determinant(Matrix<Scalar>::hconcat(kernel.matrix(), complement.matrix()));
  if (!certified_nonvanishing(det, rule)) {
    throw Error(ErrorCode::NotComplementary, "K and G are not certified complementary everywhere");
  }
  Bivector<Scalar> z = Z_from_eta_G(to_skew(eta), Subspace<Scalar>::span(complement.matrix()));
  return {eta, std::move(cert), std::move(kernel), std::move(complement), to_multivector(z, eta.chart()), std::move(ref)};
}

std::vector<GeneralizedSection> graph_frame(const DifferentialForm& eta) {
  std::vector<GeneralizedSection> out;
  for (int i = 0; i < eta.dim(); ++i) {
    MultivectorField e = MultivectorField::basis(eta.chart(), {i});
    out.emplace_back(e, contract(e, eta));
  }
  return out;
}

std::vector<GeneralizedSection> phi_Z_frame(const DifferentialForm& beta, const MultivectorField& z) {
  std::vector<GeneralizedSection> out;
  for (int i = 0; i < beta.dim(); ++i) {
    MultivectorField e = MultivectorField::basis(beta.chart(), {i});
    DifferentialForm xi = contract(e, beta);
    out.emplace_back(e + sharp(z, xi), xi);
  }
  return out;
}

bool is_dirac(const std::vector<GeneralizedSection>& frame, std::optional<std::vector<Rational>> ref_point) {
  if (frame.empty()) throw Error(ErrorCode::NotASubbundle, "empty frame");
  const Chart chart = frame.front().chart();
  const auto n = static_cast<std::size_t>(chart.dimension());
  if (frame.size() != n) throw Error(ErrorCode::NotASubbundle, "a Dirac frame needs exactly n sections");
  std::vector<std::vector<Scalar>> cols;
  for (const auto& s : frame) {
    if (!(s.chart() == chart)) throw Error(ErrorCode::ChartMismatch, "is_dirac");
    cols.push_back(stacked(s));
  }
  Matrix<Scalar> m = Matrix<Scalar>::from_columns(cols, 2 * n);
  std::vector<Rational> ref = ref_point ? *ref_point : origin(chart.dimension());
  if (rank(evaluate(m, ref)) != n) throw Error(ErrorCode::NotASubbundle, "frame drops rank at the reference point");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (!pairing(frame[i], frame[j]).is_zero()) return false;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!in_column_span(m, stacked(dorfman(frame[i], frame[j])))) return false;
    }
  }
  return true;
}

PreservationFlags horizontal_preservation_conditions(const DistributionFrame& k, const KoszulContext& ctx) {
  if (!(k.chart() == ctx.chart())) throw Error(ErrorCode::ChartMismatch, "preservation conditions");
  PreservationFlags flags;
  flags.subalgebroid = is_involutive(k);
  std::vector<GeneralizedSection> xi;
  for (const auto& theta : annihilator_frame(k)) xi.emplace_back(sharp(ctx.z(), theta), theta);
  std::vector<GeneralizedSection> targets;
  for (const auto& v : k.sections()) targets.push_back(GeneralizedSection::vector(v));
  targets.insert(targets.end(), xi.begin(), xi.end());
  flags.pairing = true;
  for (std::size_t a = 0; a < xi.size() && flags.pairing; ++a) {
    for (std::size_t b = 0; b < xi.size() && flags.pairing; ++b) {
      GeneralizedSection br = dorfman(xi[a], xi[b]);
      for (const auto& t : targets) {
        if (!pairing(br, t).is_zero()) {
          flags.pairing = false;
          break;
        }
      }
    }
  }
  return flags;
}

PreservationReport check_horizontal_preservation(const DistributionFrame& k, const KoszulContext& ctx,
                                                 std::span<const DifferentialForm> inputs) {
  std::vector<ShiftedForm> xs;
  for (const auto& f : inputs) {
    if (!is_horizontal(f, k)) throw Error(ErrorCode::NotHorizontal, "input form is not horizontal");
    xs.emplace_back(f);
  }
  PreservationReport report;
  auto check = [&](std::vector<std::size_t> idx) {
    std::vector<ShiftedForm> args;
    for (std::size_t i : idx) args.push_back(xs[i]);
    ++report.checked;
    ShiftedForm out = lambda(args, ctx);
    if (is_horizontal(out.form(), k)) return false;
    PreservationWitness w;
    w.arity = static_cast<int>(idx.size());
    for (std::size_t i : idx) w.inputs.push_back(inputs[i]);
    w.output = out.form();
    report.witness = std::move(w);
    return true;
  };
  const std::size_t m = xs.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (check({i})) return report;
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      if (check({i, j})) return report;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      for (std::size_t l = j; l < m; ++l) {
        if (check({i, j, l})) return report;
      }
    }
  }
  return report;
}

PreservationReport koszul_preserves_horizontal(const PreSymplecticData& data, std::span<const DifferentialForm> inputs) {
  return check_horizontal_preservation(data.kernel, KoszulContext(data.z), inputs);
}

std::optional<PreservationWitness> find_preservation_witness(const DistributionFrame& k, const KoszulContext& ctx,
                                                             int max_degree) {
  const int n = k.chart().dimension();
  std::vector<Polynomial> monomials{Polynomial(1)};
  for (int deg = 1; deg <= max_degree; ++deg) {
    std::vector<Polynomial> next;
    for (const auto& t : monomials) {
      if (t.total_degree() != deg - 1) continue;
      int last = 0;
      for (int v = 0; v < n; ++v) {
        if (t.leading_term().first.exponent(v) > 0) last = v;
      }
      for (int v = last; v < n; ++v) next.push_back(t * Polynomial::variable(v));
    }
    monomials.insert(monomials.end(), next.begin(), next.end());
  }
  std::vector<DifferentialForm> thetas = annihilator_frame(k);
  std::vector<DifferentialForm> family;
  for (const auto& m : monomials) {
    for (const auto& theta : thetas) family.push_back(theta * Scalar(m));
  }
  std::vector<ShiftedForm> xs;
  for (const auto& f : family) xs.emplace_back(f, 1);
  auto witness = [&](std::vector<std::size_t> idx, const ShiftedForm& out) -> std::optional<PreservationWitness> {
    if (is_horizontal(out.form(), k)) return std::nullopt;
    PreservationWitness w;
    w.arity = static_cast<int>(idx.size());
    for (std::size_t i : idx) w.inputs.push_back(family[i]);
    w.output = out.form();
    return w;
  };
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (auto w = witness({i}, lambda(xs[i], ctx))) return w;
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i; j < xs.size(); ++j) {
      if (auto w = witness({i, j}, lambda(xs[i], xs[j], ctx))) return w;
    }
  }
  // Ternary brackets are C-infinity multilinear, so the bare frame suffices.
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    for (std::size_t j = i; j < thetas.size(); ++j) {
      for (std::size_t l = j; l < thetas.size(); ++l) {
        if (auto w = witness({i, j, l}, lambda(xs[i], xs[j], xs[l], ctx))) return w;
      }
    }
  }
  return std::nullopt;
}

DifferentialForm beta_for_target(const PreSymplecticData& data, const DifferentialForm& target) {
  Bivector<Scalar> minus_z = -to_bivector(data.z);
  SkewBilinear<Scalar> diff = to_skew(target - data.eta);
  if (det_I_Z(diff, minus_z).is_zero()) throw Error(ErrorCode::NotInIZ, "target - eta is nowhere in I_{-Z}");
  return to_form(F_map(diff, minus_z), data.chart());
}

DeformReport deform(const PreSymplecticData& data, const DifferentialForm& beta, const std::vector<Rational>& grid_values) {
  if (!beta.is_homogeneous_of(2)) throw Error(ErrorCode::WrongDegree, "beta must be a 2-form");
  if (!is_horizontal(beta, data.kernel)) throw Error(ErrorCode::NotHorizontal, "beta is not horizontal");
  KoszulContext ctx(data.z);
  if (det_I_Z(to_skew(beta), to_bivector(data.z)).is_zero()) {
    throw Error(ErrorCode::NotInIZ, "det(id + Z# beta#) vanishes identically");
  }
  McEquivalence mc = check_mc_equivalence(beta, ctx, grid_values);
  DeformReport r;
  r.maurer_cartan = mc.maurer_cartan;
  r.residual = mc.residual;
  r.closed = mc.closed;
  r.symbolic = mc.symbolic;
  r.grid_points = mc.points_checked;
  if (!ctx.is_poisson()) {
    ShiftedForm b(beta, 2);
    r.lambda3_contributes = !lambda(b, b, b, ctx).form().is_zero();
  }
  SkewBilinear<Scalar> exp = to_skew(data.eta) + F_symbolic(beta, ctx);
  r.exp_eta = to_form(exp, data.chart());
  Matrix<Scalar> ker = nullspace(exp.sharp());
  r.rank_preserved = data.chart().dimension() - static_cast<int>(ker.cols()) == data.rank();
  r.kernel_transverse = rank(Matrix<Scalar>::hconcat(ker, data.complement.matrix())) ==
                        static_cast<std::size_t>(data.chart().dimension());
  return r;
}

}  // namespace presym
