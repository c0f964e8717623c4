#include <chrono>
#include <fstream>
#include <sstream>

#include "presym/harness/checks.hpp"
#include "presym/harness/codec.hpp"
#include "presym/harness/random.hpp"

namespace presym::harness {

namespace {

using Clock = std::chrono::steady_clock;

bool is_input_error(ErrorCode c) {
  return c == ErrorCode::SchemaError || c == ErrorCode::ParseError || c == ErrorCode::InvalidConfig || c == ErrorCode::IoError;
}

/// Runs one check body, timing it and turning module errors into failures.
template <class Fn>
void run_check(Report& r, const std::string& name, const json& payload, Fn&& body) {
  auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const Error& e) {
    if (is_input_error(e.code())) throw;
    o = {Status::Fail, e.what()};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, e.what());
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (o.status == Status::Skipped) {
    r.skip(name, o.detail);
    return;
  }
  r.record(name, o.status == Status::Pass, secs, o.detail, o.witness, std::make_optional<json>(payload));
}

Outcome pass_if(bool ok, std::string detail = {}) { return {ok ? Status::Pass : Status::Fail, std::move(detail)}; }

template <class F>
std::vector<F> unit(std::size_t m, std::size_t i) {
  std::vector<F> v(m, F(0));
  v[i] = F(1);
  return v;
}

template <class F>
void linear_checks(Report& r, const SkewBilinear<F>& eta, std::optional<Subspace<F>> g_in, const SkewBilinear<F>& beta,
                   const json& payload) {
  const std::size_t n = eta.dim();
  RankKernel<F> rk = rank_and_kernel(eta);
  const Subspace<F>& ker = rk.kernel;
  Subspace<F> g = g_in ? *g_in : ker.dot_complement();
  std::optional<Bivector<F>> zopt;
  run_check(r, "z-from-eta-g", payload, [&] {
    Bivector<F> z = Z_from_eta_G(eta, g);
    const Matrix<F>& zs = z.sharp();
    bool inverse_ok = zs * eta.sharp() * g.basis() == -g.basis();
    bool in_g = true;
    for (std::size_t j = 0; j < n; ++j) in_g = in_g && g.contains(zs.column(j));
    Matrix<F> g_ann = g.annihilator().basis();
    bool kills_ann = g_ann.cols() == 0 || (zs * g_ann).is_zero();
    zopt = z;
    return pass_if(inverse_ok && in_g && kills_ann, "rank eta = " + std::to_string(rk.rank));
  });
  if (!zopt) return;
  const Bivector<F>& z = *zopt;
  const bool in_iz = in_I_Z(beta, z);

  if (!in_iz) {
    for (const char* name : {"f-skew", "f-involution", "phi-z-graph", "theorem-i:rank-biconditional", "theorem-iii:injective"}) {
      r.skip(name, "beta not in I_Z");
    }
  } else {
    run_check(r, "f-skew", payload, [&] {
      Matrix<F> raw = beta.sharp() * *inverse(Matrix<F>::identity(n) + z.sharp() * beta.sharp());
      return pass_if(raw.is_skew());
    });
    run_check(r, "f-involution", payload, [&] { return pass_if(F_map(F_map(beta, z), -z) == beta); });
    run_check(r, "phi-z-graph", payload, [&] {
      LagrangianSubspace<F> phi = phi_Z(beta, z);
      bool transverse = phi.space().sum(graph(z).space()).dimension() == 2 * n;
      return pass_if(transverse && graph(F_map(beta, z)) == phi, transverse ? "" : "not transverse to graph(Z)");
    });
  }
  run_check(r, "tau-pairing", payload, [&] {
    for (std::size_t a = 0; a < 2 * n; ++a) {
      for (std::size_t b = a; b < 2 * n; ++b) {
        auto ea = unit<F>(2 * n, a), eb = unit<F>(2 * n, b);
        F before = pairing(ea, eb);
        if (pairing(tau_form(beta, ea), tau_form(beta, eb)) != before) return pass_if(false, "tau_beta");
        if (pairing(tau_bivector(z, ea), tau_bivector(z, eb)) != before) return pass_if(false, "tau_Z");
      }
    }
    return pass_if(true);
  });

  if (in_iz) {
    std::optional<HorizontalDecomposition<F>> dec;
    try {
      dec = decompose_horizontal(beta, ker, g);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonHorizontalInput) throw;
    }
    SkewBilinear<F> exp = dirac_exp(eta, g, beta);
    RankKernel<F> exp_rk = rank_and_kernel(exp);
    run_check(r, "theorem-i:rank-biconditional", payload, [&] {
      return pass_if((exp_rk.rank == rk.rank) == dec.has_value(),
                     "rank exp = " + std::to_string(exp_rk.rank) + ", horizontal = " + (dec ? "yes" : "no"));
    });
    if (dec) {
      run_check(r, "theorem-ii:kernel-graph", payload, [&] {
        std::vector<std::vector<F>> cols;
        for (std::size_t j = 0; j < ker.dimension(); ++j) {
          std::vector<F> k = ker.basis().column(j);
          std::vector<F> lifted = z.sharp() * (beta.sharp() * k);
          for (std::size_t i = 0; i < n; ++i) lifted[i] += k[i];
          cols.push_back(std::move(lifted));
        }
        return pass_if(Subspace<F>::span(cols, n) == exp_rk.kernel);
      });
      run_check(r, "theorem-ii:g-restriction", payload, [&] {
        HorizontalDecomposition<F> pure{Matrix<F>(ker.dimension(), g.dimension()), dec->sigma};
        SkewBilinear<F> sigma = reassemble(pure, ker, g);
        if (!in_I_Z(sigma, z)) return Outcome{Status::Skipped, "sigma not in I_Z"};
        const Matrix<F>& gb = g.basis();
        Matrix<F> lhs = gb.transpose() * exp.sharp() * gb;
        Matrix<F> rhs = gb.transpose() * (eta + F_map(sigma, z)).sharp() * gb;
        return pass_if(lhs == rhs);
      });
      run_check(r, "theorem-iii:kernel-transverse", payload, [&] { return pass_if(are_complementary(exp_rk.kernel, g)); });
    } else {
      r.skip("theorem-ii:kernel-graph", "beta not horizontal");
      r.skip("theorem-ii:g-restriction", "beta not horizontal");
      r.skip("theorem-iii:kernel-transverse", "beta not horizontal");
    }
    run_check(r, "theorem-iii:injective", payload, [&] { return pass_if(F_map(exp - eta, -z) == beta); });
  }

  auto start = Clock::now();
  LemmaReport lemmas = verify_linear_lemmas(eta, g, beta);
  double secs = std::chrono::duration<double>(Clock::now() - start).count() / std::max<std::size_t>(1, lemmas.checks.size());
  for (const auto& c : lemmas.checks) {
    if (!c.applicable) {
      r.skip("lemma:" + c.name, c.detail.empty() ? "not applicable" : c.detail);
    } else {
      r.record("lemma:" + c.name, c.passed, secs, c.detail, std::nullopt, std::make_optional<json>(payload));
    }
  }
}

Subspace<Scalar> rows_span(const Matrix<Scalar>& rows) { return Subspace<Scalar>::span(rows.transpose()); }

}  // namespace

Report run_linear_instance(const json& instance, const std::string& id) {
  const json& nj = member(instance, "n");
  if (!nj.is_number_integer() || nj.get<int>() < 1 || nj.get<int>() > Chart::kMaxDimension) {
    throw Error(ErrorCode::SchemaError, "\"n\" must be an integer in 1..8");
  }
  const int n = nj.get<int>();
  Matrix<Scalar> eta = matrix_from_json(member(instance, "eta"), n);
  Matrix<Scalar> beta = matrix_from_json(member(instance, "beta"), n);
  if (eta.rows() != static_cast<std::size_t>(n) || !eta.is_square() || beta.rows() != eta.rows() || !beta.is_square()) {
    throw Error(ErrorCode::SchemaError, "eta and beta must be n x n");
  }
  std::optional<Matrix<Scalar>> g;
  if (instance.contains("G")) {
    g = matrix_from_json(instance["G"], n);
    if (g->cols() != static_cast<std::size_t>(n)) throw Error(ErrorCode::SchemaError, "G rows must have length n");
  }
  Report r("instance", id, {{"type", "linear"}, {"n", n}});
  bool constant = all_constant(eta) && all_constant(beta) && (!g || all_constant(*g));
  try {
    if (constant) {
      std::optional<Subspace<Rational>> gs;
      if (g) gs = Subspace<Rational>::span(constant_part(*g).transpose());
      linear_checks(r, SkewBilinear<Rational>(constant_part(eta)), gs, SkewBilinear<Rational>(constant_part(beta)), instance);
    } else {
      std::optional<Subspace<Scalar>> gs;
      if (g) gs = rows_span(*g);
      linear_checks(r, SkewBilinear<Scalar>(eta), gs, SkewBilinear<Scalar>(beta), instance);
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotSkew) throw;
    throw Error(ErrorCode::SchemaError, e.what());
  }
  return r;
}

Report run_presymplectic_instance(const json& instance, const std::string& id, InstanceStats* stats) {
  const json& cj = member(instance, "chart");
  if (!cj.is_number_integer() || cj.get<int>() < 1 || cj.get<int>() > Chart::kMaxDimension) {
    throw Error(ErrorCode::SchemaError, "\"chart\" must be an integer in 1..8");
  }
  const Chart chart(cj.get<int>());
  const int n = chart.dimension();
  DifferentialForm eta = form_from_json(member(instance, "eta"), n);
  std::optional<DistributionFrame> g;
  if (instance.contains("G")) g = frame_from_json(instance["G"], chart);
  std::optional<std::vector<Rational>> ref;
  if (instance.contains("ref_point")) ref = point_from_json(instance["ref_point"], static_cast<std::size_t>(n));
  CertificationRule rule = CertificationRule::Strict;
  if (instance.contains("rule")) {
    std::string s = instance["rule"].get<std::string>();
    if (s == "relaxed") {
      rule = CertificationRule::Relaxed;
    } else if (s != "strict") {
      throw Error(ErrorCode::SchemaError, "rule must be strict or relaxed");
    }
  }
  std::vector<std::pair<std::string, DifferentialForm>> betas;
  if (instance.contains("betas")) {
    for (const auto& b : instance["betas"]) {
      betas.emplace_back(member(b, "name").get<std::string>(), form_from_json(member(b, "beta"), n));
    }
  }
  const std::uint64_t seed = instance.contains("seed") ? instance["seed"].get<std::uint64_t>() : 0;

  Report r("instance", id, {{"type", "presymplectic"}, {"chart", n}});
  std::optional<PreSymplecticData> data;
  run_check(r, "certification", instance, [&] {
    try {
      data = make_presymplectic(eta, g, ref, rule);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::CannotCertify) return Outcome{Status::Skipped, "cannot-certify"};
      throw;
    }
    std::string witness;
    for (int s : data->certificate.witness) witness += (witness.empty() ? "" : ",") + std::to_string(s + 1);
    return pass_if(true, "rank " + std::to_string(data->rank()) + ", witness {" + witness + "}, Pfaffian " +
                             data->certificate.pfaffian.to_string());
  });
  if (!data) return r;

  const DistributionFrame& k = data->kernel;
  KoszulContext ctx(data->z);
  run_check(r, "eta-closed", instance, [&] { return pass_if(de_rham(data->eta).is_zero()); });
  run_check(r, "kernel-annihilates", instance, [&] {
    for (const auto& v : k.sections()) {
      if (!contract(v, data->eta).is_zero()) return pass_if(false);
    }
    return pass_if(true, std::to_string(k.rank()) + " sections");
  });
  run_check(r, "kernel-involutive", instance, [&] { return pass_if(is_involutive(k)); });
  run_check(r, "kernel-rank-at-ref", instance, [&] {
    return pass_if(static_cast<int>(k.at(data->ref_point).dimension()) == n - data->rank());
  });
  run_check(r, "graph-eta-dirac", instance, [&] { return pass_if(is_dirac(graph_frame(data->eta), data->ref_point)); });

  std::vector<DifferentialForm> inputs;
  if (k.rank() > 0 && data->rank() > 0) {
    Random rng(seed);
    FormShape shape{1, 2, 2, 5};
    for (int d : {1, 2, 1}) {
      if (d <= n) inputs.push_back(random_horizontal_form(rng, k, d, shape));
    }
  }
  bool preserved = true;
  if (inputs.empty()) {
    r.skip("d-preserves-horizontal", "no proper horizontal ideal");
    r.skip("koszul-preserves-horizontal", "no proper horizontal ideal");
  } else {
    run_check(r, "d-preserves-horizontal", instance, [&] {
      for (const auto& f : inputs) {
        DifferentialForm df = de_rham(f);
        if (!is_horizontal(df, k)) return Outcome{Status::Fail, "d of a horizontal form is not horizontal", to_json(df)};
      }
      return pass_if(true);
    });
    run_check(r, "koszul-preserves-horizontal", instance, [&] {
      PreservationReport p = koszul_preserves_horizontal(*data, inputs);
      preserved = p.passed();
      if (p.passed()) return pass_if(true, std::to_string(p.checked) + " brackets");
      return Outcome{Status::Fail, "arity-" + std::to_string(p.witness->arity) + " output not horizontal", to_json(p.witness->output)};
    });
  }
  run_check(r, "preservation-conditions", instance, [&] {
    PreservationFlags f = horizontal_preservation_conditions(k, ctx);
    bool both = f.subalgebroid && f.pairing;
    return pass_if(!both || preserved, std::string("subalgebroid=") + (f.subalgebroid ? "true" : "false") +
                                           " pairing=" + (f.pairing ? "true" : "false"));
  });

  for (const auto& [name, beta] : betas) {
    run_check(r, "deform:" + name, instance, [&] {
      DeformReport d;
      try {
        d = deform(*data, beta);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::NotHorizontal) return Outcome{Status::Skipped, "not-horizontal"};
        if (e.code() == ErrorCode::NotInIZ) return Outcome{Status::Skipped, "not-in-I_Z"};
        throw;
      }
      if (stats) {
        ++stats->deformations;
        stats->maurer_cartan += d.maurer_cartan;
        stats->lambda3_contributing += d.lambda3_contributes;
      }
      std::ostringstream detail;
      detail << (d.maurer_cartan ? "mc" : "not mc") << ", " << (d.closed ? "closed" : "not closed") << ", rank "
             << (d.rank_preserved ? "preserved" : "changed") << ", kernel " << (d.kernel_transverse ? "transverse" : "not transverse")
             << ", " << (d.symbolic ? "symbolic" : "grid " + std::to_string(d.grid_points) + " points")
             << (d.lambda3_contributes ? ", lambda3 contributes" : "");
      std::optional<json> witness;
      if (!d.residual.is_zero()) witness = to_json(d.residual);
      return Outcome{d.biconditional_holds() ? Status::Pass : Status::Fail, detail.str(), witness};
    });
    run_check(r, "dirac:" + name, instance, [&] {
      bool mc = mc_residual(beta, ctx).is_zero();
      bool dirac = is_dirac(phi_Z_frame(beta, data->z), data->ref_point);
      return pass_if(mc == dirac, std::string(mc ? "mc" : "not mc") + ", " + (dirac ? "dirac" : "not dirac"));
    });
  }
  return r;
}

Report run_instance(const json& payload, const std::string& id) {
  DegreeCapScope cap(kHarnessDegreeCap);
  if (!payload.is_object()) throw Error(ErrorCode::SchemaError, "instance must be a JSON object");
  if (payload.contains("check")) {
    const json& name = payload["check"];
    if (!name.is_string()) throw Error(ErrorCode::SchemaError, "\"check\" must be a string");
    Report r("instance", id, {{"type", "check"}, {"check", name}});
    run_check(r, name.get<std::string>(), payload, [&] {
      return run_identity(name.get<std::string>(), payload.contains("inputs") ? payload["inputs"] : json::object());
    });
    return r;
  }
  if (payload.contains("n")) return run_linear_instance(payload, id);
  if (payload.contains("chart")) return run_presymplectic_instance(payload, id);
  throw Error(ErrorCode::SchemaError, "instance needs \"check\", \"n\" or \"chart\"");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

}  // namespace presym::harness
