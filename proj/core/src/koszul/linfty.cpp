#include "presym/koszul/linfty.hpp"

#include <algorithm>
#include <bit>

#include "presym/presymplectic/courant.hpp"

namespace presym {

namespace {

int degree_of(const DifferentialForm& f, const char* what) {
  auto d = f.homogeneous_degree();
  if (!d) throw Error(ErrorCode::InhomogeneousInput, std::string(what) + " must be a homogeneous nonzero form");
  return *d;
}

bool odd(int k) { return (k % 2 + 2) % 2 == 1; }

DifferentialForm sign(int exponent, DifferentialForm f) { return odd(exponent) ? -f : f; }

DifferentialForm lie_terms(const DifferentialForm& a, const DifferentialForm& b, const KoszulContext& ctx, int p) {
  const MultivectorField& z = ctx.z();
  DifferentialForm out = lie_derivative(z, wedge(a, b));
  out -= wedge(lie_derivative(z, a), b);
  out -= sign(p, wedge(a, lie_derivative(z, b)));
  return out;
}

}  // namespace

KoszulContext::KoszulContext(MultivectorField z) : z_(std::move(z)), half_zz_(z_.chart()) {
  if (!z_.is_homogeneous_of(2)) throw Error(ErrorCode::WrongDegree, "Koszul context needs a bivector field");
  half_zz_ = schouten(z_, z_) * Scalar(Rational(1, 2));
}

ShiftedForm::ShiftedForm(DifferentialForm form, int degree) : form_(std::move(form)), degree_(degree) {
  if (!form_.is_homogeneous_of(degree_)) {
    throw Error(ErrorCode::InhomogeneousInput, "form is not homogeneous of degree " + std::to_string(degree_));
  }
}

ShiftedForm::ShiftedForm(DifferentialForm form) : form_(std::move(form)), degree_(degree_of(form_, "shifted form")) {}

DifferentialForm koszul_bracket(const DifferentialForm& a, const DifferentialForm& b, const KoszulContext& ctx) {
  a.require_same_chart(b);
  if (a.is_zero() || b.is_zero()) return DifferentialForm(a.chart());
  const int p = degree_of(a, "first argument");
  degree_of(b, "second argument");
  return sign(p + 1, lie_terms(a, b, ctx, p));
}

DifferentialForm lambda2_lie_expansion(const DifferentialForm& a, const DifferentialForm& b, const KoszulContext& ctx) {
  a.require_same_chart(b);
  if (a.is_zero() || b.is_zero()) return DifferentialForm(a.chart());
  const int p = degree_of(a, "first argument");
  degree_of(b, "second argument");
  return -lie_terms(a, b, ctx, p);
}

DifferentialForm koszul_bracket_one_forms(const DifferentialForm& a, const DifferentialForm& b, const KoszulContext& ctx) {
  if (!a.is_homogeneous_of(1) || !b.is_homogeneous_of(1)) {
    throw Error(ErrorCode::WrongDegree, "the 1-form formula takes two 1-forms");
  }
  const MultivectorField& z = ctx.z();
  DifferentialForm out = classical_lie_derivative(sharp(z, a), b);
  out -= classical_lie_derivative(sharp(z, b), a);
  out -= de_rham(DifferentialForm::function(a.chart(), pairing(z, wedge(a, b))));
  return out;
}

DifferentialForm trinary_bracket(const DifferentialForm& a, const DifferentialForm& b, const DifferentialForm& c,
                                 const KoszulContext& ctx) {
  for (const auto* f : {&a, &b, &c}) {
    if (!f->is_zero()) degree_of(*f, "trinary argument");
  }
  const DifferentialForm forms[] = {a, b, c};
  return multi_sharp(forms, ctx.half_schouten());
}

ShiftedForm lambda(const ShiftedForm& a, const KoszulContext&) { return {de_rham(a.form()), a.degree() + 1}; }

ShiftedForm lambda(const ShiftedForm& a, const ShiftedForm& b, const KoszulContext& ctx) {
  return {sign(a.degree(), koszul_bracket(a.form(), b.form(), ctx)), a.degree() + b.degree() - 1};
}

ShiftedForm lambda(const ShiftedForm& a, const ShiftedForm& b, const ShiftedForm& c, const KoszulContext& ctx) {
  return {sign(b.degree() + 1, trinary_bracket(a.form(), b.form(), c.form(), ctx)),
          a.degree() + b.degree() + c.degree() - 3};
}

ShiftedForm lambda(std::span<const ShiftedForm> in, const KoszulContext& ctx) {
  switch (in.size()) {
    case 1: return lambda(in[0], ctx);
    case 2: return lambda(in[0], in[1], ctx);
    case 3: return lambda(in[0], in[1], in[2], ctx);
    default: throw Error(ErrorCode::ArityMismatch, "lambda_k exists for k = 1, 2, 3 only");
  }
}

ShiftedForm lambda(int k, std::span<const ShiftedForm> in, const KoszulContext& ctx) {
  if (k < 1 || k > 3 || static_cast<std::size_t>(k) != in.size()) {
    throw Error(ErrorCode::ArityMismatch, "lambda_" + std::to_string(k) + " given " + std::to_string(in.size()) + " inputs");
  }
  return lambda(in, ctx);
}

// ---- cotangent bracket as a biderivation ----------------------------------

namespace {

// Generator of Omega as an algebra: a function or a coordinate 1-form.
struct Gen {
  int index = -1;  // -1 for a function
  Scalar f;
  int degree() const { return index < 0 ? 0 : 1; }
};
using Word = std::vector<Gen>;

int word_degree(const Word& w) {
  int d = 0;
  for (const auto& g : w) d += g.degree();
  return d;
}

DifferentialForm gen_form(const Chart& chart, const Gen& g) {
  return g.index < 0 ? DifferentialForm::function(chart, g.f) : DifferentialForm::basis(chart, {g.index});
}

DifferentialForm word_form(const Chart& chart, const Word& w, std::size_t from = 0) {
  DifferentialForm out = DifferentialForm::function(chart, Scalar(1));
  for (std::size_t i = from; i < w.size(); ++i) out = wedge(out, gen_form(chart, w[i]));
  return out;
}

class GeneratorBrackets {
 public:
  explicit GeneratorBrackets(const KoszulContext& ctx) : ctx_(ctx), n_(ctx.chart().dimension()) {
    for (int i = 0; i < n_; ++i) anchors_.push_back(sharp(ctx.z(), DifferentialForm::basis(ctx.chart(), {i})));
  }

  DifferentialForm operator()(const Gen& a, const Gen& b) const {
    const Chart& chart = ctx_.chart();
    if (a.index < 0 && b.index < 0) return DifferentialForm(chart);
    if (a.index >= 0 && b.index < 0) return anchor_on(a.index, b.f);
    if (a.index < 0) return -anchor_on(b.index, a.f);
    // pr_R of the Dorfman bracket of (Z# dx_i, dx_i) and (Z# dx_j, dx_j)
    GeneralizedSection s1(anchors_[static_cast<std::size_t>(a.index)], DifferentialForm::basis(chart, {a.index}));
    GeneralizedSection s2(anchors_[static_cast<std::size_t>(b.index)], DifferentialForm::basis(chart, {b.index}));
    return dorfman(s1, s2).alpha;
  }

 private:
  DifferentialForm anchor_on(int i, const Scalar& f) const {
    const Chart& chart = ctx_.chart();
    return DifferentialForm::function(chart, evaluate_on(de_rham(DifferentialForm::function(chart, f)),
                                                         anchors_[static_cast<std::size_t>(i)]));
  }

  const KoszulContext& ctx_;
  int n_;
  std::vector<MultivectorField> anchors_;
};

// [A, b ^ C] = [A, b] ^ C + (-1)^{(|A|-1)|b|} b ^ [A, C];  [A, b] = -(-1)^{(|A|-1)(|b|-1)} [b, A].
DifferentialForm bracket_words(const Word& a, const Word& b, const GeneratorBrackets& gens, const Chart& chart) {
  if (a.empty() || b.empty()) return DifferentialForm(chart);
  const int da = word_degree(a);
  if (b.size() > 1) {
    Word head{b[0]};
    Word tail(b.begin() + 1, b.end());
    DifferentialForm out = wedge(bracket_words(a, head, gens, chart), word_form(chart, tail));
    DifferentialForm second = wedge(gen_form(chart, b[0]), bracket_words(a, tail, gens, chart));
    out += sign((da - 1) * b[0].degree(), second);
    return out;
  }
  if (a.size() > 1) return -sign((da - 1) * (b[0].degree() - 1), bracket_words(b, a, gens, chart));
  return gens(a[0], b[0]);
}

Word term_word(Blade blade, const Scalar& c) {
  Word w{Gen{-1, c}};
  for (int i : blade_indices(blade)) w.push_back(Gen{i, Scalar()});
  return w;
}

}  // namespace

DifferentialForm cotangent_bracket(const DifferentialForm& a, const DifferentialForm& b, const KoszulContext& ctx) {
  a.require_same_chart(b);
  const Chart& chart = a.chart();
  GeneratorBrackets gens(ctx);
  DifferentialForm out(chart);
  for (const auto& [ba, ca] : a.terms()) {
    Word wa = term_word(ba, ca);
    for (const auto& [bb, cb] : b.terms()) out += bracket_words(wa, term_word(bb, cb), gens, chart);
  }
  return out;
}

MultivectorField psi_trivector(const KoszulContext& ctx) {
  const Chart& chart = ctx.chart();
  const int n = chart.dimension();
  std::vector<GeneralizedSection> sections;
  for (int i = 0; i < n; ++i) {
    DifferentialForm xi = DifferentialForm::basis(chart, {i});
    sections.emplace_back(sharp(ctx.z(), xi), xi);
  }
  MultivectorField psi(chart);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      GeneralizedSection br = dorfman(sections[static_cast<std::size_t>(i)], sections[static_cast<std::size_t>(j)]);
      MultivectorField l_part = br.x - sharp(ctx.z(), br.alpha);
      for (int k = j + 1; k < n; ++k) {
        // psi is read as a function on 3-forms through contraction, and for
        // degree 3, i(W)(dx_i ^ dx_j ^ dx_k) = -W_ijk.
        Scalar v = l_part.coefficient(blade_bit(k));
        psi.add_term(blade_bit(i) | blade_bit(j) | blade_bit(k), -v);
      }
    }
  }
  return psi;
}

ShiftedForm mu(int k, std::span<const ShiftedForm> in, const KoszulContext& ctx) {
  if (k < 1 || k > 3 || static_cast<std::size_t>(k) != in.size()) {
    throw Error(ErrorCode::ArityMismatch, "mu_" + std::to_string(k) + " given " + std::to_string(in.size()) + " inputs");
  }
  if (k == 1) return {de_rham(in[0].form()), in[0].degree() + 1};
  if (k == 2) {
    return {sign(in[0].degree() + 1, cotangent_bracket(in[0].form(), in[1].form(), ctx)),
            in[0].degree() + in[1].degree() - 1};
  }
  const DifferentialForm forms[] = {in[0].form(), in[1].form(), in[2].form()};
  return {sign(in[1].degree(), multi_sharp(forms, psi_trivector(ctx))),
          in[0].degree() + in[1].degree() + in[2].degree() - 3};
}

// ---- generalized Jacobi identities ----------------------------------------

int koszul_sign(std::span<const int> degrees, std::span<const std::size_t> order) {
  int s = 1;
  for (std::size_t p = 0; p < order.size(); ++p) {
    for (std::size_t q = p + 1; q < order.size(); ++q) {
      if (order[p] > order[q] && odd(degrees[order[p]] * degrees[order[q]])) s = -s;
    }
  }
  return s;
}

DifferentialForm jacobiator(std::span<const ShiftedForm> inputs, const KoszulContext& ctx, BracketFamily family) {
  const std::size_t n = inputs.size();
  if (n == 0 || n > 16) throw Error(ErrorCode::ArityMismatch, "jacobiator arity");
  auto bracket = [&](std::span<const ShiftedForm> xs) {
    const int k = static_cast<int>(xs.size());
    return family == BracketFamily::Lambda ? lambda(k, xs, ctx) : mu(k, xs, ctx);
  };
  std::vector<int> shifted;
  for (const auto& x : inputs) shifted.push_back(x.shifted_degree());

  DifferentialForm sum(ctx.chart());
  for (std::size_t j = 1; j <= 3 && j <= n; ++j) {
    const std::size_t i = n + 1 - j;
    if (i < 1 || i > 3) continue;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != j) continue;
      std::vector<std::size_t> order;
      std::vector<ShiftedForm> inner_args, outer_args;
      for (std::size_t t = 0; t < n; ++t) {
        if (mask >> t & 1u) {
          order.push_back(t);
          inner_args.push_back(inputs[t]);
        }
      }
      for (std::size_t t = 0; t < n; ++t) {
        if (!(mask >> t & 1u)) order.push_back(t);
      }
      ShiftedForm inner = bracket(inner_args);
      if (inner.form().is_zero()) continue;
      outer_args.push_back(inner);
      for (std::size_t t = 0; t < n; ++t) {
        if (!(mask >> t & 1u)) outer_args.push_back(inputs[t]);
      }
      DifferentialForm term = bracket(outer_args).form();
      if (koszul_sign(shifted, order) < 0) {
        sum -= term;
      } else {
        sum += term;
      }
    }
  }
  return sum;
}

// ---- Maurer-Cartan ---------------------------------------------------------

DifferentialForm mc_residual(const DifferentialForm& beta, const KoszulContext& ctx) {
  if (!beta.is_homogeneous_of(2)) throw Error(ErrorCode::WrongDegree, "Maurer-Cartan residual needs a 2-form");
  if (!(beta.chart() == ctx.chart())) throw Error(ErrorCode::ChartMismatch, "mc_residual");
  ShiftedForm b(beta, 2);
  DifferentialForm out = de_rham(beta);
  out += lambda(b, b, ctx).form() * Scalar(Rational(1, 2));
  if (!ctx.is_poisson()) out += lambda(b, b, b, ctx).form() * Scalar(Rational(1, 6));
  return out;
}

SkewBilinear<Scalar> F_symbolic(const DifferentialForm& beta, const KoszulContext& ctx) {
  if (!beta.is_homogeneous_of(2)) throw Error(ErrorCode::WrongDegree, "F needs a 2-form");
  SkewBilinear<Scalar> b = to_skew(beta);
  Bivector<Scalar> z = to_bivector(ctx.z());
  if (is_zero(det_I_Z(b, z))) throw Error(ErrorCode::GenericallySingular, "det(id + Z# beta#) vanishes identically");
  return F_map(b, z);
}

std::vector<Rational> default_grid_values() { return {Rational(0), Rational(1, 2), Rational(-1, 3)}; }

std::vector<std::vector<Rational>> sample_grid(int dimension, const std::vector<Rational>& values) {
  std::vector<std::vector<Rational>> out{{}};
  for (int d = 0; d < dimension; ++d) {
    std::vector<std::vector<Rational>> next;
    for (const auto& prefix : out) {
      for (const auto& v : values) {
        next.push_back(prefix);
        next.back().push_back(v);
      }
    }
    out = std::move(next);
  }
  return out;
}

namespace {

Matrix<Scalar> derivative(const Matrix<Scalar>& m, int var) {
  Matrix<Scalar> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).derivative(var);
  }
  return out;
}

}  // namespace

DifferentialForm dF_at_point(const DifferentialForm& beta, const KoszulContext& ctx, std::span<const Rational> point) {
  const Chart& chart = ctx.chart();
  const int n = chart.dimension();
  const auto un = static_cast<std::size_t>(n);
  const Matrix<Scalar> b = to_skew(beta).sharp();
  const Matrix<Scalar> z = to_bivector(ctx.z()).sharp();
  const Matrix<Rational> bp = evaluate(b, point), zp = evaluate(z, point);
  auto ainv = inverse(Matrix<Rational>::identity(un) + zp * bp);
  if (!ainv) throw Error(ErrorCode::NotInIZ, "id + Z# beta# is singular at the sample point");
  std::vector<Matrix<Rational>> partial_f;
  for (int v = 0; v < n; ++v) {
    Matrix<Rational> db = evaluate(derivative(b, v), point);
    Matrix<Rational> da = evaluate(derivative(z, v), point) * bp + zp * db;
    partial_f.push_back(db * *ainv - bp * *ainv * da * *ainv);
  }
  // F_bc = F#(c, b); (dF)_abc = d_a F_bc - d_b F_ac + d_c F_ab
  DifferentialForm out(chart);
  for (std::size_t a = 0; a < un; ++a) {
    for (std::size_t bb = a + 1; bb < un; ++bb) {
      for (std::size_t c = bb + 1; c < un; ++c) {
        Rational v = partial_f[a](c, bb) - partial_f[bb](c, a) + partial_f[c](bb, a);
        out.add_term(blade_from_indices({static_cast<int>(a), static_cast<int>(bb), static_cast<int>(c)}), Scalar(v));
      }
    }
  }
  return out;
}

McEquivalence check_mc_equivalence(const DifferentialForm& beta, const KoszulContext& ctx,
                                   const std::vector<Rational>& grid_values) {
  McEquivalence r;
  r.residual = mc_residual(beta, ctx);
  r.maurer_cartan = r.residual.is_zero();
  r.determinant = det_I_Z(to_skew(beta), to_bivector(ctx.z()));
  if (r.determinant.is_zero()) throw Error(ErrorCode::GenericallySingular, "beta is nowhere in I_Z");
  auto symbolic = [&] {
    r.symbolic = true;
    r.closed = de_rham(to_form(F_symbolic(beta, ctx), ctx.chart())).is_zero();
  };
  if (r.determinant.is_constant()) {
    symbolic();
    return r;
  }
  r.closed = true;
  for (const auto& p : sample_grid(ctx.chart().dimension(), grid_values)) {
    if (is_zero(r.determinant.den().evaluate(p)) || is_zero(r.determinant.num().evaluate(p))) {
      ++r.points_skipped;
      continue;
    }
    ++r.points_checked;
    if (!dF_at_point(beta, ctx, p).is_zero()) {
      r.closed = false;
      break;
    }
  }
  if (r.points_checked == 0) symbolic();
  return r;
}

}  // namespace presym
