#include "presym/dirac/linear.hpp"

namespace presym {

namespace {

template <class F, class Tag>
SkewMatrix<F, Tag> from_entries(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, F>>& entries) {
  Matrix<F> m(n, n);
  for (const auto& [i, j, c] : entries) {
    if (i >= j || j >= n) throw Error(ErrorCode::DimensionMismatch, "skew entry indices must satisfy i < j < n");
    m(j, i) += c;
    m(i, j) -= c;
  }
  return SkewMatrix<F, Tag>(std::move(m));
}

template <class F>
Matrix<F> stack(const Matrix<F>& top, const Matrix<F>& bottom) {
  return Matrix<F>::vconcat(top, bottom);
}

// Apply the block matrix [[a, b], [c, d]] (n x n blocks) to every column.
template <class F>
Subspace<F> transform(const Matrix<F>& t, const Subspace<F>& w) {
  return Subspace<F>::span(t * w.basis());
}

template <class F>
void require_pair_dim(std::size_t n, const PairVector<F>& e) {
  if (e.size() != 2 * n) throw Error(ErrorCode::DimensionMismatch, "element of V + V* has the wrong length");
}

template <class F>
Matrix<F> tau_form_matrix(const SkewBilinear<F>& beta) {
  const std::size_t n = beta.dim();
  Matrix<F> t = Matrix<F>::identity(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t(n + i, j) = beta.sharp()(i, j);
  }
  return t;
}

template <class F>
Matrix<F> tau_bivector_matrix(const Bivector<F>& z) {
  const std::size_t n = z.dim();
  Matrix<F> t = Matrix<F>::identity(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t(i, n + j) = z.sharp()(i, j);
  }
  return t;
}

template <class F>
std::string yes_no(bool b) {
  return b ? "holds" : "fails";
}

}  // namespace

template <class F>
SkewBilinear<F> skew_from_entries(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, F>>& entries) {
  return from_entries<F, FormTag>(n, entries);
}

template <class F>
Bivector<F> bivector_from_entries(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, F>>& entries) {
  return from_entries<F, VectorTag>(n, entries);
}

namespace {

template <class Tag>
SkewMatrix<Scalar, Tag> element_to_matrix(const GradedElement<Tag>& e) {
  const auto n = static_cast<std::size_t>(e.dim());
  Matrix<Scalar> m(n, n);
  for (const auto& [b, c] : e.terms()) {
    if (blade_degree(b) != 2) throw Error(ErrorCode::WrongDegree, "expected a homogeneous degree-2 element");
    auto idx = blade_indices(b);
    auto i = static_cast<std::size_t>(idx[0]), j = static_cast<std::size_t>(idx[1]);
    m(j, i) = c;
    m(i, j) = -c;
  }
  return SkewMatrix<Scalar, Tag>(std::move(m));
}

template <class Tag>
GradedElement<Tag> matrix_to_element(const SkewMatrix<Scalar, Tag>& s, Chart chart) {
  if (static_cast<int>(s.dim()) != chart.dimension()) throw Error(ErrorCode::DimensionMismatch, "matrix size vs chart");
  GradedElement<Tag> e(chart);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    for (std::size_t j = i + 1; j < s.dim(); ++j) {
      e.add_term(blade_bit(static_cast<int>(i)) | blade_bit(static_cast<int>(j)), s.sharp()(j, i));
    }
  }
  return e;
}

}  // namespace

SkewBilinear<Scalar> to_skew(const DifferentialForm& beta) { return element_to_matrix(beta); }
Bivector<Scalar> to_bivector(const MultivectorField& z) { return element_to_matrix(z); }
DifferentialForm to_form(const SkewBilinear<Scalar>& beta, Chart chart) { return matrix_to_element(beta, chart); }
MultivectorField to_multivector(const Bivector<Scalar>& z, Chart chart) { return matrix_to_element(z, chart); }

template <class F>
F pairing(const PairVector<F>& a, const PairVector<F>& b) {
  if (a.size() != b.size() || a.size() % 2) throw Error(ErrorCode::DimensionMismatch, "pairing");
  const std::size_t n = a.size() / 2;
  F acc(0);
  for (std::size_t i = 0; i < n; ++i) {
    acc += a[n + i] * b[i];
    acc += b[n + i] * a[i];
  }
  return acc;
}

template <class F>
bool is_lagrangian(const Subspace<F>& w) {
  if (w.ambient() % 2) return false;
  if (w.dimension() != w.ambient() / 2) return false;
  const Matrix<F>& b = w.basis();
  for (std::size_t i = 0; i < b.cols(); ++i) {
    auto ci = b.column(i);
    for (std::size_t j = i; j < b.cols(); ++j) {
      if (!is_zero(pairing(ci, b.column(j)))) return false;
    }
  }
  return true;
}

template <class F>
LagrangianSubspace<F>::LagrangianSubspace(Subspace<F> w) : space_(std::move(w)) {
  if (!is_lagrangian(space_)) throw Error(ErrorCode::NotLagrangian, "subspace is not Lagrangian");
}

template <class F>
LagrangianSubspace<F> tangent_space(std::size_t n) {
  return LagrangianSubspace<F>(Subspace<F>::span(stack(Matrix<F>::identity(n), Matrix<F>(n, n))));
}

template <class F>
LagrangianSubspace<F> cotangent_space(std::size_t n) {
  return LagrangianSubspace<F>(Subspace<F>::span(stack(Matrix<F>(n, n), Matrix<F>::identity(n))));
}

template <class F>
LagrangianSubspace<F> graph(const SkewBilinear<F>& beta) {
  return LagrangianSubspace<F>(Subspace<F>::span(stack(Matrix<F>::identity(beta.dim()), beta.sharp())));
}

template <class F>
LagrangianSubspace<F> graph(const Bivector<F>& z) {
  return LagrangianSubspace<F>(Subspace<F>::span(stack(z.sharp(), Matrix<F>::identity(z.dim()))));
}

template <class F>
LagrangianSubspace<F> complement_with_annihilator(const Subspace<F>& g) {
  const std::size_t n = g.ambient();
  Matrix<F> ann = g.annihilator().basis();
  Matrix<F> left = stack(g.basis(), Matrix<F>(n, g.dimension()));
  Matrix<F> right = stack(Matrix<F>(n, ann.cols()), ann);
  return LagrangianSubspace<F>(Subspace<F>::span(Matrix<F>::hconcat(left, right)));
}

template <class F>
PairVector<F> tau_form(const SkewBilinear<F>& beta, const PairVector<F>& e) {
  require_pair_dim(beta.dim(), e);
  return tau_form_matrix(beta) * e;
}

template <class F>
Subspace<F> tau_form(const SkewBilinear<F>& beta, const Subspace<F>& w) {
  if (w.ambient() != 2 * beta.dim()) throw Error(ErrorCode::DimensionMismatch, "tau_form");
  return transform(tau_form_matrix(beta), w);
}

template <class F>
PairVector<F> tau_bivector(const Bivector<F>& z, const PairVector<F>& e) {
  require_pair_dim(z.dim(), e);
  return tau_bivector_matrix(z) * e;
}

template <class F>
Subspace<F> tau_bivector(const Bivector<F>& z, const Subspace<F>& w) {
  if (w.ambient() != 2 * z.dim()) throw Error(ErrorCode::DimensionMismatch, "tau_bivector");
  return transform(tau_bivector_matrix(z), w);
}

template <class F>
F det_I_Z(const SkewBilinear<F>& beta, const Bivector<F>& z) {
  if (beta.dim() != z.dim()) throw Error(ErrorCode::DimensionMismatch, "beta and Z sizes differ");
  return determinant(Matrix<F>::identity(beta.dim()) + z.sharp() * beta.sharp());
}

template <class F>
bool in_I_Z(const SkewBilinear<F>& beta, const Bivector<F>& z) {
  return !is_zero(det_I_Z(beta, z));
}

template <class F>
SkewBilinear<F> F_map(const SkewBilinear<F>& beta, const Bivector<F>& z) {
  if (beta.dim() != z.dim()) throw Error(ErrorCode::DimensionMismatch, "beta and Z sizes differ");
  if (beta.is_zero()) return beta;
  auto inv = inverse(Matrix<F>::identity(beta.dim()) + z.sharp() * beta.sharp());
  if (!inv) throw Error(ErrorCode::NotInIZ, "id + Z# beta# is singular");
  return SkewBilinear<F>(beta.sharp() * *inv);
}

template <class F>
Bivector<F> Z_from_eta_G(const SkewBilinear<F>& eta, const Subspace<F>& g) {
  if (g.ambient() != eta.dim()) throw Error(ErrorCode::DimensionMismatch, "G lives in the wrong ambient space");
  if (g.dimension() != rank(eta.sharp())) {
    throw Error(ErrorCode::NotAComplement, "dim G differs from rank eta, so G cannot complement ker eta");
  }
  const Matrix<F>& gb = g.basis();
  auto inv = inverse(gb.transpose() * eta.sharp() * gb);
  if (!inv) throw Error(ErrorCode::DegenerateRestriction, "eta restricted to G is degenerate");
  return Bivector<F>(-(gb * *inv * gb.transpose()));
}

template <class F>
SkewBilinear<F> dirac_exp(const SkewBilinear<F>& eta, const Subspace<F>& g, const SkewBilinear<F>& beta) {
  return eta + F_map(beta, Z_from_eta_G(eta, g));
}

template <class F>
RankKernel<F> rank_and_kernel(const SkewBilinear<F>& beta) {
  Matrix<F> ker = nullspace(beta.sharp());
  return {beta.dim() - ker.cols(), Subspace<F>::span(ker)};
}

template <class F>
HorizontalDecomposition<F> decompose_horizontal(const SkewBilinear<F>& beta, const Subspace<F>& k, const Subspace<F>& g) {
  if (k.ambient() != beta.dim() || g.ambient() != beta.dim() || !are_complementary(k, g)) {
    throw Error(ErrorCode::NotComplementary, "K and G do not split V");
  }
  const std::size_t d = k.dimension(), r = g.dimension();
  Matrix<F> frame = Matrix<F>::hconcat(k.basis(), g.basis());
  Matrix<F> adapted = frame.transpose() * beta.sharp() * frame;  // (i, j) = beta(P_j, P_i)
  if (!adapted.block(0, 0, d, d).is_zero()) {
    throw Error(ErrorCode::NonHorizontalInput, "beta has a nonzero Lambda^2 K* component");
  }
  Matrix<F> mu = adapted.block(d, 0, r, d).transpose();
  return {std::move(mu), SkewBilinear<F>(adapted.block(d, d, r, r))};
}

template <class F>
SkewBilinear<F> reassemble(const HorizontalDecomposition<F>& dec, const Subspace<F>& k, const Subspace<F>& g) {
  const std::size_t d = k.dimension(), r = g.dimension();
  Matrix<F> adapted(d + r, d + r);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < r; ++b) {
      adapted(d + b, a) = dec.mu(a, b);
      adapted(a, d + b) = -dec.mu(a, b);
    }
  }
  for (std::size_t b = 0; b < r; ++b) {
    for (std::size_t c = 0; c < r; ++c) adapted(d + b, d + c) = dec.sigma.sharp()(b, c);
  }
  auto inv = inverse(Matrix<F>::hconcat(k.basis(), g.basis()));
  if (!inv) throw Error(ErrorCode::NotComplementary, "K and G do not split V");
  return SkewBilinear<F>(inv->transpose() * adapted * *inv);
}

template <class F>
LagrangianSubspace<F> lagrangian_graph(const LagrangianSubspace<F>& l, const LagrangianSubspace<F>& r,
                                       const SkewBilinear<F>& eps) {
  const std::size_t n = l.n();
  if (r.n() != n || eps.dim() != n) throw Error(ErrorCode::DimensionMismatch, "lagrangian_graph");
  const Matrix<F>& lb = l.basis();
  const Matrix<F>& rb = r.basis();
  Matrix<F> p(n, n);  // p(i, j) = <r_i, l_j>
  for (std::size_t i = 0; i < n; ++i) {
    auto ri = rb.column(i);
    for (std::size_t j = 0; j < n; ++j) p(i, j) = pairing(ri, lb.column(j));
  }
  auto pinv = inverse(p);
  if (!pinv) throw Error(ErrorCode::NotTransverse, "L and R are not transverse");
  if (eps.is_zero()) return l;
  Matrix<F> y = pinv->transpose() * eps.sharp();
  return LagrangianSubspace<F>(Subspace<F>::span(lb + rb * y));
}

template <class F>
LagrangianSubspace<F> phi_0(const SkewBilinear<F>& alpha) {
  return lagrangian_graph(tangent_space<F>(alpha.dim()), cotangent_space<F>(alpha.dim()), alpha);
}

template <class F>
LagrangianSubspace<F> phi_Z(const SkewBilinear<F>& beta, const Bivector<F>& z) {
  return lagrangian_graph(tangent_space<F>(beta.dim()), graph(z), beta);
}

template <class F>
LagrangianSubspace<F> phi_G_Kstar(const SkewBilinear<F>& eta, const Subspace<F>& g, const SkewBilinear<F>& beta) {
  return lagrangian_graph(graph(eta), complement_with_annihilator(g), beta);
}

template <class F>
std::optional<SkewBilinear<F>> phi_0_inverse(const LagrangianSubspace<F>& w) {
  const std::size_t n = w.n();
  const Matrix<F>& b = w.basis();
  if (!(b.block(0, 0, n, n) == Matrix<F>::identity(n))) return std::nullopt;
  return SkewBilinear<F>(b.block(n, 0, n, n));
}

template <class F>
LemmaReport verify_linear_lemmas(const SkewBilinear<F>& eta, const Subspace<F>& g, const SkewBilinear<F>& beta) {
  LemmaReport report;
  auto add = [&](std::string name, bool applicable, bool passed, std::string detail) {
    report.checks.push_back({std::move(name), applicable, passed, std::move(detail)});
  };
  const std::size_t n = eta.dim();
  const Bivector<F> z = Z_from_eta_G(eta, g);
  const RankKernel<F> eta_rk = rank_and_kernel(eta);
  const Subspace<F>& k = eta_rk.kernel;
  const SkewBilinear<F> minus_eta = -eta;
  const LagrangianSubspace<F> gk = complement_with_annihilator(g);
  const LagrangianSubspace<F> big_phi = phi_G_Kstar(eta, g, beta);
  const LagrangianSubspace<F> small_phi = phi_Z(beta, z);
  const bool in_iz = in_I_Z(beta, z);

  bool te = tau_form(minus_eta, gk.space()) == graph(z).space();
  add("tau-eta-complement", true, te, "tau_{-eta}(G + K*) = graph(Z) " + yes_no<F>(te));

  bool tm = tau_form(minus_eta, big_phi.space()) == small_phi.space();
  add("tau-eta-phi", true, tm, "tau_{-eta}(Phi_{G+K*}) = Phi_Z " + yes_no<F>(tm));

  if (in_iz) {
    bool ne = graph(dirac_exp(eta, g, beta)) == big_phi;
    add("exp-graph", true, ne, "graph(exp_eta(beta)) = Phi_{G+K*} " + yes_no<F>(ne));
  } else {
    add("exp-graph", false, true, "beta outside I_Z");
  }

  const Matrix<F> kb = k.basis();
  const Matrix<F> kk_block = kb.transpose() * beta.sharp() * kb;
  const std::size_t lhs = big_phi.space().intersect(tangent_space<F>(n).space()).dimension();
  const std::size_t rhs = k.dimension() - rank(kk_block);
  add("rank-formula", true, lhs == rhs,
      "dim(Phi cap V) = " + std::to_string(lhs) + ", dim{v in K : i_v beta in K°} = " + std::to_string(rhs));

  if (auto form = phi_0_inverse(big_phi)) {
    bool same_rank = rank(form->sharp()) == eta_rk.rank;
    bool horizontal = kk_block.is_zero();
    add("rank-horizontal", true, same_rank == horizontal,
        std::string("rank preserved: ") + (same_rank ? "yes" : "no") + ", horizontal: " + (horizontal ? "yes" : "no"));
  } else {
    add("rank-horizontal", false, true, "Phi_{G+K*} is not a graph");
  }

  auto small_form = phi_0_inverse(small_phi);
  bool ad2 = small_form.has_value() == in_iz;
  add("phi-z-transverse", true, ad2, "Phi_Z transverse to V* iff beta in I_Z " + yes_no<F>(ad2));

  if (in_iz) {
    const SkewBilinear<F> f = F_map(beta, z);
    bool ad3 = small_form && *small_form == f;
    add("phi-z-f-map", true, ad3, "Phi_0^-1 Phi_Z = F " + yes_no<F>(ad3));
    bool pz = graph(f) == small_phi;
    add("f-graph", true, pz, "graph(F(beta)) = Phi_Z(beta) " + yes_no<F>(pz));
  } else {
    add("phi-z-f-map", false, true, "beta outside I_Z");
    add("f-graph", false, true, "beta outside I_Z");
  }
  return report;
}

#define PRESYM_INSTANTIATE_DIRAC(F)                                                                                 \
  template SkewBilinear<F> skew_from_entries(std::size_t, const std::vector<std::tuple<std::size_t, std::size_t, F>>&); \
  template Bivector<F> bivector_from_entries(std::size_t,                                                          \
                                             const std::vector<std::tuple<std::size_t, std::size_t, F>>&);         \
  template F pairing(const PairVector<F>&, const PairVector<F>&);                                                  \
  template bool is_lagrangian(const Subspace<F>&);                                                                 \
  template class LagrangianSubspace<F>;                                                                            \
  template LagrangianSubspace<F> tangent_space(std::size_t);                                                       \
  template LagrangianSubspace<F> cotangent_space(std::size_t);                                                     \
  template LagrangianSubspace<F> graph(const SkewBilinear<F>&);                                                    \
  template LagrangianSubspace<F> graph(const Bivector<F>&);                                                        \
  template LagrangianSubspace<F> complement_with_annihilator(const Subspace<F>&);                                  \
  template PairVector<F> tau_form(const SkewBilinear<F>&, const PairVector<F>&);                                   \
  template Subspace<F> tau_form(const SkewBilinear<F>&, const Subspace<F>&);                                       \
  template PairVector<F> tau_bivector(const Bivector<F>&, const PairVector<F>&);                                   \
  template Subspace<F> tau_bivector(const Bivector<F>&, const Subspace<F>&);                                       \
  template F det_I_Z(const SkewBilinear<F>&, const Bivector<F>&);                                                  \
  template bool in_I_Z(const SkewBilinear<F>&, const Bivector<F>&);                                                \
  template SkewBilinear<F> F_map(const SkewBilinear<F>&, const Bivector<F>&);                                      \
  template Bivector<F> Z_from_eta_G(const SkewBilinear<F>&, const Subspace<F>&);                                   \
  template SkewBilinear<F> dirac_exp(const SkewBilinear<F>&, const Subspace<F>&, const SkewBilinear<F>&);          \
  template RankKernel<F> rank_and_kernel(const SkewBilinear<F>&);                                                  \
  template HorizontalDecomposition<F> decompose_horizontal(const SkewBilinear<F>&, const Subspace<F>&,             \
                                                           const Subspace<F>&);                                    \
  template SkewBilinear<F> reassemble(const HorizontalDecomposition<F>&, const Subspace<F>&, const Subspace<F>&);  \
  template LagrangianSubspace<F> lagrangian_graph(const LagrangianSubspace<F>&, const LagrangianSubspace<F>&,       \
                                                  const SkewBilinear<F>&);                                         \
  template LagrangianSubspace<F> phi_0(const SkewBilinear<F>&);                                                    \
  template LagrangianSubspace<F> phi_Z(const SkewBilinear<F>&, const Bivector<F>&);                                \
  template LagrangianSubspace<F> phi_G_Kstar(const SkewBilinear<F>&, const Subspace<F>&, const SkewBilinear<F>&);  \
  template std::optional<SkewBilinear<F>> phi_0_inverse(const LagrangianSubspace<F>&);                             \
  template LemmaReport verify_linear_lemmas(const SkewBilinear<F>&, const Subspace<F>&, const SkewBilinear<F>&);

PRESYM_INSTANTIATE_DIRAC(Rational)
PRESYM_INSTANTIATE_DIRAC(Scalar)

}  // namespace presym
