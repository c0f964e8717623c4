#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "presym/exterior/graded_element.hpp"
#include "presym/linalg/subspace.hpp"

namespace presym {

// Matrices here are sharp maps in the standard basis. For a 2-form b,
// M v = i(v) b, so b = sum_{i<j} b_ij e_i* ^ e_j* has M(j,i) = b_ij. For a
// bivector Z, M xi = Z(xi, .), so Z = e_1 ^ e_2 has M = [[0,-1],[1,0]].

/// n x n skew matrix; Tag separates 2-forms from bivectors.
template <class F, class Tag>
class SkewMatrix {
 public:
  explicit SkewMatrix(std::size_t n = 0) : m_(n, n) {}
  /// Throws NotSkew unless M^T = -M exactly.
  explicit SkewMatrix(Matrix<F> m) : m_(std::move(m)) {
    if (!m_.is_skew()) throw Error(ErrorCode::NotSkew, "matrix is not skew-symmetric");
  }

  std::size_t dim() const { return m_.rows(); }
  const Matrix<F>& sharp() const { return m_; }
  bool is_zero() const { return m_.is_zero(); }

  SkewMatrix operator-() const { return SkewMatrix(-m_, Trusted{}); }
  friend SkewMatrix operator+(const SkewMatrix& a, const SkewMatrix& b) { return SkewMatrix(a.m_ + b.m_, Trusted{}); }
  friend SkewMatrix operator-(const SkewMatrix& a, const SkewMatrix& b) { return SkewMatrix(a.m_ - b.m_, Trusted{}); }
  friend SkewMatrix operator*(const F& c, const SkewMatrix& a) { return SkewMatrix(a.m_ * c, Trusted{}); }
  friend bool operator==(const SkewMatrix&, const SkewMatrix&) = default;

 private:
  struct Trusted {};
  SkewMatrix(Matrix<F> m, Trusted) : m_(std::move(m)) {}
  Matrix<F> m_;
};

template <class F>
using SkewBilinear = SkewMatrix<F, FormTag>;
template <class F>
using Bivector = SkewMatrix<F, VectorTag>;

/// sum_{i<j} c_ij e_i* ^ e_j*, entries c_ij given as (i, j, c) with i < j.
template <class F>
SkewBilinear<F> skew_from_entries(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, F>>& entries);
template <class F>
Bivector<F> bivector_from_entries(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, F>>& entries);

/// Coefficient of e_i* ^ e_j* (i < j).
template <class F, class Tag>
F skew_coefficient(const SkewMatrix<F, Tag>& s, std::size_t i, std::size_t j) {
  return s.sharp()(j, i);
}

// Bridges to the exterior layer (degree-2 components only).
SkewBilinear<Scalar> to_skew(const DifferentialForm& beta);
Bivector<Scalar> to_bivector(const MultivectorField& z);
DifferentialForm to_form(const SkewBilinear<Scalar>& beta, Chart chart);
MultivectorField to_multivector(const Bivector<Scalar>& z, Chart chart);
template <class Tag>
SkewMatrix<Rational, Tag> evaluate(const SkewMatrix<Scalar, Tag>& s, std::span<const Rational> point) {
  return SkewMatrix<Rational, Tag>(evaluate(s.sharp(), point));
}
template <class Tag>
SkewMatrix<Scalar, Tag> lift(const SkewMatrix<Rational, Tag>& s) {
  return SkewMatrix<Scalar, Tag>(lift(s.sharp()));
}

// ---- the pairing space V + V* --------------------------------------------

/// Element (v, xi) of V + V*, stored as the 2n-vector (v_1..v_n, xi_1..xi_n).
template <class F>
using PairVector = std::vector<F>;

/// <(v, xi), (w, chi)> = xi(w) + chi(v).
template <class F>
F pairing(const PairVector<F>& a, const PairVector<F>& b);

template <class F>
bool is_lagrangian(const Subspace<F>& w);

/// A Subspace of V + V* checked to be Lagrangian.
template <class F>
class LagrangianSubspace {
 public:
  /// Throws NotLagrangian.
  explicit LagrangianSubspace(Subspace<F> w);
  std::size_t n() const { return space_.ambient() / 2; }
  const Subspace<F>& space() const { return space_; }
  const Matrix<F>& basis() const { return space_.basis(); }
  friend bool operator==(const LagrangianSubspace&, const LagrangianSubspace&) = default;

 private:
  Subspace<F> space_;
};

template <class F>
LagrangianSubspace<F> tangent_space(std::size_t n);    // V
template <class F>
LagrangianSubspace<F> cotangent_space(std::size_t n);  // V*
template <class F>
LagrangianSubspace<F> graph(const SkewBilinear<F>& beta);  // {(v, i(v) beta)}
template <class F>
LagrangianSubspace<F> graph(const Bivector<F>& z);         // {(Z# xi, xi)}
/// G + G°, where the annihilator G° of G plays the role of K*.
template <class F>
LagrangianSubspace<F> complement_with_annihilator(const Subspace<F>& g);

/// tau_beta(v, xi) = (v, xi + beta# v)
template <class F>
PairVector<F> tau_form(const SkewBilinear<F>& beta, const PairVector<F>& e);
template <class F>
Subspace<F> tau_form(const SkewBilinear<F>& beta, const Subspace<F>& w);
/// tau_Z(v, xi) = (v + Z# xi, xi)
template <class F>
PairVector<F> tau_bivector(const Bivector<F>& z, const PairVector<F>& e);
template <class F>
Subspace<F> tau_bivector(const Bivector<F>& z, const Subspace<F>& w);

// ---- the map F and the Dirac exponential ----------------------------------

/// det(id + Z# beta#); its zero set is where beta leaves I_Z.
template <class F>
F det_I_Z(const SkewBilinear<F>& beta, const Bivector<F>& z);
template <class F>
bool in_I_Z(const SkewBilinear<F>& beta, const Bivector<F>& z);

/// F(beta)# = beta# (id + Z# beta#)^-1. Throws NotInIZ.
template <class F>
SkewBilinear<F> F_map(const SkewBilinear<F>& beta, const Bivector<F>& z);

/// The bivector in Lambda^2 G with Z# = -(eta|_G #)^-1.
/// Throws NotAComplement when dim G != rank eta, DegenerateRestriction when
/// eta restricted to G is singular.
template <class F>
Bivector<F> Z_from_eta_G(const SkewBilinear<F>& eta, const Subspace<F>& g);

/// eta + F(beta) with Z = Z_from_eta_G(eta, G). Throws NotInIZ.
template <class F>
SkewBilinear<F> dirac_exp(const SkewBilinear<F>& eta, const Subspace<F>& g, const SkewBilinear<F>& beta);

template <class F>
struct RankKernel {
  std::size_t rank;
  Subspace<F> kernel;
};
template <class F>
RankKernel<F> rank_and_kernel(const SkewBilinear<F>& beta);

/// beta = sum mu_ab k^a ^ g^b + sum_{b<c} sigma_bc g^b ^ g^c in the dual frame of
/// (K basis, G basis). mu(a, b) = beta(k_a, g_b); sigma is in G-frame coordinates.
template <class F>
struct HorizontalDecomposition {
  Matrix<F> mu;
  SkewBilinear<F> sigma;
};

/// Throws NotComplementary, NonHorizontalInput.
template <class F>
HorizontalDecomposition<F> decompose_horizontal(const SkewBilinear<F>& beta, const Subspace<F>& k, const Subspace<F>& g);
/// Inverse of decompose_horizontal.
template <class F>
SkewBilinear<F> reassemble(const HorizontalDecomposition<F>& d, const Subspace<F>& k, const Subspace<F>& g);

/// Graph of eps# : L -> L* = R, i.e. {l + r(l)} with <r(l), l'> = eps(l, l').
/// eps is expressed in the canonical basis of L. Throws NotTransverse.
template <class F>
LagrangianSubspace<F> lagrangian_graph(const LagrangianSubspace<F>& l, const LagrangianSubspace<F>& r,
                                       const SkewBilinear<F>& eps);

template <class F>
LagrangianSubspace<F> phi_0(const SkewBilinear<F>& alpha);
template <class F>
LagrangianSubspace<F> phi_Z(const SkewBilinear<F>& beta, const Bivector<F>& z);
/// Graph over graph(eta) with complement G + K*, beta pulled back along graph(eta) -> V.
template <class F>
LagrangianSubspace<F> phi_G_Kstar(const SkewBilinear<F>& eta, const Subspace<F>& g, const SkewBilinear<F>& beta);
/// The 2-form whose graph is W, if W is transverse to V*.
template <class F>
std::optional<SkewBilinear<F>> phi_0_inverse(const LagrangianSubspace<F>& w);

struct LemmaCheck {
  std::string name;
  bool applicable = true;
  bool passed = false;
  std::string detail;
};

struct LemmaReport {
  std::vector<LemmaCheck> checks;
  bool all_passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

/// Evaluates both sides of each linear lemma and records agreement.
template <class F>
LemmaReport verify_linear_lemmas(const SkewBilinear<F>& eta, const Subspace<F>& g, const SkewBilinear<F>& beta);

}  // namespace presym
