#pragma once

#include <span>
#include <vector>

#include "presym/dirac/linear.hpp"
#include "presym/exterior/calculus.hpp"

namespace presym {

/// A bivector field Z together with the cached trivector (1/2)[Z, Z].
class KoszulContext {
 public:
  /// Throws WrongDegree unless z is a bivector field.
  explicit KoszulContext(MultivectorField z);

  const Chart& chart() const { return z_.chart(); }
  const MultivectorField& z() const { return z_; }
  const MultivectorField& half_schouten() const { return half_zz_; }
  bool is_poisson() const { return half_zz_.is_zero(); }

 private:
  MultivectorField z_;
  MultivectorField half_zz_;
};

/// Form alpha viewed in Omega[2]; its shifted degree is |alpha| - 2.
class ShiftedForm {
 public:
  /// Throws InhomogeneousInput unless `form` is homogeneous of `degree`.
  ShiftedForm(DifferentialForm form, int degree);
  /// Degree read off the form; throws InhomogeneousInput for mixed or zero forms.
  explicit ShiftedForm(DifferentialForm form);

  const DifferentialForm& form() const { return form_; }
  int degree() const { return degree_; }
  int shifted_degree() const { return degree_ - 2; }
  ShiftedForm operator-() const { return {-form_, degree_}; }
  friend bool operator==(const ShiftedForm&, const ShiftedForm&) = default;

 private:
  DifferentialForm form_;
  int degree_;
};

/// Definition: (-1)^{|a|+1} (L_Z(a ^ b) - L_Z(a) ^ b - (-1)^{|a|} a ^ L_Z(b)).
DifferentialForm koszul_bracket(const DifferentialForm& a, const DifferentialForm& b, const KoszulContext& ctx);

/// 1-forms only: L_{Z#a} b - L_{Z#b} a - d<Z, a ^ b>, Cartan Lie derivatives.
DifferentialForm koszul_bracket_one_forms(const DifferentialForm& a, const DifferentialForm& b, const KoszulContext& ctx);

/// (a# ^ b# ^ c#)((1/2)[Z, Z]).
DifferentialForm trinary_bracket(const DifferentialForm& a, const DifferentialForm& b, const DifferentialForm& c,
                                 const KoszulContext& ctx);

/// lambda_1 = d, lambda_2 = (-1)^{|a|}[a, b]_Z, lambda_3 = (-1)^{|b|+1}[a, b, c]_Z.
/// Throws ArityMismatch unless 1 <= inputs.size() <= 3.
ShiftedForm lambda(std::span<const ShiftedForm> inputs, const KoszulContext& ctx);
ShiftedForm lambda(const ShiftedForm& a, const KoszulContext& ctx);
ShiftedForm lambda(const ShiftedForm& a, const ShiftedForm& b, const KoszulContext& ctx);
ShiftedForm lambda(const ShiftedForm& a, const ShiftedForm& b, const ShiftedForm& c, const KoszulContext& ctx);
/// Arity-checked entry point; k must equal inputs.size().
ShiftedForm lambda(int k, std::span<const ShiftedForm> inputs, const KoszulContext& ctx);

/// The second expression for lambda_2: -(L_Z(a ^ b) - L_Z(a) ^ b - (-1)^{|a|} a ^ L_Z(b)).
DifferentialForm lambda2_lie_expansion(const DifferentialForm& a, const DifferentialForm& b, const KoszulContext& ctx);

// ---- brackets from TM with complement graph(Z) ----------------------------

/// Bracket on forms obtained from pr_R of the Dorfman bracket on generators
/// (dx_i, f) and extended as a biderivation of degree -1.
DifferentialForm cotangent_bracket(const DifferentialForm& a, const DifferentialForm& b, const KoszulContext& ctx);

/// The trivector psi with i(psi)(xi1 ^ xi2 ^ xi3) = <pr_L [[xi1, xi2]], xi3>, xi_i in graph(Z).
MultivectorField psi_trivector(const KoszulContext& ctx);

/// mu_1 = d, mu_2 = -(-1)^{|a|}[a, b]_{L*}, mu_3 = (-1)^{|b|}(a# ^ b# ^ c#) psi.
ShiftedForm mu(int k, std::span<const ShiftedForm> inputs, const KoszulContext& ctx);

// ---- L-infinity[1] identities ---------------------------------------------

enum class BracketFamily { Lambda, Mu };

/// Sum over unshuffles of epsilon * l_i(l_j(x_S), x_rest), i + j = n + 1.
/// Zero for every input iff the generalized Jacobi identity of arity n holds.
DifferentialForm jacobiator(std::span<const ShiftedForm> inputs, const KoszulContext& ctx,
                            BracketFamily family = BracketFamily::Lambda);

/// Koszul sign of sorting `degrees` by the permutation `order` (shifted degrees).
int koszul_sign(std::span<const int> degrees, std::span<const std::size_t> order);

// ---- Maurer-Cartan ---------------------------------------------------------

/// d beta + (1/2) lambda_2(beta, beta) + (1/6) lambda_3(beta, beta, beta).
/// Throws WrongDegree unless beta is a 2-form.
DifferentialForm mc_residual(const DifferentialForm& beta, const KoszulContext& ctx);

/// F(beta) with rational-function entries. Throws GenericallySingular when
/// det(id + Z# beta#) vanishes identically.
SkewBilinear<Scalar> F_symbolic(const DifferentialForm& beta, const KoszulContext& ctx);

/// Grid of sample points: all tuples with coordinates drawn from `values`.
std::vector<std::vector<Rational>> sample_grid(int dimension, const std::vector<Rational>& values);
/// {0, 1/2, -1/3}.
std::vector<Rational> default_grid_values();

struct McEquivalence {
  bool symbolic = false;          // determinant is a nonzero constant
  bool maurer_cartan = false;     // residual is exactly zero
  bool closed = false;            // d F(beta) = 0 (exactly, or at every usable grid point)
  std::size_t points_checked = 0; // grid points away from det = 0
  std::size_t points_skipped = 0;
  Scalar determinant;
  DifferentialForm residual{Chart(1)};
  bool agrees() const { return maurer_cartan == closed; }
};

/// Checks MC(beta) <=> d F(beta) = 0, symbolically when det(id + Z# beta#) is a
/// nonzero constant and on the grid otherwise.
McEquivalence check_mc_equivalence(const DifferentialForm& beta, const KoszulContext& ctx,
                                   const std::vector<Rational>& grid_values = default_grid_values());

/// d(F(beta)) evaluated at a point where det(id + Z# beta#) != 0, via
/// d(A^-1) = -A^-1 (dA) A^-1. Components indexed by 3-blades.
DifferentialForm dF_at_point(const DifferentialForm& beta, const KoszulContext& ctx, std::span<const Rational> point);

}  // namespace presym
