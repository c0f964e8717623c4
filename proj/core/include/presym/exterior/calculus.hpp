#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "presym/exterior/graded_element.hpp"

namespace presym {

// Conventions used throughout:
//   * contraction by a decomposable multivector applies the rightmost factor
//     first: i(X1 ^ ... ^ Xk) = i(X1) o ... o i(Xk);
//   * the pairing of a bivector with a 2-form is <X^Y, a^b> = a(X)b(Y) - a(Y)b(X),
//     so for 2-forms i(Z) w = -<Z, w>;
//   * the Lie derivative by a multivector is L_P = i(P) o d - d o i(P).

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);
MultivectorField wedge(const MultivectorField& a, const MultivectorField& b);

DifferentialForm de_rham(const DifferentialForm& alpha);

/// i(P) alpha; terms with deg P > deg alpha contribute nothing.
DifferentialForm contract(const MultivectorField& p, const DifferentialForm& alpha);

/// L_P alpha = i(P) d alpha - d i(P) alpha.
DifferentialForm lie_derivative(const MultivectorField& p, const DifferentialForm& alpha);

/// Cartan's L_X = i(X) d + d i(X) for a vector field X.
DifferentialForm classical_lie_derivative(const MultivectorField& x, const DifferentialForm& alpha);

/// Schouten-Nijenhuis bracket. On vector fields this is the Lie bracket
/// [X, Y]^j = X^i d_i Y^j - Y^i d_i X^j.
MultivectorField schouten(const MultivectorField& p, const MultivectorField& q);

/// (a1# ^ ... ^ am#)(W) = sum over permutations s of sign(s)
///   i(v_s(1)) a1 ^ ... ^ i(v_s(m)) am, extended linearly in W = v1 ^ ... ^ vm.
/// Throws ArityMismatch unless W is homogeneous of degree m.
DifferentialForm multi_sharp(std::span<const DifferentialForm> forms, const MultivectorField& w);

/// Z#(alpha) = Z(alpha, .) for a bivector Z and a 1-form alpha.
MultivectorField sharp(const MultivectorField& z, const DifferentialForm& alpha);

/// <Z, omega> for a bivector Z and 2-form omega (see convention above).
Scalar pairing(const MultivectorField& z, const DifferentialForm& omega);

/// Substitute a rational point into every coefficient. Throws PoleAtPoint.
template <class Tag>
GradedElement<Tag> evaluate(const GradedElement<Tag>& e, std::span<const Rational> point) {
  if (static_cast<int>(point.size()) != e.dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension");
  GradedElement<Tag> out(e.chart());
  for (const auto& [b, c] : e.terms()) out.add_term(b, Scalar(c.evaluate(point)));
  return out;
}

/// Floating evaluation for cross-checks.
template <class T, class Tag>
std::vector<std::pair<Blade, T>> evaluate_as(const GradedElement<Tag>& e, std::span<const T> point) {
  std::vector<std::pair<Blade, T>> out;
  for (const auto& [b, c] : e.terms()) out.emplace_back(b, c.template evaluate_as<T>(point));
  return out;
}

/// Coordinate vector field components (v^1..v^n) -> sum v^i d/dx_i.
MultivectorField vector_field(Chart chart, const std::vector<Scalar>& components);
/// Coordinate 1-form components -> sum a_i dx_i.
DifferentialForm one_form(Chart chart, const std::vector<Scalar>& components);
/// Components of a degree-1 element (other degrees are ignored).
template <class Tag>
std::vector<Scalar> components(const GradedElement<Tag>& e) {
  std::vector<Scalar> out(static_cast<std::size_t>(e.dim()));
  for (const auto& [b, c] : e.terms()) {
    if (blade_degree(b) == 1) out[static_cast<std::size_t>(std::countr_zero(b))] = c;
  }
  return out;
}

}  // namespace presym
