#include "presym/presymplectic/courant.hpp"

namespace presym {

GeneralizedSection::GeneralizedSection(MultivectorField x_, DifferentialForm alpha_)
    : x(std::move(x_)), alpha(std::move(alpha_)) {
  if (!(x.chart() == alpha.chart())) throw Error(ErrorCode::ChartMismatch, "generalized section");
  if (!x.is_homogeneous_of(1)) throw Error(ErrorCode::WrongDegree, "vector part must be a vector field");
  if (!alpha.is_homogeneous_of(1)) throw Error(ErrorCode::WrongDegree, "form part must be a 1-form");
}

GeneralizedSection dorfman(const GeneralizedSection& s1, const GeneralizedSection& s2) {
  if (!(s1.chart() == s2.chart())) throw Error(ErrorCode::ChartMismatch, "dorfman");
  return {schouten(s1.x, s2.x), classical_lie_derivative(s1.x, s2.alpha) - contract(s2.x, de_rham(s1.alpha))};
}

Scalar evaluate_on(const DifferentialForm& a, const MultivectorField& x) { return contract(x, a).coefficient(0); }

Scalar pairing(const GeneralizedSection& s1, const GeneralizedSection& s2) {
  if (!(s1.chart() == s2.chart())) throw Error(ErrorCode::ChartMismatch, "pairing");
  return evaluate_on(s1.alpha, s2.x) + evaluate_on(s2.alpha, s1.x);
}

}  // namespace presym
