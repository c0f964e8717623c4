#pragma once

#include "presym/exterior/calculus.hpp"

namespace presym {

/// Section (X, alpha) of TM + T*M on a chart.
struct GeneralizedSection {
  MultivectorField x;
  DifferentialForm alpha;

  /// Throws WrongDegree / ChartMismatch.
  GeneralizedSection(MultivectorField x, DifferentialForm alpha);
  static GeneralizedSection vector(const MultivectorField& x) { return {x, DifferentialForm(x.chart())}; }
  static GeneralizedSection form(const DifferentialForm& a) { return {MultivectorField(a.chart()), a}; }

  const Chart& chart() const { return x.chart(); }
  friend bool operator==(const GeneralizedSection&, const GeneralizedSection&) = default;
};

/// [[(X, a), (Y, b)]] = ([X, Y], L_X b - i_Y da), L_X the Cartan Lie derivative.
GeneralizedSection dorfman(const GeneralizedSection& s1, const GeneralizedSection& s2);

/// <(X, a), (Y, b)> = a(Y) + b(X).
Scalar pairing(const GeneralizedSection& s1, const GeneralizedSection& s2);

/// Value a(X) of a 1-form on a vector field.
Scalar evaluate_on(const DifferentialForm& a, const MultivectorField& x);

}  // namespace presym
