#pragma once

#include <span>
#include <string>
#include <string_view>

#include "presym/scalar/polynomial.hpp"

namespace presym {

/// Reduced quotient of polynomials with a monic denominator. Two values are
/// equal as functions iff they are structurally equal.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(Polynomial p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
  /// Throws DivisionByZero for a zero denominator.
  RationalFunction(Polynomial num, Polynomial den);

  static RationalFunction variable(int var) { return RationalFunction(Polynomial::variable(var)); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return den_.is_one() && num_.is_constant(); }
  Rational constant_value() const { return num_.constant_term(); }
  /// max(deg num, deg den)
  int degree() const { return std::max(num_.total_degree(), den_.total_degree()); }

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& rhs);
  RationalFunction& operator-=(const RationalFunction& rhs);
  RationalFunction& operator*=(const RationalFunction& rhs);
  RationalFunction& operator/=(const RationalFunction& rhs);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) = default;

  /// Quotient rule.
  RationalFunction derivative(int var) const;

  /// Throws PoleAtPoint when the denominator vanishes at the point.
  Rational evaluate(std::span<const Rational> point) const;

  template <class T>
  T evaluate_as(std::span<const T> point) const {
    return num_.evaluate_as<T>(point) / den_.evaluate_as<T>(point);
  }

  /// A polynomial string, or `(num)/(den)` when the denominator is not 1.
  std::string to_string() const;
  /// Accepts the to_string format, any polynomial string, and `(p)/(q)`.
  static RationalFunction parse(std::string_view text);

 private:
  struct Reduced {};
  RationalFunction(Polynomial num, Polynomial den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();

  Polynomial num_;
  Polynomial den_;
};

using Scalar = RationalFunction;

inline bool is_zero(const RationalFunction& f) { return f.is_zero(); }

}  // namespace presym
