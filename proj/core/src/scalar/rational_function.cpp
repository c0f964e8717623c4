#include "presym/scalar/rational_function.hpp"

#include "presym/error.hpp"

namespace presym {

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational function with zero denominator");
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (!den_.is_constant()) {
    Polynomial g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = exact_quotient(num_, g);
      den_ = exact_quotient(den_, g);
    }
  }
  if (!den_.is_one()) {
    Rational inv = 1 / den_.leading_coefficient();
    num_ *= inv;
    den_ *= inv;
  }
}

RationalFunction RationalFunction::operator-() const { return RationalFunction(-num_, den_, Reduced{}); }

RationalFunction& RationalFunction::operator+=(const RationalFunction& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) return *this = rhs;
  if (den_ == rhs.den_) {
    num_ += rhs.num_;
    if (!den_.is_one()) normalize();
    return *this;
  }
  Polynomial g = gcd(den_, rhs.den_);
  Polynomial a = exact_quotient(rhs.den_, g);
  Polynomial b = exact_quotient(den_, g);
  num_ = num_ * a + rhs.num_ * b;
  den_ = den_ * a;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& rhs) { return *this += -rhs; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& rhs) {
  if (is_zero() || rhs.is_zero()) return *this = RationalFunction();
  if (den_.is_one() && rhs.den_.is_one()) {
    num_ *= rhs.num_;
    return *this;
  }
  // Cross-cancel so the product is already reduced.
  Polynomial g1 = gcd(num_, rhs.den_);
  Polynomial g2 = gcd(rhs.num_, den_);
  Polynomial n = exact_quotient(num_, g1) * exact_quotient(rhs.num_, g2);
  Polynomial d = exact_quotient(den_, g2) * exact_quotient(rhs.den_, g1);
  Rational inv = 1 / d.leading_coefficient();
  num_ = n * inv;
  den_ = d * inv;
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& rhs) {
  if (rhs.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero rational function");
  return *this *= RationalFunction(rhs.den_, rhs.num_);
}

RationalFunction RationalFunction::derivative(int var) const {
  if (den_.is_one()) return RationalFunction(num_.derivative(var), Polynomial(1), Reduced{});
  Polynomial n = num_.derivative(var) * den_ - num_ * den_.derivative(var);
  return RationalFunction(std::move(n), den_ * den_);
}

Rational RationalFunction::evaluate(std::span<const Rational> point) const {
  Rational d = den_.evaluate(point);
  if (presym::is_zero(d)) throw Error(ErrorCode::PoleAtPoint, "denominator " + den_.to_string() + " vanishes");
  return num_.evaluate(point) / d;
}

std::string RationalFunction::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

namespace {

/// Index of the '/' separating "(p)/(q)" or "p/(q)", or npos.
std::size_t fraction_bar(std::string_view s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '/' && depth == 0 && i > 0) {
      std::size_t k = i;
      while (k > 0 && s[k - 1] == ' ') --k;
      if (k > 0 && s[k - 1] == ')') return i;
      std::size_t j = i + 1;
      while (j < s.size() && s[j] == ' ') ++j;
      if (j < s.size() && s[j] == '(') return i;
    }
  }
  return std::string_view::npos;
}

}  // namespace

RationalFunction RationalFunction::parse(std::string_view text) {
  std::size_t bar = fraction_bar(text);
  if (bar == std::string_view::npos) return RationalFunction(Polynomial::parse(text));
  Polynomial den = Polynomial::parse(text.substr(bar + 1));
  if (den.is_zero()) throw Error(ErrorCode::ParseError, "zero denominator in \"" + std::string(text) + "\"");
  return RationalFunction(Polynomial::parse(text.substr(0, bar)), std::move(den));
}

}  // namespace presym
