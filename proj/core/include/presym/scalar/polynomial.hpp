#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace presym {

using Rational = mpq_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline constexpr int kDefaultDegreeCap = 8;
inline constexpr int kMaxDegreeCap = 255;

/// Total-degree bound enforced by polynomial multiplication. Thread-local so
/// independent trials can run with their own cap.
int degree_cap() noexcept;

/// RAII override of the thread's degree cap.
class DegreeCapScope {
 public:
  explicit DegreeCapScope(int cap);
  ~DegreeCapScope();
  DegreeCapScope(const DegreeCapScope&) = delete;
  DegreeCapScope& operator=(const DegreeCapScope&) = delete;

 private:
  int saved_;
};

/// Exponent vector packed eight bits per variable, variable 0 in the top byte,
/// so that integer order on equal-degree monomials is lexicographic order.
class Monomial {
 public:
  static constexpr int kMaxVariables = 8;

  constexpr Monomial() = default;

  static Monomial variable(int var, unsigned exponent = 1);

  unsigned exponent(int var) const { return static_cast<unsigned>((bits_ >> shift(var)) & 0xffu); }
  unsigned degree() const {
    return static_cast<unsigned>((bits_ * 0x0101010101010101ull) >> 56);
  }
  bool is_one() const { return bits_ == 0; }
  /// Index of the highest variable with a nonzero exponent, or -1.
  int highest_variable() const;
  bool divides(Monomial other) const;
  Monomial with_exponent(int var, unsigned e) const;
  std::uint64_t bits() const { return bits_; }

  /// Caller guarantees the summed degree stays below 256.
  friend Monomial operator*(Monomial a, Monomial b) {
    Monomial m;
    m.bits_ = a.bits_ + b.bits_;
    return m;
  }
  /// Requires b.divides(a).
  friend Monomial operator/(Monomial a, Monomial b) {
    Monomial m;
    m.bits_ = a.bits_ - b.bits_;
    return m;
  }
  friend bool operator==(Monomial a, Monomial b) = default;
  /// Graded lexicographic order with x1 > x2 > ... .
  friend std::strong_ordering operator<=>(Monomial a, Monomial b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  static constexpr int shift(int var) { return 8 * (7 - var); }
  std::uint64_t bits_ = 0;
};

/// Sparse multivariate polynomial over the rationals. Terms are kept sorted in
/// strictly decreasing graded-lex order with no zero coefficients, so equality
/// is structural.
class Polynomial {
 public:
  using Term = std::pair<Monomial, Rational>;

  Polynomial() = default;
  Polynomial(long c);  // NOLINT(google-explicit-constructor)
  Polynomial(const Rational& c);  // NOLINT(google-explicit-constructor)

  static Polynomial variable(int var);
  static Polynomial monomial(Monomial m, Rational c = 1);
  static Polynomial from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].first.is_one() && terms_[0].second == 1; }
  Rational constant_term() const;
  /// -1 for the zero polynomial.
  int total_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().first.degree()); }
  unsigned degree_in(int var) const;
  int highest_variable() const;
  const Term& leading_term() const { return terms_.front(); }
  const Rational& leading_coefficient() const { return terms_.front().second; }

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  Polynomial derivative(int var) const;
  Polynomial pow(unsigned e) const;
  /// Scale so the leading coefficient is 1. Zero stays zero.
  Polynomial monic() const;

  Rational evaluate(std::span<const Rational> point) const;

  template <class T>
  T evaluate_as(std::span<const T> point) const {
    T acc(0);
    for (const auto& [m, c] : terms_) {
      T t(c.get_d());
      for (int v = 0; v < Monomial::kMaxVariables; ++v) {
        for (unsigned e = m.exponent(v); e > 0; --e) t *= point[static_cast<std::size_t>(v)];
      }
      acc += t;
    }
    return acc;
  }

  /// Fixed grammar: `coef*x1^a*x2^b` terms joined by ` + ` / ` - `.
  std::string to_string() const;
  /// Inverse of to_string; also accepts arbitrary whitespace and factor order.
  static Polynomial parse(std::string_view text);

 private:
  void normalize();
  std::vector<Term> terms_;
};

/// Monic greatest common divisor over Q[x1..xn]; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// a / b when b divides a exactly; throws std::logic_error otherwise.
Polynomial exact_quotient(const Polynomial& a, const Polynomial& b);

/// True when the polynomial is recognizably positive on all of R^n: a positive
/// constant term and every other term a positive multiple of even powers.
/// The negated pattern counts too (sign = -1).
bool is_pattern_nonvanishing(const Polynomial& p);

}  // namespace presym
