#include <gtest/gtest.h>

#include "support/printers.hpp"
#include "presym/error.hpp"
#include "presym/harness/random.hpp"
#include "presym/scalar/rational_function.hpp"

using namespace presym;

namespace {

Polynomial P(const char* s) { return Polynomial::parse(s); }
Scalar S(const char* s) { return Scalar::parse(s); }

std::vector<Rational> point(harness::Random& rng, int n) {
  std::vector<Rational> p;
  for (int i = 0; i < n; ++i) p.push_back(rng.rational(7));
  return p;
}

}  // namespace

TEST(Polynomial, ParseAndPrintRoundTrip) {
  Polynomial p = P("3*x1^2*x2 - 1/2*x3 + 7");
  EXPECT_EQ(Polynomial::parse(p.to_string()), p);
  EXPECT_EQ(P("x2*x1"), P("x1 * x2"));
  EXPECT_EQ(P("x1 - x1"), Polynomial());
  EXPECT_THROW(P("x1 +* 2"), Error);
}

TEST(Polynomial, GradedLexOrder) {
  Polynomial p = P("x2 + x1^2 + x1*x2 + 1");
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(p.leading_term().first, Monomial::variable(0, 2));
  EXPECT_EQ(p.total_degree(), 2);
  EXPECT_EQ(p.constant_term(), 1);
}

TEST(Polynomial, RingOperationsCommuteWithEvaluation) {
  harness::Random rng(5);
  for (int t = 0; t < 50; ++t) {
    Polynomial a = rng.polynomial(3, 3, 4), b = rng.polynomial(3, 3, 4);
    auto x = point(rng, 3);
    EXPECT_EQ((a + b).evaluate(x), a.evaluate(x) + b.evaluate(x));
    EXPECT_EQ((a * b).evaluate(x), a.evaluate(x) * b.evaluate(x));
    EXPECT_EQ((a - b).evaluate(x), a.evaluate(x) - b.evaluate(x));
  }
}

TEST(Polynomial, DerivativeMatchesDifferenceQuotientOfMonomials) {
  // d/dx1 of x1^3 x2 is 3 x1^2 x2
  EXPECT_EQ(P("x1^3*x2").derivative(0), P("3*x1^2*x2"));
  EXPECT_EQ(P("x1^3*x2").derivative(2), Polynomial());
}

TEST(Polynomial, GcdRecoversCommonFactor) {
  harness::Random rng(11);
  for (int t = 0; t < 30; ++t) {
    Polynomial r = rng.polynomial(3, 2, 3);
    if (r.is_constant()) continue;
    Polynomial a = rng.polynomial(3, 2, 3) * r, b = rng.polynomial(3, 2, 3) * r;
    if (a.is_zero() || b.is_zero()) continue;
    Polynomial g = gcd(a, b);
    EXPECT_EQ(g.leading_coefficient(), 1);
    EXPECT_NO_THROW(exact_quotient(g, r));
    EXPECT_NO_THROW(exact_quotient(a, g));
    EXPECT_NO_THROW(exact_quotient(b, g));
    Polynomial ca = exact_quotient(a, g), cb = exact_quotient(b, g);
    EXPECT_TRUE(gcd(ca, cb).is_one());
  }
}

TEST(Polynomial, GcdWithDenominatorInFewerVariables) {
  DegreeCapScope cap(32);
  Polynomial den = P("x4^2 + 1");
  Polynomial num = P("x1*x4^3 + x2*x3") * den * den + P("x1");
  EXPECT_TRUE(gcd(num, den).is_one());
  EXPECT_EQ(gcd(num * den, den * den), den);
}

TEST(Polynomial, DegreeCapIsEnforced) {
  Polynomial x = P("x1^5");
  EXPECT_THROW(x * x, Error);
  DegreeCapScope cap(16);
  EXPECT_EQ((x * x).total_degree(), 10);
}

TEST(Polynomial, PatternNonvanishing) {
  EXPECT_TRUE(is_pattern_nonvanishing(P("1 + x1^2")));
  EXPECT_TRUE(is_pattern_nonvanishing(P("2 + x1^2*x2^4 + 3*x3^2")));
  EXPECT_FALSE(is_pattern_nonvanishing(P("1 - x1^2")));
  EXPECT_FALSE(is_pattern_nonvanishing(P("x1^2")));
  EXPECT_FALSE(is_pattern_nonvanishing(P("1 + x1")));
}

TEST(RationalFunction, CanonicalForm) {
  Scalar f = S("(2*x1 + 2)/(2*x1^2 - 2)");
  EXPECT_EQ(f, S("1/(x1 - 1)"));
  EXPECT_EQ(f.den().leading_coefficient(), 1);
  EXPECT_EQ(Scalar::parse(f.to_string()), f);
  EXPECT_EQ(S("(x1)/(-x2)"), S("(-x1)/(x2)"));
}

TEST(RationalFunction, FieldAxiomsAtPoints) {
  harness::Random rng(17);
  for (int t = 0; t < 40; ++t) {
    Scalar a(rng.polynomial(2, 2, 3), P("1 + x1^2"));
    Scalar b(rng.polynomial(2, 2, 3), P("2 + x2^2"));
    auto x = point(rng, 2);
    EXPECT_EQ((a + b).evaluate(x), a.evaluate(x) + b.evaluate(x));
    EXPECT_EQ((a * b).evaluate(x), a.evaluate(x) * b.evaluate(x));
    if (!b.is_zero() && b.evaluate(x) != 0) {
      EXPECT_EQ((a / b).evaluate(x), a.evaluate(x) / b.evaluate(x));
    }
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(RationalFunction, QuotientRule) {
  // independent differentiation of numerator and denominator
  Scalar f = S("(x1)/(1 + x1^2)");
  Polynomial n = P("x1"), d = P("1 + x1^2");
  Scalar expected(n.derivative(0) * d - n * d.derivative(0), d * d);
  EXPECT_EQ(f.derivative(0), expected);
  EXPECT_EQ(S("1/(1 + x1^2)").derivative(0), S("(-2*x1)/(x1^4 + 2*x1^2 + 1)"));
}

TEST(RationalFunction, Errors) {
  EXPECT_THROW(Scalar(P("x1"), Polynomial()), Error);
  EXPECT_THROW(S("1") / Scalar(), Error);
  std::vector<Rational> at_pole{Rational(1)};
  try {
    S("1/(1 - x1)").evaluate(at_pole);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PoleAtPoint);
  }
}
