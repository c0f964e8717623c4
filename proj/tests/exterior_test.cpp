#include <gtest/gtest.h>

#include "support/printers.hpp"
#include "presym/exterior/calculus.hpp"
#include "presym/exterior/serialization.hpp"
#include "presym/harness/random.hpp"
#include "support/oracles.hpp"

using namespace presym;

namespace {

Scalar S(const char* s) { return Scalar::parse(s); }
const Chart R2(2), R3(3), R4(4);

DifferentialForm dx(Chart c, std::initializer_list<int> idx, Scalar f = Scalar(1)) {
  return DifferentialForm::basis(c, idx, f);
}
MultivectorField dd(Chart c, std::initializer_list<int> idx, Scalar f = Scalar(1)) {
  return MultivectorField::basis(c, idx, f);
}

int degree_of(const DifferentialForm& f) { return f.homogeneous_degree().value_or(0); }

}  // namespace

TEST(Wedge, BasisCases) {
  EXPECT_EQ(wedge(dx(R3, {0}), dx(R3, {1})), dx(R3, {0, 1}));
  EXPECT_TRUE(wedge(dx(R3, {0}), dx(R3, {0})).is_zero());
  EXPECT_EQ(wedge(dx(R3, {0}, S("x1")), dx(R3, {1, 2})), dx(R3, {0, 1, 2}, S("x1")));
  EXPECT_EQ(wedge(dx(R3, {1}), dx(R3, {0})), -dx(R3, {0, 1}));
  EXPECT_EQ(dx(R3, {2, 0}), -dx(R3, {0, 2}));
}

TEST(Wedge, MatchesShuffleFormulaOnVectors) {
  // (a ^ b)(v1, v2, v3) = a(v1) b(v2, v3) - a(v2) b(v1, v3) + a(v3) b(v1, v2)
  harness::Random rng(3);
  for (int t = 0; t < 25; ++t) {
    DifferentialForm a = harness::random_form(rng, R4, 1, {0, 4, 1, 20});
    DifferentialForm b = harness::random_form(rng, R4, 2, {0, 4, 1, 20});
    std::vector<std::vector<Rational>> v;
    for (int i = 0; i < 3; ++i) v.push_back(harness::random_point(rng, 4));
    auto ev = [](const DifferentialForm& f, std::vector<std::vector<Rational>> vs) {
      return oracle::evaluate_on_vectors(f, vs);
    };
    Rational expected = ev(a, {v[0]}) * ev(b, {v[1], v[2]}) - ev(a, {v[1]}) * ev(b, {v[0], v[2]}) +
                        ev(a, {v[2]}) * ev(b, {v[0], v[1]});
    EXPECT_EQ(ev(wedge(a, b), v), expected);
  }
}

TEST(Wedge, ChartMismatchThrows) { EXPECT_THROW(wedge(dx(R2, {0}), dx(R3, {1})), Error); }

TEST(DeRham, Examples) {
  EXPECT_EQ(de_rham(dx(R2, {1}, S("x1"))), dx(R2, {0, 1}));
  EXPECT_TRUE(de_rham(dx(R2, {0, 1})).is_zero());
  EXPECT_EQ(de_rham(dx(R2, {1}, S("1/(1 + x1^2)"))), dx(R2, {0, 1}, S("(-2*x1)/(x1^4 + 2*x1^2 + 1)")));
}

TEST(DeRham, OneFormAgainstCoordinateFormula) {
  // d(sum a_j dx_j) = sum_{i<j} (d_i a_j - d_j a_i) dx_i ^ dx_j
  harness::Random rng(8);
  for (int t = 0; t < 20; ++t) {
    DifferentialForm a = harness::random_form(rng, R4, 1, {3, 4, 2, 30});
    std::vector<Scalar> c = components(a);
    DifferentialForm expected(R4);
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) expected += dx(R4, {i, j}, c[j].derivative(i) - c[i].derivative(j));
    }
    EXPECT_EQ(de_rham(a), expected);
  }
}

TEST(DeRham, SquareAndLeibnizProperties) {
  harness::Random rng(13);
  for (int t = 0; t < 30; ++t) {
    int p = static_cast<int>(rng.integer(0, 3)), q = static_cast<int>(rng.integer(0, 4 - p));
    DifferentialForm a = harness::random_rational_form(rng, R4, p, {3, 3, 2, 50});
    DifferentialForm b = harness::random_form(rng, R4, q, {3, 3, 2, 50});
    DegreeCapScope cap(64);
    EXPECT_TRUE(de_rham(de_rham(a)).is_zero());
    DifferentialForm rhs = wedge(de_rham(a), b) + (p % 2 ? -wedge(a, de_rham(b)) : wedge(a, de_rham(b)));
    EXPECT_EQ(de_rham(wedge(a, b)), rhs);
  }
}

TEST(Contract, Examples) {
  EXPECT_EQ(contract(dd(R2, {0}), dx(R2, {0, 1})), dx(R2, {1}));
  EXPECT_EQ(contract(dd(R2, {0, 1}, S("x1")), dx(R2, {0, 1})), DifferentialForm::function(R2, S("-x1")));
  EXPECT_TRUE(contract(dd(R3, {0, 1}), dx(R3, {2})).is_zero());
}

TEST(Contract, RightmostFactorFirst) {
  // i(X ^ Y) w = i(X) i(Y) w, i.e. w(Y, X, ...) on vectors
  harness::Random rng(21);
  for (int t = 0; t < 20; ++t) {
    MultivectorField x = harness::random_multivector(rng, R4, 1, {0, 4, 1, 9});
    MultivectorField y = harness::random_multivector(rng, R4, 1, {0, 4, 1, 9});
    DifferentialForm w = harness::random_form(rng, R4, 3, {0, 4, 1, 9});
    DifferentialForm lhs = contract(wedge(x, y), w);
    EXPECT_EQ(lhs, contract(x, contract(y, w)));
    auto vec = [](const MultivectorField& v) {
      std::vector<Rational> out;
      for (const auto& c : components(v)) out.push_back(c.constant_value());
      return out;
    };
    std::vector<Rational> u = harness::random_point(rng, 4);
    EXPECT_EQ(oracle::evaluate_on_vectors(lhs, {u}), oracle::evaluate_on_vectors(w, {vec(y), vec(x), u}));
  }
}

TEST(LieDerivative, Examples) {
  EXPECT_TRUE(lie_derivative(dd(R3, {0, 2}, Scalar(3)), dx(R3, {0, 1}, Scalar(5))).is_zero());
  EXPECT_EQ(lie_derivative(dd(R2, {0, 1}, S("x1")), dx(R2, {0, 1})), dx(R2, {0}));
  EXPECT_EQ(lie_derivative(dd(R2, {0}), dx(R2, {1}, S("x1"))), dx(R2, {1}));
  // on vector fields the two conventions differ by the sign of d i(X)
  MultivectorField x = dd(R2, {0}, S("x2"));
  DifferentialForm a = dx(R2, {0}, S("x1"));
  EXPECT_EQ(lie_derivative(x, a), -dx(R2, {0}, S("x2")) - dx(R2, {1}, S("x1")));
  EXPECT_EQ(classical_lie_derivative(x, a), dx(R2, {0}, S("x2")) + dx(R2, {1}, S("x1")));
}

TEST(Schouten, VectorFieldsGiveLieBracket) {
  MultivectorField x = dd(R2, {0}), y = dd(R2, {1}, S("x1^2"));
  EXPECT_EQ(schouten(x, y), dd(R2, {1}, S("2*x1")));
  EXPECT_EQ(schouten(y, x), dd(R2, {1}, S("-2*x1")));
}

TEST(Schouten, Examples) {
  EXPECT_TRUE(schouten(dd(R3, {0, 1}, Scalar(2)), dd(R3, {0, 1}, Scalar(2))).is_zero());
  MultivectorField decomposable = wedge(dd(R3, {0}), dd(R3, {1}) + dd(R3, {2}, S("x2")));
  EXPECT_TRUE(schouten(decomposable, decomposable).is_zero());
  MultivectorField z = dd(R4, {0, 1}) + dd(R4, {2, 3}, S("x1"));
  MultivectorField zz = schouten(z, z);
  ASSERT_EQ(zz.terms().size(), 1u);
  EXPECT_EQ(zz.terms().begin()->first, blade_from_indices({1, 2, 3}));
  EXPECT_TRUE(zz.terms().begin()->second.is_constant());
}

TEST(Schouten, BivectorSelfBracketIsTwiceJacobiator) {
  harness::Random rng(34);
  for (int t = 0; t < 20; ++t) {
    MultivectorField z = harness::random_multivector(rng, R4, 2, {2, 4, 2, 30});
    MultivectorField zz = schouten(z, z);
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        for (int k = j + 1; k < 4; ++k) {
          EXPECT_EQ(zz.coefficient(blade_from_indices({i, j, k})), Scalar(2) * oracle::jacobi_coefficient(z, i, j, k));
        }
      }
    }
  }
}

TEST(Schouten, GradedSymmetryAndDerivedBracket) {
  harness::Random rng(55);
  for (int t = 0; t < 20; ++t) {
    int p = static_cast<int>(rng.integer(1, 2)), q = static_cast<int>(rng.integer(1, 2));
    MultivectorField a = harness::random_multivector(rng, R4, p, {2, 3, 2, 20});
    MultivectorField b = harness::random_multivector(rng, R4, q, {2, 3, 2, 20});
    MultivectorField sym = schouten(a, b) + ((p - 1) * (q - 1) % 2 ? -schouten(b, a) : schouten(b, a));
    EXPECT_TRUE(sym.is_zero());
    DifferentialForm w = harness::random_form(rng, R4, 3, {2, 3, 2, 20});
    // [i_P, d] = i_P d - (-1)^p d i_P, then the graded commutator with i_Q
    auto ip_d = [&](const DifferentialForm& f) {
      DifferentialForm r = contract(a, de_rham(f));
      return p % 2 ? r + de_rham(contract(a, f)) : r - de_rham(contract(a, f));
    };
    DifferentialForm outer = ip_d(contract(b, w));
    DifferentialForm inner = contract(b, ip_d(w));
    DifferentialForm expected = ((1 - p) * q) % 2 ? outer + inner : outer - inner;
    DegreeCapScope cap(64);
    EXPECT_EQ(contract(schouten(a, b), w), expected);
  }
}

TEST(MultiSharp, TwoFormsOnBivector) {
  // (dx1# ^ dx2#)(d1 ^ d2) = i(d1)dx1 i(d2)dx2 - i(d2)dx1 i(d1)dx2 = 1
  std::vector<DifferentialForm> f{dx(R2, {0}), dx(R2, {1})};
  EXPECT_EQ(multi_sharp(f, dd(R2, {0, 1})), DifferentialForm::function(R2, Scalar(1)));
  std::vector<DifferentialForm> g{dx(R2, {1}), dx(R2, {0})};
  EXPECT_EQ(multi_sharp(g, dd(R2, {0, 1})), DifferentialForm::function(R2, Scalar(-1)));
  EXPECT_TRUE(multi_sharp(f, MultivectorField(R2)).is_zero());
  std::vector<DifferentialForm> h{DifferentialForm::function(R2, Scalar(1)), dx(R2, {1})};
  EXPECT_TRUE(multi_sharp(h, dd(R2, {0, 1})).is_zero());
  EXPECT_THROW(multi_sharp(f, dd(R2, {0})), Error);
}

TEST(MultiSharp, OneFormsGiveDeterminant) {
  harness::Random rng(89);
  for (int t = 0; t < 15; ++t) {
    std::vector<DifferentialForm> a;
    std::vector<MultivectorField> v;
    for (int i = 0; i < 3; ++i) {
      a.push_back(harness::random_form(rng, R4, 1, {0, 4, 1, 9}));
      v.push_back(harness::random_multivector(rng, R4, 1, {0, 4, 1, 9}));
    }
    Matrix<Rational> m(3, 3);
    for (std::size_t r = 0; r < 3; ++r) {
      for (std::size_t c = 0; c < 3; ++c) m(r, c) = contract(v[c], a[r]).coefficient(0).constant_value();
    }
    DifferentialForm got = multi_sharp(a, wedge(wedge(v[0], v[1]), v[2]));
    EXPECT_EQ(got.coefficient(0).constant_value(), oracle::leibniz_det(m));
  }
}

TEST(Evaluate, ExamplesAndHomomorphism) {
  std::vector<Rational> p{Rational(3), Rational(0)};
  EXPECT_EQ(evaluate(dx(R2, {1}, S("x1")), std::span<const Rational>(p)), dx(R2, {1}, Scalar(3)));
  std::vector<Rational> pole{Rational(1), Rational(0)};
  EXPECT_THROW(evaluate(dx(R2, {1}, S("1/(1 - x1)")), std::span<const Rational>(pole)), Error);
  harness::Random rng(144);
  for (int t = 0; t < 20; ++t) {
    DifferentialForm a = harness::random_form(rng, R3, 1, {2, 3, 2, 20});
    DifferentialForm b = harness::random_rational_form(rng, R3, 1, {2, 3, 2, 20});
    std::vector<Rational> x = harness::random_point(rng, 3);
    EXPECT_EQ(evaluate(wedge(a, b), std::span<const Rational>(x)),
              wedge(evaluate(a, std::span<const Rational>(x)), evaluate(b, std::span<const Rational>(x))));
  }
}

TEST(Serialization, RoundTripAndErrors) {
  harness::Random rng(233);
  for (int t = 0; t < 10; ++t) {
    DifferentialForm a = harness::random_rational_form(rng, R4, static_cast<int>(rng.integer(0, 4)));
    EXPECT_EQ(form_from_json(to_json(a)), a);
    EXPECT_EQ(to_json(form_from_json(to_json(a))).dump(), to_json(a).dump());
  }
  EXPECT_THROW(form_from_json(nlohmann::json::parse(R"({"chart":2,"terms":[{"indices":[2,1],"num":"1"}]})")), Error);
  EXPECT_THROW(form_from_json(nlohmann::json::parse(R"({"chart":2,"terms":[{"indices":[3],"num":"1"}]})")), Error);
  EXPECT_THROW(form_from_json(nlohmann::json::parse(R"({"chart":2,"terms":[{"indices":[1],"num":"x3"}]})")), Error);
  EXPECT_THROW(form_from_json(nlohmann::json::parse(R"({"terms":[]})")), Error);
  EXPECT_EQ(degree_of(form_from_json(nlohmann::json::parse(R"({"chart":2,"terms":[{"indices":[1,2],"num":"x1"}]})"))), 2);
}
