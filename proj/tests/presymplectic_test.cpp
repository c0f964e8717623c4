#include <gtest/gtest.h>

#include "support/printers.hpp"
#include "presym/harness/random.hpp"
#include "presym/presymplectic/presymplectic.hpp"

using namespace presym;

namespace {

Scalar S(const char* s) { return Scalar::parse(s); }
const Chart R2(2), R3(3), R4(4), R5(5);

DifferentialForm dx(Chart c, std::initializer_list<int> idx, Scalar f = Scalar(1)) {
  return DifferentialForm::basis(c, idx, f);
}
MultivectorField dd(Chart c, std::initializer_list<int> idx, Scalar f = Scalar(1)) {
  return MultivectorField::basis(c, idx, f);
}

DistributionFrame frame(Chart c, std::vector<MultivectorField> s) { return DistributionFrame(c, std::move(s)); }

}  // namespace

TEST(Certification, Examples) {
  RankCertificate c = certify_constant_rank(dx(R4, {0, 1}));
  EXPECT_EQ(c.rank, 2);
  EXPECT_EQ(c.witness, (std::vector<int>{0, 1}));
  EXPECT_EQ(c.pfaffian, Scalar(1));

  RankCertificate four = certify_constant_rank(dx(R5, {0, 1}) + dx(R5, {2, 3}));
  EXPECT_EQ(four.rank, 4);
  EXPECT_EQ(certify_constant_rank(DifferentialForm(R3)).rank, 0);

  DifferentialForm bump = dx(R4, {0, 1}, S("1 + x1^2"));
  try {
    certify_constant_rank(bump);
    ADD_FAILURE() << "strict rule accepted a nonconstant Pfaffian";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CannotCertify);
  }
  EXPECT_EQ(certify_constant_rank(bump, CertificationRule::Relaxed).rank, 2);

  DifferentialForm vanishing = dx(R4, {0, 1}, S("x1"));
  EXPECT_THROW(certify_constant_rank(vanishing, CertificationRule::Relaxed), Error);
  EXPECT_THROW(certify_constant_rank(dx(R4, {0})), Error);
}

TEST(Certification, NonvanishingRule) {
  EXPECT_TRUE(certified_nonvanishing(S("-3"), CertificationRule::Strict));
  EXPECT_FALSE(certified_nonvanishing(S("1 + x1^2"), CertificationRule::Strict));
  EXPECT_TRUE(certified_nonvanishing(S("1 + x1^2"), CertificationRule::Relaxed));
  EXPECT_TRUE(certified_nonvanishing(S("2/(1 + x2^4)"), CertificationRule::Relaxed));
  EXPECT_FALSE(certified_nonvanishing(S("x1^2"), CertificationRule::Relaxed));
  EXPECT_FALSE(certified_nonvanishing(S("0"), CertificationRule::Relaxed));
}

TEST(KernelDistribution, Examples) {
  DifferentialForm eta = dx(R4, {0, 1});
  DistributionFrame k = kernel_distribution(eta, certify_constant_rank(eta));
  ASSERT_EQ(k.rank(), 2u);
  EXPECT_EQ(k.sections()[0], dd(R4, {2}));
  EXPECT_EQ(k.sections()[1], dd(R4, {3}));

  DifferentialForm sum = dx(R5, {0, 1}) + dx(R5, {2, 3});
  DistributionFrame k5 = kernel_distribution(sum, certify_constant_rank(sum));
  ASSERT_EQ(k5.rank(), 1u);
  EXPECT_EQ(k5.sections()[0], dd(R5, {4}));

  // pullback of dx1 ^ dx2 by x1 -> x1 + x3^2
  DifferentialForm sheared = wedge(dx(R3, {0}) + dx(R3, {2}, S("2*x3")), dx(R3, {1}));
  DistributionFrame ks = kernel_distribution(sheared, certify_constant_rank(sheared));
  ASSERT_EQ(ks.rank(), 1u);
  EXPECT_EQ(ks.sections()[0], dd(R3, {2}) + dd(R3, {0}, S("-2*x3")));
  EXPECT_TRUE(contract(ks.sections()[0], sheared).is_zero());
}

TEST(KernelDistribution, ShearPullbacks) {
  harness::Random rng(11);
  for (int t = 0; t < 10; ++t) {
    auto phi = harness::random_shear(rng, 5, 2);
    DifferentialForm eta = harness::pullback_normal_form(phi, 2 + 2 * static_cast<int>(t % 2));
    EXPECT_TRUE(de_rham(eta).is_zero());
    RankCertificate c = certify_constant_rank(eta);
    EXPECT_EQ(c.rank, 2 + 2 * (t % 2));
    DistributionFrame k = kernel_distribution(eta, c);
    EXPECT_EQ(static_cast<int>(k.rank()), 5 - c.rank);
    for (const auto& v : k.sections()) EXPECT_TRUE(contract(v, eta).is_zero());
    // kernels of closed forms are involutive
    EXPECT_TRUE(is_involutive(k));
    for (const auto& theta : annihilator_frame(k)) EXPECT_TRUE(is_horizontal(theta, k));
  }
}

TEST(Horizontal, Examples) {
  DistributionFrame k = frame(R4, {dd(R4, {2}), dd(R4, {3})});
  EXPECT_TRUE(is_horizontal(dx(R4, {0}), k));
  EXPECT_TRUE(is_horizontal(dx(R4, {1}, S("x3")), k));
  EXPECT_FALSE(is_horizontal(dx(R4, {2}), k));
  EXPECT_TRUE(is_horizontal(dx(R4, {0, 1}), k));
  EXPECT_TRUE(is_horizontal(dx(R4, {0, 2}), k));
  EXPECT_FALSE(is_horizontal(dx(R4, {2, 3}), k));
  EXPECT_FALSE(is_horizontal(DifferentialForm::function(R4, Scalar(1)), k));
  EXPECT_TRUE(is_horizontal(DifferentialForm(R4), k));
  EXPECT_TRUE(is_involutive(k));
  EXPECT_FALSE(is_involutive(frame(R3, {dd(R3, {1}) + dd(R3, {2}, S("x1")), dd(R3, {0})})));
}

TEST(Horizontal, RandomHorizontalForms) {
  harness::Random rng(12);
  DistributionFrame k = frame(R4, {dd(R4, {2}) + dd(R4, {0}, S("x4")), dd(R4, {3})});
  for (int t = 0; t < 10; ++t) {
    int deg = static_cast<int>(rng.integer(1, 2));
    DifferentialForm a = harness::random_horizontal_form(rng, k, deg);
    EXPECT_FALSE(a.is_zero());
    EXPECT_TRUE(is_horizontal(a, k));
  }
}

TEST(Courant, DorfmanAndPairing) {
  auto d1 = GeneralizedSection::vector(dd(R2, {0}));
  auto a = GeneralizedSection::form(dx(R2, {1}, S("x1")));
  EXPECT_EQ(dorfman(d1, a), GeneralizedSection::form(dx(R2, {1})));
  EXPECT_EQ(dorfman(a, d1), GeneralizedSection::form(-dx(R2, {1})));
  EXPECT_EQ(pairing(GeneralizedSection(dd(R2, {0}), dx(R2, {1})), GeneralizedSection::vector(dd(R2, {1}))), Scalar(1));
  EXPECT_EQ(evaluate_on(dx(R2, {0}, S("x2")), dd(R2, {0}, S("x1"))), S("x1*x2"));
  auto x = GeneralizedSection::vector(dd(R2, {1}, S("x1")));
  EXPECT_EQ(dorfman(d1, x), GeneralizedSection::vector(dd(R2, {1})));
  EXPECT_THROW(GeneralizedSection(dd(R2, {0, 1}), DifferentialForm(R2)), Error);
}

TEST(Courant, DorfmanAnomalyIsExact) {
  harness::Random rng(13);
  for (int t = 0; t < 10; ++t) {
    GeneralizedSection s1(harness::random_multivector(rng, R3, 1), harness::random_form(rng, R3, 1));
    GeneralizedSection s2(harness::random_multivector(rng, R3, 1), harness::random_form(rng, R3, 1));
    GeneralizedSection sum = dorfman(s1, s2);
    GeneralizedSection swapped = dorfman(s2, s1);
    EXPECT_EQ(sum.x, -swapped.x);
    EXPECT_EQ(sum.alpha + swapped.alpha, de_rham(DifferentialForm::function(R3, pairing(s1, s2))));
  }
}

TEST(Dirac, Examples) {
  EXPECT_TRUE(is_dirac(graph_frame(dx(R2, {0, 1}, S("x1")))));
  EXPECT_FALSE(is_dirac(graph_frame(dx(R3, {0, 2}, S("x2")))));
  EXPECT_TRUE(is_dirac(graph_frame(de_rham(dx(R3, {0}, S("x2*x3"))))));
  EXPECT_THROW(is_dirac({GeneralizedSection::vector(dd(R2, {0}))}), Error);
  // Z = d1 ^ d2 is Poisson, so graph(Z) composed with a closed MC beta stays Dirac
  EXPECT_TRUE(is_dirac(phi_Z_frame(dx(R3, {0, 2}), dd(R3, {0, 1}))));
}

TEST(Preservation, Flags) {
  KoszulContext ctx(dd(R4, {0, 1}));
  PreservationFlags good = horizontal_preservation_conditions(frame(R4, {dd(R4, {2}), dd(R4, {3})}), ctx);
  EXPECT_TRUE(good.subalgebroid);
  EXPECT_TRUE(good.pairing);
  DistributionFrame twisted = frame(R4, {dd(R4, {2}), dd(R4, {3}) + dd(R4, {0}, S("x3"))});
  EXPECT_FALSE(horizontal_preservation_conditions(twisted, ctx).subalgebroid);
  auto w = find_preservation_witness(twisted, ctx);
  ASSERT_TRUE(w.has_value());
  EXPECT_FALSE(is_horizontal(w->output, twisted));
  std::vector<DifferentialForm> inputs = w->inputs;
  EXPECT_FALSE(check_horizontal_preservation(twisted, ctx, inputs).passed());
  std::vector<DifferentialForm> bad{dx(R4, {2})};
  EXPECT_THROW(check_horizontal_preservation(twisted, ctx, bad), Error);
}

TEST(Preservation, KernelOfPresymplecticForm) {
  harness::Random rng(14);
  PreSymplecticData data = make_presymplectic(dx(R5, {0, 1}) + dx(R5, {2, 3}));
  std::vector<DifferentialForm> inputs;
  for (int i = 0; i < 3; ++i) inputs.push_back(harness::random_horizontal_form(rng, data.kernel, 1 + i % 2, {1, 2, 1, 10}));
  PreservationReport r = koszul_preserves_horizontal(data, inputs);
  EXPECT_TRUE(r.passed());
  EXPECT_GT(r.checked, 0u);
}

TEST(Presymplectic, DefaultComplementAndZ) {
  PreSymplecticData data = make_presymplectic(dx(R4, {0, 1}));
  EXPECT_EQ(data.rank(), 2);
  ASSERT_EQ(data.complement.rank(), 2u);
  EXPECT_EQ(data.complement.at(data.ref_point), Subspace<Rational>::span({{1, 0, 0, 0}, {0, 1, 0, 0}}, 4));
  // Z# = -(eta restricted to G)#^-1
  EXPECT_EQ(contract(sharp(data.z, dx(R4, {0})), dx(R4, {0, 1})), -dx(R4, {0}));
  EXPECT_THROW(make_presymplectic(dx(R3, {0, 1}, S("x3"))), Error);
  EXPECT_THROW(make_presymplectic(dx(R4, {0, 1}), frame(R4, {dd(R4, {2}), dd(R4, {3})})), Error);
}

TEST(Deform, Examples) {
  PreSymplecticData data = make_presymplectic(dx(R4, {0, 1}));
  DifferentialForm shear = dx(R4, {0, 2}, Scalar(-5));
  DeformReport r = deform(data, shear);
  EXPECT_TRUE(r.maurer_cartan);
  EXPECT_TRUE(r.closed);
  EXPECT_TRUE(r.rank_preserved);
  EXPECT_TRUE(r.biconditional_holds());
  EXPECT_FALSE(r.lambda3_contributes);

  DeformReport bad = deform(data, dx(R4, {0, 2}, S("x4")));
  EXPECT_FALSE(bad.maurer_cartan);
  EXPECT_FALSE(bad.presymplectic_same_rank());
  EXPECT_TRUE(bad.biconditional_holds());

  EXPECT_THROW(deform(data, dx(R4, {2, 3})), Error);
}

TEST(Deform, BetaForTargetInvertsExp) {
  harness::Random rng(15);
  PreSymplecticData data = make_presymplectic(dx(R4, {0, 1}));
  for (int t = 0; t < 5; ++t) {
    DifferentialForm target = data.eta + harness::random_horizontal_form(rng, data.kernel, 2, {0, 2, 1, 5});
    DifferentialForm beta(R4);
    try {
      beta = beta_for_target(data, target);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotInIZ);
      continue;
    }
    EXPECT_EQ(deform(data, beta).exp_eta, target);
  }
}
