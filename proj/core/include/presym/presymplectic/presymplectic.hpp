#pragma once

#include <optional>
#include <span>
#include <vector>

#include "presym/dirac/linear.hpp"
#include "presym/koszul/linfty.hpp"
#include "presym/presymplectic/courant.hpp"

namespace presym {

/// Vector fields framing a distribution on a chart.
class DistributionFrame {
 public:
  explicit DistributionFrame(Chart chart, std::vector<MultivectorField> sections = {});

  const Chart& chart() const { return chart_; }
  const std::vector<MultivectorField>& sections() const { return sections_; }
  std::size_t rank() const { return sections_.size(); }
  /// n x rank matrix of components.
  Matrix<Scalar> matrix() const;
  /// Pointwise span. Throws PoleAtPoint.
  Subspace<Rational> at(std::span<const Rational> point) const;

 private:
  Chart chart_;
  std::vector<MultivectorField> sections_;
};

enum class CertificationRule {
  Strict,   // a witnessing Pfaffian must be a nonzero constant
  Relaxed,  // ... or recognizably nonvanishing (positive constant plus even powers)
};

struct RankCertificate {
  int rank = 0;
  std::vector<int> witness;  // 0-based index set S of the principal Pfaffian
  Scalar pfaffian;
  CertificationRule rule = CertificationRule::Strict;
};

/// True when s has no real zero by the rule (constant, or pattern-nonvanishing
/// numerator and denominator under the relaxed rule).
bool certified_nonvanishing(const Scalar& s, CertificationRule rule);

/// All (k+2)-Pfaffians vanish identically and a principal k-Pfaffian is
/// certified nonvanishing. Throws CannotCertify / WrongDegree.
RankCertificate certify_constant_rank(const DifferentialForm& eta, CertificationRule rule = CertificationRule::Strict);

/// Frame (v_j)_{j not in S} of ker eta#, v_j = e_j - eta_SS^-1 eta_Sj.
/// Throws CannotCertify when a coefficient has an uncertified denominator.
DistributionFrame kernel_distribution(const DifferentialForm& eta, const RankCertificate& cert);

/// 1-forms spanning the annihilator of the frame.
std::vector<DifferentialForm> annihilator_frame(const DistributionFrame& k);

/// All full contractions of each homogeneous component against distinct frame
/// sections vanish (and the 0-form component is zero).
bool is_horizontal(const DifferentialForm& alpha, const DistributionFrame& k);

/// Brackets of frame sections lie in the span over rational functions.
bool is_involutive(const DistributionFrame& k);

/// Dot-product orthogonal complement of K at the point, as a constant frame.
DistributionFrame default_complement(const DistributionFrame& k, std::span<const Rational> point);

/// Everything determined by (eta, G).
struct PreSymplecticData {
  DifferentialForm eta;
  RankCertificate certificate;
  DistributionFrame kernel;
  DistributionFrame complement;
  MultivectorField z;
  std::vector<Rational> ref_point;

  int rank() const { return certificate.rank; }
  Chart chart() const { return eta.chart(); }
};

/// Throws NotClosed, CannotCertify, NotComplementary, DegenerateRestriction.
/// The complement defaults to default_complement at the reference point
/// (the origin unless given).
PreSymplecticData make_presymplectic(const DifferentialForm& eta, std::optional<DistributionFrame> g = std::nullopt,
                                     std::optional<std::vector<Rational>> ref_point = std::nullopt,
                                     CertificationRule rule = CertificationRule::Strict);

// ---- Dirac structures ------------------------------------------------------

/// (d_i, i(d_i) eta).
std::vector<GeneralizedSection> graph_frame(const DifferentialForm& eta);
/// (d_i + Z#(i(d_i) beta), i(d_i) beta).
std::vector<GeneralizedSection> phi_Z_frame(const DifferentialForm& beta, const MultivectorField& z);

/// Lagrangian and closed under the Dorfman bracket. Throws NotASubbundle when
/// the frame does not have rank n at the reference point (origin by default).
bool is_dirac(const std::vector<GeneralizedSection>& frame, std::optional<std::vector<Rational>> ref_point = std::nullopt);

// ---- horizontality and the Koszul brackets --------------------------------

struct PreservationFlags {
  bool subalgebroid = false;  // K involutive
  bool pairing = false;       // <[[xi1, xi2]], K + K°> = 0 for xi in K°, inside graph(Z)
};

PreservationFlags horizontal_preservation_conditions(const DistributionFrame& k, const KoszulContext& ctx);

struct PreservationWitness {
  int arity = 0;
  std::vector<DifferentialForm> inputs;
  DifferentialForm output{Chart(1)};
};

struct PreservationReport {
  std::size_t checked = 0;
  std::optional<PreservationWitness> witness;
  bool passed() const { return !witness.has_value(); }
};

/// Applies lambda_1 to every input, lambda_2 to every pair and lambda_3 to
/// every triple (with repetition) and checks horizontality of the outputs.
/// Throws NotHorizontal if an input is not horizontal.
PreservationReport check_horizontal_preservation(const DistributionFrame& k, const KoszulContext& ctx,
                                                 std::span<const DifferentialForm> inputs);

PreservationReport koszul_preserves_horizontal(const PreSymplecticData& data, std::span<const DifferentialForm> inputs);

/// Searches theta * m (theta in the annihilator frame, m a monomial of degree
/// <= max_degree) for inputs whose brackets leave the horizontal forms.
std::optional<PreservationWitness> find_preservation_witness(const DistributionFrame& k, const KoszulContext& ctx,
                                                             int max_degree = 2);

// ---- the main pipeline -----------------------------------------------------

struct DeformReport {
  bool maurer_cartan = false;
  bool closed = false;
  bool rank_preserved = false;
  bool kernel_transverse = false;
  bool symbolic = false;            // closedness decided symbolically
  bool lambda3_contributes = false; // (1/6) lambda_3(beta, beta, beta) != 0
  std::size_t grid_points = 0;
  DifferentialForm residual{Chart(1)};
  DifferentialForm exp_eta{Chart(1)};

  bool presymplectic_same_rank() const { return closed && rank_preserved; }
  bool biconditional_holds() const { return maurer_cartan == presymplectic_same_rank(); }
};

/// exp_eta(beta) = eta + F(beta) and the Maurer-Cartan residual of beta.
/// Throws NotHorizontal, NotInIZ.
DeformReport deform(const PreSymplecticData& data, const DifferentialForm& beta,
                    const std::vector<Rational>& grid_values = default_grid_values());

/// F with Z replaced by -Z: the inverse of F, so F(eta' - eta, -Z) is the beta
/// with exp_eta(beta) = eta'. Throws NotInIZ.
DifferentialForm beta_for_target(const PreSymplecticData& data, const DifferentialForm& target);

}  // namespace presym
