#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "presym/dirac/linear.hpp"
#include "presym/exterior/calculus.hpp"
#include "presym/presymplectic/presymplectic.hpp"

namespace presym::harness {

/// splitmix64 finalizer of seed + golden * (index + 1); trials seeded this way
/// are independent of execution order.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index);

class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi);
  bool percent(int p) { return integer(0, 99) < p; }
  /// p/q with |p| <= bound, 1 <= q <= bound.
  Rational rational(long bound = 100);
  Rational nonzero_rational(long bound = 100);
  Polynomial polynomial(int n, int max_degree, int max_terms, long bound = 100);
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(v.size()) - 1))];
  }

 private:
  std::mt19937_64 engine_;
};

struct FormShape {
  int max_coef_degree = 2;
  int max_terms = 3;
  int coef_terms = 2;
  long bound = 100;
};

/// Random element of the given degree; may be zero only when no blade of that
/// degree exists.
DifferentialForm random_form(Random& rng, Chart chart, int degree, const FormShape& shape = {});
MultivectorField random_multivector(Random& rng, Chart chart, int degree, const FormShape& shape = {});
/// Coefficients with a denominator 1 + x_i^2 (no real poles) on some terms.
DifferentialForm random_rational_form(Random& rng, Chart chart, int degree, const FormShape& shape = {});
std::vector<Rational> random_point(Random& rng, int n, long bound = 10);

SkewBilinear<Rational> random_skew(Random& rng, std::size_t n, long bound = 100);
/// Sum of rank/2 random decomposable forms, resampled until the rank is exact.
SkewBilinear<Rational> random_rank_skew(Random& rng, std::size_t n, std::size_t rank, long bound = 100);
/// Random subspace of the given dimension complementary to `k`.
Subspace<Rational> random_complement(Random& rng, const Subspace<Rational>& k, long bound = 100);
/// Form with zero Lambda^2 K* block (horizontal) or a nonzero one.
SkewBilinear<Rational> random_adapted_skew(Random& rng, const Subspace<Rational>& k, const Subspace<Rational>& g,
                                           bool horizontal, long bound = 100);

/// Unimodular triangular shear x_i -> x_i + p_i(x_{i+1}, ..., x_n), deg p_i <= degree.
std::vector<Scalar> random_shear(Random& rng, int n, int degree, long bound = 5);
/// phi^* (dx1 ^ dx2 + ... + dx_{rank-1} ^ dx_rank).
DifferentialForm pullback_normal_form(const std::vector<Scalar>& phi, int rank);
DifferentialForm pullback_form(const std::vector<Scalar>& phi, const DifferentialForm& omega);

/// sum theta_a ^ gamma_a over the annihilator frame; nonzero, of the given degree >= 1.
DifferentialForm random_horizontal_form(Random& rng, const DistributionFrame& k, int degree, const FormShape& shape = {});

}  // namespace presym::harness
