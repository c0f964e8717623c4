#include "presym/harness/random.hpp"

#include <algorithm>

namespace presym::harness {

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::int64_t Random::integer(std::int64_t lo, std::int64_t hi) {
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(engine_() % span);
}

Rational Random::rational(long bound) {
  Rational q(integer(-bound, bound), integer(1, bound));
  q.canonicalize();
  return q;
}

Rational Random::nonzero_rational(long bound) {
  Rational q;
  do {
    q = rational(bound);
  } while (q == 0);
  return q;
}

Polynomial Random::polynomial(int n, int max_degree, int max_terms, long bound) {
  Polynomial p;
  const int terms = static_cast<int>(integer(1, std::max(1, max_terms)));
  for (int t = 0; t < terms; ++t) {
    const int deg = static_cast<int>(integer(0, max_degree));
    Monomial m;
    for (int e = 0; e < deg; ++e) m = m * Monomial::variable(static_cast<int>(integer(0, n - 1)));
    p += Polynomial::monomial(m, nonzero_rational(bound));
  }
  return p;
}

namespace {

std::vector<Blade> blades_of_degree(int n, int degree) {
  std::vector<Blade> out;
  for (Blade b = 0; b < (Blade(1) << n); ++b) {
    if (blade_degree(b) == degree) out.push_back(b);
  }
  return out;
}

template <class Tag>
GradedElement<Tag> random_element(Random& rng, Chart chart, int degree, const FormShape& shape) {
  GradedElement<Tag> e(chart);
  std::vector<Blade> blades = blades_of_degree(chart.dimension(), degree);
  if (blades.empty()) return e;
  while (e.is_zero()) {
    const int terms = static_cast<int>(rng.integer(1, shape.max_terms));
    for (int t = 0; t < terms; ++t) {
      e.add_term(rng.pick(blades), Scalar(rng.polynomial(chart.dimension(), shape.max_coef_degree, shape.coef_terms, shape.bound)));
    }
  }
  return e;
}

}  // namespace

DifferentialForm random_form(Random& rng, Chart chart, int degree, const FormShape& shape) {
  return random_element<FormTag>(rng, chart, degree, shape);
}

MultivectorField random_multivector(Random& rng, Chart chart, int degree, const FormShape& shape) {
  return random_element<VectorTag>(rng, chart, degree, shape);
}

DifferentialForm random_rational_form(Random& rng, Chart chart, int degree, const FormShape& shape) {
  DifferentialForm f = random_form(rng, chart, degree, shape);
  DifferentialForm out(chart);
  for (const auto& [b, c] : f.terms()) {
    if (rng.percent(50)) {
      Polynomial xi = Polynomial::variable(static_cast<int>(rng.integer(0, chart.dimension() - 1)));
      out.add_term(b, c / Scalar(Polynomial(1) + xi * xi));
    } else {
      out.add_term(b, c);
    }
  }
  return out;
}

std::vector<Rational> random_point(Random& rng, int n, long bound) {
  std::vector<Rational> p;
  for (int i = 0; i < n; ++i) p.push_back(rng.rational(bound));
  return p;
}

SkewBilinear<Rational> random_skew(Random& rng, std::size_t n, long bound) {
  Matrix<Rational> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      m(j, i) = rng.rational(bound);
      m(i, j) = -m(j, i);
    }
  }
  return SkewBilinear<Rational>(m);
}

SkewBilinear<Rational> random_rank_skew(Random& rng, std::size_t n, std::size_t rk, long bound) {
  for (;;) {
    Matrix<Rational> m(n, n);
    for (std::size_t t = 0; t < rk / 2; ++t) {
      std::vector<Rational> a(n), b(n);
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng.rational(bound);
        b[i] = rng.rational(bound);
      }
      // (a ^ b)# v = a(v) b - b(v) a, i.e. M(j, i) += a_i b_j - b_i a_j
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(j, i) += a[i] * b[j] - b[i] * a[j];
      }
    }
    if (rank(m) == rk) return SkewBilinear<Rational>(m);
  }
}

Subspace<Rational> random_complement(Random& rng, const Subspace<Rational>& k, long bound) {
  const std::size_t n = k.ambient(), r = n - k.dimension();
  for (;;) {
    Matrix<Rational> m(n, r);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < r; ++j) m(i, j) = rng.rational(bound);
    }
    Subspace<Rational> g = Subspace<Rational>::span(m);
    if (are_complementary(k, g)) return g;
  }
}

SkewBilinear<Rational> random_adapted_skew(Random& rng, const Subspace<Rational>& k, const Subspace<Rational>& g,
                                           bool horizontal, long bound) {
  const std::size_t n = k.ambient(), d = k.dimension();
  Matrix<Rational> p = Matrix<Rational>::hconcat(k.basis(), g.basis());
  Matrix<Rational> p_inv = *inverse(p);
  for (;;) {
    Matrix<Rational> a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (i < d && j < d && horizontal) continue;
        a(i, j) = rng.rational(bound);
        a(j, i) = -a(i, j);
      }
    }
    if (!horizontal && a.block(0, 0, d, d).is_zero()) continue;
    return SkewBilinear<Rational>(p_inv.transpose() * a * p_inv);
  }
}

std::vector<Scalar> random_shear(Random& rng, int n, int degree, long bound) {
  std::vector<Scalar> phi;
  for (int i = 0; i < n; ++i) {
    Polynomial p = Polynomial::variable(i);
    if (degree > 0 && i + 1 < n && rng.percent(60)) {
      const int deg = static_cast<int>(rng.integer(1, degree));
      Monomial m;
      for (int e = 0; e < deg; ++e) m = m * Monomial::variable(static_cast<int>(rng.integer(i + 1, n - 1)));
      p += Polynomial::monomial(m, rng.nonzero_rational(bound));
    }
    phi.emplace_back(p);
  }
  return phi;
}

namespace {

DifferentialForm differential(const Scalar& f, Chart chart) { return de_rham(DifferentialForm::function(chart, f)); }

}  // namespace

DifferentialForm pullback_form(const std::vector<Scalar>& phi, const DifferentialForm& omega) {
  const Chart chart = omega.chart();
  DifferentialForm out(chart);
  for (const auto& [b, c] : omega.terms()) {
    if (!c.is_constant()) throw Error(ErrorCode::InvalidConfig, "pullback_form expects constant coefficients");
    DifferentialForm term = DifferentialForm::function(chart, c);
    for (int i : blade_indices(b)) term = wedge(term, differential(phi[static_cast<std::size_t>(i)], chart));
    out += term;
  }
  return out;
}

DifferentialForm pullback_normal_form(const std::vector<Scalar>& phi, int rk) {
  Chart chart(static_cast<int>(phi.size()));
  DifferentialForm omega(chart);
  for (int i = 0; i + 1 < rk; i += 2) omega += DifferentialForm::basis(chart, {i, i + 1});
  return pullback_form(phi, omega);
}

DifferentialForm random_horizontal_form(Random& rng, const DistributionFrame& k, int degree, const FormShape& shape) {
  if (degree < 1 || degree > k.chart().dimension()) throw Error(ErrorCode::InvalidConfig, "horizontal form degree out of range");
  std::vector<DifferentialForm> thetas = annihilator_frame(k);
  if (thetas.empty()) return DifferentialForm(k.chart());
  for (;;) {
    DifferentialForm out(k.chart());
    for (const auto& theta : thetas) {
      if (rng.percent(40)) continue;
      out += wedge(theta, random_form(rng, k.chart(), degree - 1, shape));
    }
    if (!out.is_zero()) return out;
  }
}

}  // namespace presym::harness
