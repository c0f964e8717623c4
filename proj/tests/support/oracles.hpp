#pragma once

// Deliberately naive reference implementations used as test oracles.

#include <algorithm>
#include <numeric>
#include <vector>

#include "presym/exterior/calculus.hpp"
#include "presym/linalg/matrix.hpp"

namespace presym::oracle {

inline int permutation_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
  }
  return inv % 2 ? -1 : 1;
}

/// Leibniz expansion over all permutations.
template <class F>
F leibniz_det(const Matrix<F>& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  F sum(0);
  do {
    F prod(1);
    for (int i = 0; i < n; ++i) prod *= a(static_cast<std::size_t>(i), static_cast<std::size_t>(p[i]));
    sum += permutation_sign(p) == 1 ? prod : -prod;
  } while (std::next_permutation(p.begin(), p.end()));
  return sum;
}

/// Textbook Gauss-Jordan on a copy, rows of vectors.
inline std::size_t gauss_rank(const Matrix<Rational>& m) {
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < m.cols(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

/// Expansion of the Pfaffian along the first row.
inline Rational pfaffian_expand(const Matrix<Rational>& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n % 2) return 0;
  Rational sum = 0;
  for (std::size_t j = 1; j < n; ++j) {
    if (a(0, j) == 0) continue;
    std::vector<std::size_t> rest;
    for (std::size_t k = 1; k < n; ++k) {
      if (k != j) rest.push_back(k);
    }
    Rational term = a(0, j) * pfaffian_expand(a.select(rest, rest));
    sum += (j % 2 == 1) ? term : Rational(-term);
  }
  return sum;
}

/// omega(v1, ..., vk) for a constant-coefficient k-form: sum_I c_I det[(v_j)_i]_{i in I}.
inline Rational evaluate_on_vectors(const DifferentialForm& omega, const std::vector<std::vector<Rational>>& vs) {
  const std::size_t k = vs.size();
  Rational sum = 0;
  for (const auto& [b, c] : omega.terms()) {
    if (static_cast<std::size_t>(blade_degree(b)) != k) continue;
    std::vector<int> idx = blade_indices(b);
    Matrix<Rational> m(k, k);
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t j = 0; j < k; ++j) m(r, j) = vs[j][static_cast<std::size_t>(idx[r])];
    }
    sum += c.constant_value() * (k == 0 ? Rational(1) : leibniz_det(m));
  }
  return sum;
}

/// Z^{ij} with Z = sum_{i<j} Z^{ij} d_i ^ d_j, extended skew.
inline Scalar bivector_entry(const MultivectorField& z, int i, int j) {
  if (i == j) return Scalar();
  Scalar c = z.coefficient(blade_bit(i) | blade_bit(j));
  return i < j ? c : -c;
}

/// {f, g} = Z(df, dg) = sum_{i,j} Z^{ij} d_i f d_j g.
inline Scalar poisson_bracket(const MultivectorField& z, const Scalar& f, const Scalar& g) {
  Scalar acc;
  for (int i = 0; i < z.dim(); ++i) {
    for (int j = 0; j < z.dim(); ++j) acc += bivector_entry(z, i, j) * f.derivative(i) * g.derivative(j);
  }
  return acc;
}

/// sum_l Z^{il} d_l Z^{jk} + cyclic; zero for all i<j<k iff Z is Poisson.
inline Scalar jacobi_coefficient(const MultivectorField& z, int i, int j, int k) {
  Scalar acc;
  for (int l = 0; l < z.dim(); ++l) {
    acc += bivector_entry(z, i, l) * bivector_entry(z, j, k).derivative(l);
    acc += bivector_entry(z, j, l) * bivector_entry(z, k, i).derivative(l);
    acc += bivector_entry(z, k, l) * bivector_entry(z, i, j).derivative(l);
  }
  return acc;
}

}  // namespace presym::oracle
