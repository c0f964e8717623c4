#include "presym/linalg/subspace.hpp"

namespace presym {

template <class F>
Subspace<F> Subspace<F>::span(const Matrix<F>& spanning) {
  RowEchelon<F> e = row_echelon(spanning.transpose());
  Matrix<F> rows = e.reduced.block(0, 0, e.pivots.size(), spanning.rows());
  return Subspace(rows.transpose(), Canonical{});
}

template <class F>
Subspace<F> Subspace<F>::span(const std::vector<std::vector<F>>& vectors, std::size_t ambient) {
  return span(Matrix<F>::from_columns(vectors, ambient));
}

template <class F>
bool Subspace<F>::contains(const std::vector<F>& v) const {
  if (v.size() != ambient()) throw Error(ErrorCode::DimensionMismatch, "subspace membership");
  return solve(basis_, Matrix<F>::from_columns({v}, ambient())).has_value();
}

template <class F>
bool Subspace<F>::contains(const Subspace& other) const {
  if (other.ambient() != ambient()) throw Error(ErrorCode::DimensionMismatch, "subspace membership");
  return sum(other).dimension() == dimension();
}

template <class F>
Subspace<F> Subspace<F>::sum(const Subspace& other) const {
  if (other.ambient() != ambient()) throw Error(ErrorCode::DimensionMismatch, "subspace sum");
  return span(Matrix<F>::hconcat(basis_, other.basis_));
}

template <class F>
Subspace<F> Subspace<F>::intersect(const Subspace& other) const {
  if (other.ambient() != ambient()) throw Error(ErrorCode::DimensionMismatch, "subspace intersection");
  // [A | -B] (x; y) = 0  =>  A x lies in both.
  Matrix<F> ab = Matrix<F>::hconcat(basis_, -other.basis_);
  Matrix<F> ker = nullspace(ab);
  Matrix<F> x = ker.block(0, 0, dimension(), ker.cols());
  return span(basis_ * x);
}

template <class F>
Subspace<F> Subspace<F>::dot_complement() const {
  if (dimension() == 0) return whole(ambient());
  return span(nullspace(basis_.transpose()));
}

template class Subspace<Rational>;
template class Subspace<Scalar>;

}  // namespace presym
