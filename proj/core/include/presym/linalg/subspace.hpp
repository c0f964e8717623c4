#pragma once

#include "presym/linalg/matrix.hpp"

namespace presym {

/// Subspace of F^m held by a canonical basis: the reduced column echelon form
/// of any spanning set. Two subspaces are equal iff their bases are identical.
template <class F>
class Subspace {
 public:
  /// The zero subspace of F^m.
  explicit Subspace(std::size_t ambient = 0) : basis_(ambient, 0) {}
  /// Span of the columns of `spanning` (dependent columns allowed).
  static Subspace span(const Matrix<F>& spanning);
  static Subspace span(const std::vector<std::vector<F>>& vectors, std::size_t ambient);
  static Subspace whole(std::size_t ambient) { return Subspace(Matrix<F>::identity(ambient), Canonical{}); }

  std::size_t ambient() const { return basis_.rows(); }
  std::size_t dimension() const { return basis_.cols(); }
  const Matrix<F>& basis() const { return basis_; }

  bool contains(const std::vector<F>& v) const;
  bool contains(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  Subspace sum(const Subspace& other) const;
  /// Columns v with v^T w = 0 for all w in the subspace.
  Subspace dot_complement() const;
  /// The annihilator in the dual space, expressed in the dual basis.
  Subspace annihilator() const { return dot_complement(); }

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  struct Canonical {};
  Subspace(Matrix<F> basis, Canonical) : basis_(std::move(basis)) {}
  Matrix<F> basis_;
};

/// True when U + W is the whole space and U meets W only in zero.
template <class F>
bool are_complementary(const Subspace<F>& u, const Subspace<F>& w) {
  return u.ambient() == w.ambient() && u.dimension() + w.dimension() == u.ambient() &&
         u.sum(w).dimension() == u.ambient();
}

}  // namespace presym
