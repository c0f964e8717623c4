#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "presym/error.hpp"
#include "presym/scalar/rational_function.hpp"

namespace presym {

// Heuristic size of a field element; elimination picks the cheapest pivot.
inline std::size_t elimination_cost(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}
inline std::size_t elimination_cost(const RationalFunction& f) {
  return 1024 * static_cast<std::size_t>(std::max(0, f.degree())) + f.num().size() + f.den().size();
}

/// Dense row-major matrix over an exact field (Rational or Scalar).
template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}
  Matrix(std::initializer_list<std::initializer_list<F>> rows);

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }
  /// Columns given as vectors of equal length.
  static Matrix from_columns(const std::vector<std::vector<F>>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<F> column(std::size_t j) const;
  void set_column(std::size_t j, const std::vector<F>& v);

  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  Matrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  static Matrix hconcat(const Matrix& a, const Matrix& b);
  static Matrix vconcat(const Matrix& a, const Matrix& b);

  bool is_zero() const;
  bool is_skew() const;

  Matrix operator-() const;
  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(const F& c);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const F& c) { return a *= c; }
  friend Matrix operator*(const F& c, Matrix a) { return a *= c; }
  friend bool operator==(const Matrix&, const Matrix&) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

template <class F>
Matrix<F> operator*(const Matrix<F>& a, const Matrix<F>& b);
template <class F>
std::vector<F> operator*(const Matrix<F>& a, const std::vector<F>& v);

/// Fraction-free (Bareiss) determinant.
template <class F>
F determinant(const Matrix<F>& a);

/// Fraction-free Gauss-Jordan; nullopt when singular.
template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a);

template <class F>
struct RowEchelon {
  Matrix<F> reduced;                 // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

template <class F>
RowEchelon<F> row_echelon(const Matrix<F>& a);

template <class F>
std::size_t rank(const Matrix<F>& a);

/// Basis of {x : A x = 0} as columns, one per free variable (free entry 1).
template <class F>
Matrix<F> nullspace(const Matrix<F>& a);

/// Some X with A X = B, or nullopt if the system is inconsistent.
template <class F>
std::optional<Matrix<F>> solve(const Matrix<F>& a, const Matrix<F>& b);

/// Pfaffian of a skew matrix of even size (1 for the empty matrix, 0 for odd).
template <class F>
F pfaffian(const Matrix<F>& a);

Matrix<Rational> evaluate(const Matrix<Scalar>& m, std::span<const Rational> point);
Matrix<Scalar> lift(const Matrix<Rational>& m);

}  // namespace presym
