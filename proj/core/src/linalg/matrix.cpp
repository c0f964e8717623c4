#include "presym/linalg/matrix.hpp"

#include <algorithm>
#include <type_traits>

namespace presym {

namespace {

std::string text(const Rational& q) { return q.get_str(); }
std::string text(const RationalFunction& f) { return f.to_string(); }

// Index of the cheapest nonzero entry in column `col` among rows [from, rows).
template <class F>
std::optional<std::size_t> choose_pivot(const Matrix<F>& m, std::size_t col, std::size_t from) {
  std::optional<std::size_t> best;
  std::size_t best_cost = 0;
  for (std::size_t i = from; i < m.rows(); ++i) {
    if (is_zero(m(i, col))) continue;
    std::size_t c = elimination_cost(m(i, col));
    if (!best || c < best_cost) {
      best = i;
      best_cost = c;
    }
  }
  return best;
}

template <class F>
void swap_rows(Matrix<F>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

}  // namespace

template <class F>
Matrix<F>::Matrix(std::initializer_list<std::initializer_list<F>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

template <class F>
Matrix<F> Matrix<F>::from_columns(const std::vector<std::vector<F>>& columns, std::size_t rows) {
  Matrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
  return m;
}

template <class F>
std::vector<F> Matrix<F>::column(std::size_t j) const {
  std::vector<F> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

template <class F>
void Matrix<F>::set_column(std::size_t j, const std::vector<F>& v) {
  if (v.size() != rows_) throw Error(ErrorCode::DimensionMismatch, "column length");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

template <class F>
Matrix<F> Matrix<F>::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

template <class F>
Matrix<F> Matrix<F>::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorCode::DimensionMismatch, "block out of range");
  Matrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  }
  return b;
}

template <class F>
Matrix<F> Matrix<F>::select(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
  Matrix b(rs.size(), cs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    for (std::size_t j = 0; j < cs.size(); ++j) b(i, j) = (*this)(rs[i], cs[j]);
  }
  return b;
}

template <class F>
Matrix<F> Matrix<F>::hconcat(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "hconcat");
  Matrix m(a.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols_; ++j) m(i, a.cols_ + j) = b(i, j);
  }
  return m;
}

template <class F>
Matrix<F> Matrix<F>::vconcat(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.cols_) throw Error(ErrorCode::DimensionMismatch, "vconcat");
  Matrix m(a.rows_ + b.rows_, a.cols_);
  std::copy(a.data_.begin(), a.data_.end(), m.data_.begin());
  std::copy(b.data_.begin(), b.data_.end(), m.data_.begin() + static_cast<std::ptrdiff_t>(a.data_.size()));
  return m;
}

template <class F>
bool Matrix<F>::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const F& x) { return presym::is_zero(x); });
}

template <class F>
bool Matrix<F>::is_skew() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (!presym::is_zero((*this)(i, i))) return false;
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if (!presym::is_zero(F((*this)(i, j) + (*this)(j, i)))) return false;
    }
  }
  return true;
}

template <class F>
Matrix<F> Matrix<F>::operator-() const {
  Matrix m(*this);
  for (auto& x : m.data_) x = -x;
  return m;
}

template <class F>
Matrix<F>& Matrix<F>::operator+=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix +");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

template <class F>
Matrix<F>& Matrix<F>::operator-=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix -");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

template <class F>
Matrix<F>& Matrix<F>::operator*=(const F& c) {
  for (auto& x : data_) x *= c;
  return *this;
}

template <class F>
std::string Matrix<F>::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < cols_; ++j) out += (j ? ", " : "") + text((*this)(i, j));
    out += "]";
  }
  return out + "]";
}

template <class F>
Matrix<F> operator*(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product");
  Matrix<F> m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (!is_zero(b(k, j))) m(i, j) += a(i, k) * b(k, j);
      }
    }
  }
  return m;
}

template <class F>
std::vector<F> operator*(const Matrix<F>& a, const std::vector<F>& v) {
  if (a.cols() != v.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
  std::vector<F> out(a.rows(), F(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (!is_zero(a(i, k)) && !is_zero(v[k])) out[i] += a(i, k) * v[k];
    }
  }
  return out;
}

template <class F>
F determinant(const Matrix<F>& a) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return F(1);
  Matrix<F> m = a;
  F prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    auto p = choose_pivot(m, k, k);
    if (!p) return F(0);
    if (*p != k) {
      swap_rows(m, *p, k);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        F t = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        m(i, j) = t / prev;
      }
      m(i, k) = F(0);
    }
    prev = m(k, k);
  }
  F d = m(n - 1, n - 1);
  return negate ? F(-d) : d;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix<F> m = Matrix<F>::hconcat(a, Matrix<F>::identity(n));
  F prev(1);
  for (std::size_t k = 0; k < n; ++k) {
    auto p = choose_pivot(m, k, k);
    if (!p) return std::nullopt;
    swap_rows(m, *p, k);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        F t = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        m(i, j) = t / prev;
      }
      m(i, k) = F(0);
    }
    prev = m(k, k);
  }
  Matrix<F> inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = m(i, n + j) / m(i, i);
  }
  return inv;
}

template <class F>
RowEchelon<F> row_echelon(const Matrix<F>& a) {
  Matrix<F> m = a;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    auto p = choose_pivot(m, c, r);
    if (!p) continue;
    swap_rows(m, *p, r);
    F inv = F(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) {
      if (!is_zero(m(r, j))) m(r, j) *= inv;
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      F f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <class F>
std::size_t rank(const Matrix<F>& a) {
  return row_echelon(a).pivots.size();
}

template <class F>
Matrix<F> nullspace(const Matrix<F>& a) {
  RowEchelon<F> e = row_echelon(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<F> v(a.cols(), F(0));
    v[f] = F(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return Matrix<F>::from_columns(basis, a.cols());
}

template <class F>
std::optional<Matrix<F>> solve(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "solve");
  RowEchelon<F> e = row_echelon(Matrix<F>::hconcat(a, b));
  Matrix<F> x(a.cols(), b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    std::size_t c = e.pivots[r];
    if (c >= a.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(c, j) = e.reduced(r, a.cols() + j);
  }
  return x;
}

namespace {

template <class F>
F pfaffian_rec(const Matrix<F>& a, std::vector<std::size_t>& idx) {
  if (idx.empty()) return F(1);
  const std::size_t i0 = idx[0];
  F acc(0);
  for (std::size_t t = 1; t < idx.size(); ++t) {
    const F& entry = a(i0, idx[t]);
    if (is_zero(entry)) continue;
    std::vector<std::size_t> rest;
    rest.reserve(idx.size() - 2);
    for (std::size_t s = 1; s < idx.size(); ++s) {
      if (s != t) rest.push_back(idx[s]);
    }
    F sub = pfaffian_rec(a, rest);
    if (is_zero(sub)) continue;
    // expansion along the first row: sign (-1)^(t+1) with t the 0-based column
    if (t % 2 == 1) {
      acc += entry * sub;
    } else {
      acc -= entry * sub;
    }
  }
  return acc;
}

// Pf(A) = p * Pf(Schur complement of the leading 2x2 block [[0, p], [-p, 0]]).
Rational pfaffian_elimination(Matrix<Rational> a) {
  const std::size_t n = a.rows();
  Rational pf(1);
  for (std::size_t k = 0; k + 1 < n; k += 2) {
    std::size_t piv = k + 1;
    while (piv < n && is_zero(a(k, piv))) ++piv;
    if (piv == n) return Rational(0);
    if (piv != k + 1) {
      for (std::size_t t = 0; t < n; ++t) std::swap(a(t, k + 1), a(t, piv));
      for (std::size_t t = 0; t < n; ++t) std::swap(a(k + 1, t), a(piv, t));
      pf = -pf;
    }
    const Rational p = a(k, k + 1);
    pf *= p;
    for (std::size_t i = k + 2; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        Rational v = a(i, j) - (a(k, i) * a(k + 1, j) - a(k + 1, i) * a(k, j)) / p;
        a(i, j) = v;
        a(j, i) = -v;
      }
    }
  }
  return pf;
}

}  // namespace

template <class F>
F pfaffian(const Matrix<F>& a) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "pfaffian of a non-square matrix");
  if (a.rows() % 2) return F(0);
  if constexpr (std::is_same_v<F, Rational>) {
    return pfaffian_elimination(a);
  } else {
    // symbolic entries: expansion avoids dividing by rational functions
    std::vector<std::size_t> idx(a.rows());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return pfaffian_rec(a, idx);
  }
}

Matrix<Rational> evaluate(const Matrix<Scalar>& m, std::span<const Rational> point) {
  Matrix<Rational> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).evaluate(point);
  }
  return out;
}

Matrix<Scalar> lift(const Matrix<Rational>& m) {
  Matrix<Scalar> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Scalar(m(i, j));
  }
  return out;
}

#define PRESYM_INSTANTIATE_MATRIX(F)                                                        \
  template class Matrix<F>;                                                                 \
  template Matrix<F> operator*(const Matrix<F>&, const Matrix<F>&);                         \
  template std::vector<F> operator*(const Matrix<F>&, const std::vector<F>&);               \
  template F determinant(const Matrix<F>&);                                                 \
  template std::optional<Matrix<F>> inverse(const Matrix<F>&);                              \
  template RowEchelon<F> row_echelon(const Matrix<F>&);                                     \
  template std::size_t rank(const Matrix<F>&);                                              \
  template Matrix<F> nullspace(const Matrix<F>&);                                           \
  template std::optional<Matrix<F>> solve(const Matrix<F>&, const Matrix<F>&);              \
  template F pfaffian(const Matrix<F>&);

PRESYM_INSTANTIATE_MATRIX(Rational)
PRESYM_INSTANTIATE_MATRIX(Scalar)

}  // namespace presym
