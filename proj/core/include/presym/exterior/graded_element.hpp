#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "presym/error.hpp"
#include "presym/scalar/rational_function.hpp"

namespace presym {

/// Coordinate chart R^n with variables x1..xn.
class Chart {
 public:
  static constexpr int kMaxDimension = Monomial::kMaxVariables;

  explicit Chart(int dimension);

  int dimension() const { return dimension_; }
  std::string label(int index) const { return "x" + std::to_string(index + 1); }
  std::vector<std::string> labels() const;

  friend bool operator==(const Chart&, const Chart&) = default;

 private:
  int dimension_;
};

/// Strictly increasing index tuple i1 < ... < ik encoded as a bitmask.
using Blade = std::uint32_t;

inline int blade_degree(Blade b) { return std::popcount(b); }
inline bool blade_has(Blade b, int i) { return (b >> i) & 1u; }
inline Blade blade_bit(int i) { return Blade{1} << i; }
Blade blade_from_indices(const std::vector<int>& sorted_indices);
std::vector<int> blade_indices(Blade b);

struct FormTag {};
struct VectorTag {};

/// Element of the exterior algebra over Scalar, on a fixed chart. Either a
/// differential form (basis dx_I) or a multivector field (basis d/dx_I).
/// Zero coefficients are never stored.
template <class Tag>
class GradedElement {
 public:
  using Terms = std::map<Blade, Scalar>;

  explicit GradedElement(Chart chart) : chart_(chart) {}

  /// c * e_{i1} ^ ... ^ e_{ik}; 0-based indices in any order (sign applied,
  /// zero when an index repeats).
  static GradedElement basis(Chart chart, std::initializer_list<int> indices, Scalar c = Scalar(1));
  static GradedElement basis(Chart chart, const std::vector<int>& indices, Scalar c = Scalar(1));
  static GradedElement function(Chart chart, Scalar f) {
    GradedElement e(chart);
    e.add_term(0, f);
    return e;
  }

  const Chart& chart() const { return chart_; }
  int dim() const { return chart_.dimension(); }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Scalar coefficient(Blade b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? Scalar() : it->second;
  }

  void add_term(Blade b, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(b, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Degree if every stored term has the same degree; nullopt for zero or mixed.
  std::optional<int> homogeneous_degree() const {
    std::optional<int> d;
    for (const auto& [b, c] : terms_) {
      int k = blade_degree(b);
      if (d && *d != k) return std::nullopt;
      d = k;
    }
    return d;
  }
  /// Zero counts as homogeneous of every degree.
  bool is_homogeneous_of(int degree) const {
    for (const auto& [b, c] : terms_) {
      if (blade_degree(b) != degree) return false;
    }
    return true;
  }
  GradedElement component(int degree) const {
    GradedElement out(chart_);
    for (const auto& [b, c] : terms_) {
      if (blade_degree(b) == degree) out.terms_.emplace(b, c);
    }
    return out;
  }
  /// Largest coefficient degree (max of numerator/denominator degrees).
  int coefficient_degree() const {
    int d = -1;
    for (const auto& [b, c] : terms_) d = std::max(d, c.degree());
    return d;
  }

  GradedElement operator-() const {
    GradedElement r(chart_);
    for (const auto& [b, c] : terms_) r.terms_.emplace(b, -c);
    return r;
  }
  GradedElement& operator+=(const GradedElement& rhs) {
    require_same_chart(rhs);
    for (const auto& [b, c] : rhs.terms_) add_term(b, c);
    return *this;
  }
  GradedElement& operator-=(const GradedElement& rhs) {
    require_same_chart(rhs);
    for (const auto& [b, c] : rhs.terms_) add_term(b, -c);
    return *this;
  }
  GradedElement& operator*=(const Scalar& f) {
    if (f.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [b, c] : terms_) c *= f;
    return *this;
  }
  friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
  friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
  friend GradedElement operator*(GradedElement a, const Scalar& f) { return a *= f; }
  friend GradedElement operator*(const Scalar& f, GradedElement a) { return a *= f; }
  friend bool operator==(const GradedElement& a, const GradedElement& b) = default;

  void require_same_chart(const GradedElement& other) const {
    if (!(chart_ == other.chart_)) {
      throw Error(ErrorCode::ChartMismatch, "charts of dimension " + std::to_string(dim()) + " and " +
                                                std::to_string(other.dim()));
    }
  }

  /// Human-readable, e.g. `(x1)*dx1^dx2 + dx3`.
  std::string to_string() const;

 private:
  Chart chart_;
  Terms terms_;
};

using DifferentialForm = GradedElement<FormTag>;
using MultivectorField = GradedElement<VectorTag>;

extern template class GradedElement<FormTag>;
extern template class GradedElement<VectorTag>;

/// Parity of the permutation sorting the concatenation (a, b): the number of
/// pairs i in a, j in b with i > j, mod 2. Blades must be disjoint.
inline int wedge_sign_parity(Blade a, Blade b) {
  int inversions = 0;
  for (Blade rest = b; rest != 0; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    inversions += std::popcount(a >> (j + 1));
  }
  return inversions & 1;
}

}  // namespace presym
