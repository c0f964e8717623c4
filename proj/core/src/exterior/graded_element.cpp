#include "presym/exterior/graded_element.hpp"

#include <algorithm>

namespace presym {

Chart::Chart(int dimension) : dimension_(dimension) {
  if (dimension < 1 || dimension > kMaxDimension) {
    throw Error(ErrorCode::InvalidConfig, "chart dimension must be in [1, " + std::to_string(kMaxDimension) + "]");
  }
}

std::vector<std::string> Chart::labels() const {
  std::vector<std::string> out;
  for (int i = 0; i < dimension_; ++i) out.push_back(label(i));
  return out;
}

Blade blade_from_indices(const std::vector<int>& sorted_indices) {
  Blade b = 0;
  for (int i : sorted_indices) b |= blade_bit(i);
  return b;
}

std::vector<int> blade_indices(Blade b) {
  std::vector<int> out;
  for (; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

template <class Tag>
GradedElement<Tag> GradedElement<Tag>::basis(Chart chart, std::initializer_list<int> indices, Scalar c) {
  return basis(chart, std::vector<int>(indices), std::move(c));
}

template <class Tag>
GradedElement<Tag> GradedElement<Tag>::basis(Chart chart, const std::vector<int>& indices, Scalar c) {
  GradedElement e(chart);
  std::vector<int> idx = indices;
  for (int i : idx) {
    if (i < 0 || i >= chart.dimension()) throw Error(ErrorCode::DimensionMismatch, "basis index out of range");
  }
  // Bubble sort to track the permutation sign.
  bool odd = false;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j + 1 < idx.size() - i; ++j) {
      if (idx[j] == idx[j + 1]) return e;
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        odd = !odd;
      }
    }
  }
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) return e;
  e.add_term(blade_from_indices(idx), odd ? -c : c);
  return e;
}

template <class Tag>
std::string GradedElement<Tag>::to_string() const {
  if (terms_.empty()) return "0";
  const char* prefix = std::is_same_v<Tag, FormTag> ? "dx" : "d";
  std::vector<Blade> order;
  for (const auto& [b, c] : terms_) order.push_back(b);
  std::sort(order.begin(), order.end(), [](Blade a, Blade b) {
    if (blade_degree(a) != blade_degree(b)) return blade_degree(a) < blade_degree(b);
    return blade_indices(a) < blade_indices(b);
  });
  std::string out;
  for (Blade b : order) {
    if (!out.empty()) out += " + ";
    out += "(" + terms_.at(b).to_string() + ")";
    for (int i : blade_indices(b)) out += std::string(out.back() == ')' ? "*" : "^") + prefix + std::to_string(i + 1);
  }
  return out;
}

template class GradedElement<FormTag>;
template class GradedElement<VectorTag>;

}  // namespace presym
