#pragma once

#include <nlohmann/json.hpp>

#include "presym/exterior/graded_element.hpp"

namespace presym {

// { "chart": n, "terms": [ { "degree": k, "indices": [i1..ik], "num": "...", "den": "..." } ] }
// Indices are 1-based and strictly increasing; terms are emitted in
// (degree, indices) order so equal elements serialize identically.

template <class Tag>
nlohmann::json to_json(const GradedElement<Tag>& e);

/// Throws SchemaError / ParseError on malformed input. When `expected_chart`
/// is given the "chart" field may be omitted but must agree if present.
template <class Tag>
GradedElement<Tag> element_from_json(const nlohmann::json& j, std::optional<int> expected_chart = std::nullopt);

inline DifferentialForm form_from_json(const nlohmann::json& j, std::optional<int> chart = std::nullopt) {
  return element_from_json<FormTag>(j, chart);
}
inline MultivectorField multivector_from_json(const nlohmann::json& j, std::optional<int> chart = std::nullopt) {
  return element_from_json<VectorTag>(j, chart);
}

/// Scalar from the polynomial-fraction grammar, checked against the chart.
Scalar scalar_from_string(const std::string& text, int chart_dimension);

}  // namespace presym
