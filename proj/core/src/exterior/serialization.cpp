#include "presym/exterior/serialization.hpp"

#include <algorithm>

namespace presym {

Scalar scalar_from_string(const std::string& text, int chart_dimension) {
  Scalar s = Scalar::parse(text);
  int hv = std::max(s.num().highest_variable(), s.den().highest_variable());
  if (hv >= chart_dimension) {
    throw Error(ErrorCode::SchemaError,
                "scalar \"" + text + "\" uses x" + std::to_string(hv + 1) + " on a chart of dimension " +
                    std::to_string(chart_dimension));
  }
  return s;
}

namespace {

Polynomial polynomial_from_string(const std::string& text, int n) {
  Polynomial p = Polynomial::parse(text);
  if (p.highest_variable() >= n) {
    throw Error(ErrorCode::SchemaError, "polynomial \"" + text + "\" uses a variable outside the chart");
  }
  return p;
}

}  // namespace

template <class Tag>
nlohmann::json to_json(const GradedElement<Tag>& e) {
  std::vector<Blade> order;
  for (const auto& [b, c] : e.terms()) order.push_back(b);
  std::sort(order.begin(), order.end(), [](Blade a, Blade b) {
    if (blade_degree(a) != blade_degree(b)) return blade_degree(a) < blade_degree(b);
    return blade_indices(a) < blade_indices(b);
  });
  nlohmann::json terms = nlohmann::json::array();
  for (Blade b : order) {
    const Scalar& c = e.terms().at(b);
    std::vector<int> idx = blade_indices(b);
    for (int& i : idx) ++i;
    terms.push_back({{"degree", idx.size()}, {"indices", idx}, {"num", c.num().to_string()}, {"den", c.den().to_string()}});
  }
  return {{"chart", e.dim()}, {"terms", terms}};
}

template <class Tag>
GradedElement<Tag> element_from_json(const nlohmann::json& j, std::optional<int> expected_chart) {
  auto schema = [](const std::string& why) { return Error(ErrorCode::SchemaError, why); };
  if (!j.is_object()) throw schema("element must be a JSON object");
  int n = 0;
  if (j.contains("chart")) {
    if (!j["chart"].is_number_integer()) throw schema("\"chart\" must be an integer");
    n = j["chart"].get<int>();
    if (expected_chart && *expected_chart != n) throw Error(ErrorCode::ChartMismatch, "element chart disagrees");
  } else if (expected_chart) {
    n = *expected_chart;
  } else {
    throw schema("missing \"chart\"");
  }
  if (n < 1 || n > Chart::kMaxDimension) throw schema("chart dimension out of range");
  GradedElement<Tag> e{Chart(n)};
  if (!j.contains("terms") || !j["terms"].is_array()) throw schema("missing \"terms\" array");
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("indices") || !t["indices"].is_array() || !t.contains("num")) {
      throw schema("term needs \"indices\" and \"num\"");
    }
    std::vector<int> idx;
    for (const auto& i : t["indices"]) {
      if (!i.is_number_integer()) throw schema("indices must be integers");
      idx.push_back(i.get<int>() - 1);
    }
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] < 0 || idx[k] >= n) throw schema("index out of range");
      if (k > 0 && idx[k] <= idx[k - 1]) throw schema("indices must be strictly increasing");
    }
    if (t.contains("degree") && (!t["degree"].is_number_integer() || t["degree"].get<std::size_t>() != idx.size())) {
      throw schema("\"degree\" disagrees with indices");
    }
    if (!t["num"].is_string()) throw schema("\"num\" must be a string");
    Polynomial num = polynomial_from_string(t["num"].get<std::string>(), n);
    Polynomial den(1);
    if (t.contains("den")) {
      if (!t["den"].is_string()) throw schema("\"den\" must be a string");
      den = polynomial_from_string(t["den"].get<std::string>(), n);
      if (den.is_zero()) throw Error(ErrorCode::ParseError, "zero denominator");
    }
    e.add_term(blade_from_indices(idx), Scalar(std::move(num), std::move(den)));
  }
  return e;
}

template nlohmann::json to_json(const GradedElement<FormTag>&);
template nlohmann::json to_json(const GradedElement<VectorTag>&);
template GradedElement<FormTag> element_from_json(const nlohmann::json&, std::optional<int>);
template GradedElement<VectorTag> element_from_json(const nlohmann::json&, std::optional<int>);

}  // namespace presym
