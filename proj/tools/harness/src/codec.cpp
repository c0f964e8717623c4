#include "presym/harness/codec.hpp"

namespace presym::harness {

std::string to_string(const Rational& q) { return q.get_str(); }

json point_to_json(const std::vector<Rational>& p) {
  json out = json::array();
  for (const auto& q : p) out.push_back(to_string(q));
  return out;
}

namespace {

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw Error(ErrorCode::SchemaError, "expected a rational as string or integer");
  Scalar s = Scalar::parse(j.get<std::string>());
  if (!s.is_constant()) throw Error(ErrorCode::SchemaError, "expected a constant, got " + j.get<std::string>());
  return s.constant_value();
}

}  // namespace

std::vector<Rational> point_from_json(const json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) throw Error(ErrorCode::SchemaError, "point must be an array of length " + std::to_string(n));
  std::vector<Rational> p;
  for (const auto& x : j) p.push_back(rational_from_json(x));
  return p;
}

template <class F>
json matrix_to_json(const Matrix<F>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template json matrix_to_json(const Matrix<Rational>&);
template json matrix_to_json(const Matrix<Scalar>&);

Matrix<Scalar> matrix_from_json(const json& j, int chart_dimension) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw Error(ErrorCode::SchemaError, "matrix must be a nonempty array of rows");
  const std::size_t cols = j[0].size();
  Matrix<Scalar> m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw Error(ErrorCode::SchemaError, "ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      const json& e = j[r][c];
      if (e.is_number_integer()) {
        m(r, c) = Scalar(Rational(e.get<long>()));
      } else if (e.is_string()) {
        m(r, c) = scalar_from_string(e.get<std::string>(), chart_dimension);
      } else {
        throw Error(ErrorCode::SchemaError, "matrix entries must be scalar strings");
      }
    }
  }
  return m;
}

bool all_constant(const Matrix<Scalar>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_constant()) return false;
    }
  }
  return true;
}

Matrix<Rational> constant_part(const Matrix<Scalar>& m) {
  Matrix<Rational> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).constant_value();
  }
  return out;
}

json frame_to_json(const DistributionFrame& k) {
  json out = json::array();
  for (const auto& v : k.sections()) out.push_back(to_json(v));
  return out;
}

DistributionFrame frame_from_json(const json& j, Chart chart) {
  if (!j.is_array()) throw Error(ErrorCode::SchemaError, "frame must be an array of vector fields");
  std::vector<MultivectorField> sections;
  for (const auto& v : j) {
    MultivectorField f = multivector_from_json(v, chart.dimension());
    if (!f.is_homogeneous_of(1) || f.is_zero()) throw Error(ErrorCode::SchemaError, "frame entries must be nonzero vector fields");
    sections.push_back(std::move(f));
  }
  return DistributionFrame(chart, std::move(sections));
}

json forms_to_json(const std::vector<DifferentialForm>& forms) {
  json out = json::array();
  for (const auto& f : forms) out.push_back(to_json(f));
  return out;
}

std::vector<DifferentialForm> forms_from_json(const json& j, std::optional<int> chart) {
  if (!j.is_array()) throw Error(ErrorCode::SchemaError, "expected an array of forms");
  std::vector<DifferentialForm> out;
  for (const auto& f : j) out.push_back(form_from_json(f, chart));
  return out;
}

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::SchemaError, std::string("missing \"") + key + "\"");
  return j[key];
}

}  // namespace presym::harness
