#pragma once

#include <nlohmann/json.hpp>

#include "presym/exterior/serialization.hpp"
#include "presym/linalg/matrix.hpp"
#include "presym/presymplectic/presymplectic.hpp"

namespace presym::harness {

using nlohmann::json;

std::string to_string(const Rational& q);
inline std::string to_string(const Scalar& s) { return s.to_string(); }

json point_to_json(const std::vector<Rational>& p);
/// Accepts strings ("3/4") or integers. Throws SchemaError.
std::vector<Rational> point_from_json(const json& j, std::size_t n);

/// Rows of scalar strings.
template <class F>
json matrix_to_json(const Matrix<F>& m);
Matrix<Scalar> matrix_from_json(const json& j, int chart_dimension);
bool all_constant(const Matrix<Scalar>& m);
Matrix<Rational> constant_part(const Matrix<Scalar>& m);

json frame_to_json(const DistributionFrame& k);
DistributionFrame frame_from_json(const json& j, Chart chart);
json forms_to_json(const std::vector<DifferentialForm>& forms);
std::vector<DifferentialForm> forms_from_json(const json& j, std::optional<int> chart = std::nullopt);

/// Required member lookup; throws SchemaError naming the key.
const json& member(const json& j, const char* key);

}  // namespace presym::harness
