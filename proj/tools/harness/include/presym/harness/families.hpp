#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace presym::harness {

using nlohmann::json;

/// R^4, eta = dx1^dx2, G = span(d1, d2): constant Z, MC and non-MC betas.
json family_f1();
/// R^5, eta = dx1^dx2 + dx3^dx4, G = span(d1, d2, d3, d4 + x1 d5): non-involutive
/// G, non-Poisson Z, and shear deformations on which lambda_3 is active.
json family_f2();
std::vector<std::pair<std::string, json>> bundled_families();

/// Inputs of the preservation-witness check for K = span(d3, d4 + x3 d1),
/// Z = d1^d2 on R^4 (K is not involutive).
json engineered_negative_case();

struct GenerateConfig {
  int dim = 4;
  int max_coef_degree = 2;
  std::uint64_t seed = 1;
};

std::vector<std::string> generator_kinds();
/// Deterministic in the config. Throws InvalidKind, InvalidConfig.
json generate(const std::string& kind, const GenerateConfig& config);

}  // namespace presym::harness
