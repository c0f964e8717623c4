#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "presym/harness/report.hpp"
#include "presym/scalar/polynomial.hpp"

namespace presym::harness {

/// Unset fields take the per-suite defaults.
struct SuiteConfig {
  std::string suite;
  std::optional<int> dim;
  std::optional<std::size_t> trials;
  std::uint64_t seed = 1;
  std::optional<int> max_form_degree;
  std::optional<int> max_coef_degree;
  std::optional<std::vector<Rational>> grid;  // coordinate values of the MC sample grid
};

std::vector<std::string> suite_names();

/// Deterministic in the config. Throws InvalidConfig for an unknown suite or
/// out-of-range knobs.
Report run_suite(const SuiteConfig& config);

}  // namespace presym::harness
