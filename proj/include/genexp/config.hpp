#pragma once

#include <cstdint>
#include <string>

#include "genexp/curve.hpp"
#include "genexp/growth.hpp"
#include "genexp/map.hpp"

namespace genexp {

// Parsed run configuration: sections [curve], [growth], [map] in a
// line-oriented key = value format ('#' comments). Unknown sections or keys
// are rejected with the offending line; field values are validated when the
// map is built.
struct RunConfig {
  CurveSpec curve = CurveSpec::unit_circle();
  GrowthSpec growth = GrowthSpec::exponential(1.0);
  double x_growth = 0.0;
  double a = 0.0;
  bool a_set = false;
  double mu_target = 2.0;
  Mode mode = Mode::Certified;
  std::uint64_t seed = 0;
};

RunConfig parse_config(const std::string& text);       // ParseError
RunConfig parse_config_file(const std::string& path);  // + IoFailure

// Builds the validated map. Certification failures surface as
// ValidationError on the "a" field, quoting the computed bound.
GenExpMap build_map(const RunConfig& cfg);

}  // namespace genexp
