#pragma once

// Shared fixtures for the test binaries: the two reference maps, a Newton
// oracle for independent root cross-checks, and a small deterministic RNG
// wrapper so every property test is reproducible from a printed seed.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

#include "genexp/config.hpp"
#include "genexp/curve.hpp"
#include "genexp/growth.hpp"
#include "genexp/map.hpp"

namespace testsupport {

using genexp::Complex;

inline genexp::CurveSpec diamond_spec() {
  return genexp::CurveSpec::polyline({{-genexp::kHalfPi, {0.0, -1.0}},
                                      {0.0, {1.0, 0.0}},
                                      {genexp::kHalfPi, {0.0, 1.0}}});
}

inline genexp::GenExpMap circle_map(double a = 5.0) {
  return genexp::GenExpMap::build(
      genexp::build_curve(genexp::CurveSpec::unit_circle()),
      genexp::build_growth(genexp::GrowthSpec::exponential(1.0)), a);
}

inline genexp::GenExpMap diamond_map(double a = 2.0) {
  return genexp::GenExpMap::build(genexp::build_curve(diamond_spec()),
                                  genexp::build_growth(
                                      genexp::GrowthSpec::exponential(1.0)),
                                  a, 2.0, genexp::Mode::Uncertified);
}

// Independent scalar root finder for oracle values.
inline double newton_root(const std::function<double(double)>& F,
                          const std::function<double(double)>& dF, double x0,
                          int iters = 100) {
  double x = x0;
  for (int i = 0; i < iters; ++i) {
    const double step = F(x) / dF(x);
    x -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng);
  }
  long long integer(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(eng);
  }
};

}  // namespace testsupport
