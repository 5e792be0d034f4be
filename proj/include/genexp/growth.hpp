#pragma once

#include <vector>

#include "genexp/errors.hpp"
#include "genexp/numeric.hpp"

namespace genexp {

// Radial growth profile g: R -> (0, inf), strictly increasing with g -> 0 at
// -inf and a.e.-defined non-decreasing derivative. Two variants: a pure
// exponential beta*e^{lambda x}, and a log-convex piecewise-linear log g
// extended affinely (in log) beyond its breakpoints.
struct GrowthBreakpoint {
  double x;
  double g;  // > 0
};

struct GrowthSpec {
  enum class Kind { Exponential, LogConvexPolyline };

  Kind kind = Kind::Exponential;
  double lambda = 1.0;
  double beta = 1.0;
  std::vector<GrowthBreakpoint> breakpoints;

  static GrowthSpec exponential(double lambda, double beta = 1.0);
  static GrowthSpec log_convex_polyline(std::vector<GrowthBreakpoint> bps);
};

// Values above this are saturated by forward evaluation of the map; the
// profile itself reports clamped values through eval_clamped only.
inline constexpr double kGrowthCap = 1e300;

class GrowthProfile {
 public:
  // certified growth constant: g(x + 2pi) >= c * g(x) for x >= x_growth
  double c() const { return c_; }
  double x_growth() const { return x_growth_; }
  const GrowthSpec& spec() const { return spec_; }

  double eval(double x) const;          // may overflow to inf for huge x
  double eval_clamped(double x) const;  // min(g(x), kGrowthCap)
  double log_eval(double x) const;      // log g(x), never overflows
  double eval_prime(double x) const;    // right-hand slope at breakpoints

  // g^{-1}(v) for v > 0 (range of both variants is all of (0, inf)).
  // |g(x) - v| <= 1e-12 * v. Throws OutOfRange for v <= 0 or v > cap.
  double invert(double v) const;

  // g^{-1}(t * g(r)) - r, computed stably for any magnitude of g(r).
  // This is the radial pullback displacement used by the shadowing check.
  double pullback_shift(double r, double t) const;

  // certified derivative floor (c-1)/(2pi) * g(x - 2pi); requires
  // x >= x_growth + 2pi, else BelowThreshold.
  double gprime_lower(double x) const;

  // diagnostic: largest C with g(x) >= C * c^{x/(2pi)} on the scan window
  double lower_envelope_C() const { return envelope_C_; }

  // breakpoint x's (empty for exponential); jacobians avoid these
  const std::vector<double>& breakpoint_params() const { return bp_x_; }

 private:
  friend GrowthProfile build_growth(const GrowthSpec&, double);

  GrowthSpec spec_;
  double c_ = 0.0;
  double x_growth_ = 0.0;
  double envelope_C_ = 0.0;
  // log-linear representation: log g(x) piecewise affine over knots_
  std::vector<double> knot_x_;
  std::vector<double> knot_logg_;
  std::vector<double> slope_;  // slope_[i] on [knot_x_[i], knot_x_[i+1]]
  std::vector<double> bp_x_;
};

// Verifies (A) strict increase with decay at -inf, (B) non-decreasing
// derivative, and certifies c as the grid infimum of g(x+2pi)/g(x) over
// [x_growth, x_growth + 100], shrunk by (1 - 1e-9).
// Throws: NotIncreasing, DerivativeNotMonotone, NoGrowth, MalformedSpec.
GrowthProfile build_growth(const GrowthSpec& spec, double x_growth = 0.0);

}  // namespace genexp
