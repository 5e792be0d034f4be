#pragma once

#include <complex>
#include <vector>

#include "genexp/errors.hpp"
#include "genexp/numeric.hpp"

namespace genexp {

// A simple curve eta from -i to i, parametrized over [-pi/2, pi/2] by
// argument: one point per angle, interior strictly inside the closed right
// half-disc. Three spec variants; Polyline and SampledTable share the
// piecewise-linear representation and differ only in provenance.
struct CurvePoint {
  double y;
  Complex p;
};

struct CurveSpec {
  enum class Kind { UnitCircle, Polyline, SampledTable };

  Kind kind = Kind::UnitCircle;
  std::vector<CurvePoint> points;  // empty for UnitCircle
  int grid_samples = 4096;         // density for validation grids

  static CurveSpec unit_circle();
  static CurveSpec polyline(std::vector<CurvePoint> vertices);
  static CurveSpec sampled_table(std::vector<CurvePoint> samples);
};

// Reduction of an arbitrary parameter to the base interval plus parity:
// y = y' + p*pi with y' in [-pi/2, pi/2); p even keeps h, p odd negates.
// y' = pi/2 is kept exact when the reduction lands exactly on the top.
struct ReducedParam {
  double y_prime;
  bool odd;
};

class ValidatedCurve {
 public:
  // Constants certified at build time (conservative):
  //   h_min <= |h(y)| <= 1 on the base interval
  //   lip_lower*|dy| <= |dh| <= lip_upper*|dy|, lip_upper clamped to >= 1
  //   c_h = essential inf of the smallest singular value of [h | h']
  double h_min() const { return h_min_; }
  double lip_upper() const { return lip_upper_; }
  double lip_lower() const { return lip_lower_; }
  double c_h() const { return c_h_; }

  const CurveSpec& spec() const { return spec_; }

  // Total evaluation of the extended curve; parity handled with integer
  // arithmetic (remquo), so values at y + k*pi never drift with k.
  Complex eval(double y) const;

  // Derivative of the extension. Throws NotDifferentiableHere at polyline
  // vertex images (the unit circle is smooth everywhere).
  Complex eval_prime(double y) const;

  // Inverse of the argument function on the base interval: given
  // theta in [-pi/2, pi/2], the y' with arg h(y') = theta (tol 1e-12).
  double arg_inverse(double theta) const;

  ReducedParam reduce(double y) const;

  // Base-interval evaluation, no parity reduction; y' in [-pi/2, pi/2].
  Complex eval_base(double y_prime) const;

  // Vertex parameters in (-pi/2, pi/2) plus the endpoints, where the
  // extension may fail to be differentiable. Empty for the unit circle.
  const std::vector<double>& vertex_params() const { return vertices_; }

  bool near_vertex(double y_prime, double tol = 1e-12) const;

 private:
  friend ValidatedCurve build_curve(const CurveSpec&);

  CurveSpec spec_;
  double h_min_ = 1.0;
  double lip_upper_ = 1.0;
  double lip_lower_ = 1.0;
  double c_h_ = 1.0;
  std::vector<double> vertices_;
  bool circle_ = true;
};

// Validates the curve data (endpoints exactly -i and i, interior in the open
// right half-disc, argument strictly increasing) and certifies the constants.
// Throws: EndpointMismatch, PointOutsideHalfDisc, NonMonotoneArgument,
// DegenerateLipschitz, MalformedSpec.
ValidatedCurve build_curve(const CurveSpec& spec);

}  // namespace genexp
