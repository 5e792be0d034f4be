#pragma once

#include <optional>

#include "genexp/curve.hpp"
#include "genexp/growth.hpp"

namespace genexp {

// 2x2 real Jacobian, column-major meaning: d(Z1,Z2)/d(x,y).
struct Mat2 {
  double a, b;  // row 1: dZ1/dx, dZ1/dy
  double c, d;  // row 2: dZ2/dx, dZ2/dy

  double det() const { return a * d - b * c; }
  double sigma_min() const;  // smallest singular value
  double op_norm() const;    // largest singular value
};

struct DerivedConstants {
  double mu = 0.0;     // certified expansion floor (the build target)
  double M = 0.0;      // expansion threshold: sigma_min(DZ) >= mu for Re >= M
  double m = 0.0;      // contraction threshold: |DZ| <= 1/2 for Re <= m
  double a_min = 0.0;  // max{0, g(M) - m, g(M) - M}
  double L = 1.0;      // upper Lipschitz constant of h (>= 1)
  double h_min = 0.0;
  double c_h = 0.0;
  double c = 0.0;                // growth constant of g
  double K = 0.0;                // head-start constant, a multiple of 2pi
  std::optional<Complex> xi;     // attracting fixed point, when certified
};

enum class Mode { Certified, Uncertified };

// The map f(z) = g(Re z) * h(Im z) - a as a validated object. In certified
// mode construction proves the hyperbolic-like setup (c > 1/h_min, expansion
// beyond M, contraction below m, a > a_min); uncertified mode computes the
// same constants best-effort and marks the result.
class GenExpMap {
 public:
  static GenExpMap build(ValidatedCurve curve, GrowthProfile growth, double a,
                         double mu_target = 2.0, Mode mode = Mode::Certified);

  const ValidatedCurve& curve() const { return curve_; }
  const GrowthProfile& growth() const { return growth_; }
  const DerivedConstants& constants() const { return k_; }
  double a() const { return a_; }
  bool certified() const { return certified_; }

  // Z(z) = g(Re z) h(Im z); the radial factor saturates at 1e300 so forward
  // orbits stay finite (documented overflow policy).
  Complex eval_Z(Complex z) const;
  Complex eval_f(Complex z) const { return eval_Z(z) - a_; }

  // Jacobian of Z at a differentiability point (throws NotDifferentiableHere
  // at curve vertex images and growth breakpoints).
  Mat2 jacobian(Complex z) const;

  // Open set H = f(T_0): polar test Re(w+a) > 0 and |w+a| > g(M)|h(y')|
  // where y' matches the argument of w + a.
  bool in_H(Complex w) const;
  // Closure membership with 1e-12 relative tolerance on the boundary curve.
  bool in_H_closure(Complex w) const;

  // Attracting fixed point by iteration from m (certified only; throws
  // NotCertified otherwise, NoConvergence if the residual does not settle).
  Complex find_fixed_point() const;

 private:
  ValidatedCurve curve_;
  GrowthProfile growth_;
  double a_ = 0.0;
  DerivedConstants k_;
  bool certified_ = false;
};

// Constant derivation on its own (used by build, exposed for tests):
// M by bisection of the monotone condition c_h min{g, g'} >= mu_target
// (rounded up), m by bisection of g + g' <= 1/(2(1+L)) (rounded down),
// a_min from the formula. Throws CertificationFailed when c <= 1/h_min in
// certified mode, NoSuchM when no threshold exists in [-1000, 1000].
DerivedConstants compute_constants(const ValidatedCurve& curve,
                                   const GrowthProfile& growth,
                                   double mu_target, Mode mode);

// Smallest q >= 1 (K = 2*pi*q) satisfying the two head-start inequalities
//   (h_min c^q / 2 - 1 - K) * 2a >= a + pi
//   (h_min c^q g(M) / (2a) - K) * M >= 3a + pi
// q is capped at 64 (NoConvergence beyond).
double compute_headstart_K(const ValidatedCurve& curve,
                           const GrowthProfile& growth, double a,
                           const DerivedConstants& k);

}  // namespace genexp
