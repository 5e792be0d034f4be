#include "genexp/map.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace genexp {

double Mat2::sigma_min() const {
  const double e = (a + d) / 2, f = (a - d) / 2;
  const double g = (c + b) / 2, h = (c - b) / 2;
  return std::abs(std::hypot(e, h) - std::hypot(f, g));
}

double Mat2::op_norm() const {
  const double e = (a + d) / 2, f = (a - d) / 2;
  const double g = (c + b) / 2, h = (c - b) / 2;
  return std::hypot(e, h) + std::hypot(f, g);
}

Complex GenExpMap::eval_Z(Complex z) const {
  const double gx = growth_.eval_clamped(z.real());
  const Complex hy = curve_.eval(z.imag());
  return gx * hy;
}

Mat2 GenExpMap::jacobian(Complex z) const {
  const ReducedParam r = curve_.reduce(z.imag());
  if (curve_.near_vertex(r.y_prime, 1e-12)) {
    fail(ErrorCode::NotDifferentiableHere,
         "Im z reduces to a curve vertex");
  }
  for (double bx : growth_.breakpoint_params()) {
    if (std::abs(z.real() - bx) <= 1e-12) {
      fail(ErrorCode::NotDifferentiableHere,
           "Re z sits on a growth breakpoint");
    }
  }
  const double g = growth_.eval(z.real());
  const double gp = growth_.eval_prime(z.real());
  const Complex h = curve_.eval(z.imag());
  const Complex hp = curve_.eval_prime(z.imag());
  return Mat2{gp * h.real(), g * hp.real(), gp * h.imag(), g * hp.imag()};
}

bool GenExpMap::in_H(Complex w) const {
  const Complex zeta = w + a_;
  if (!(zeta.real() > 0.0)) return false;
  const double theta = std::atan2(zeta.imag(), zeta.real());
  const double yp = curve_.arg_inverse(theta);
  const double boundary = growth_.eval(k_.M) * std::abs(curve_.eval_base(yp));
  return std::abs(zeta) > boundary;
}

bool GenExpMap::in_H_closure(Complex w) const {
  const Complex zeta = w + a_;
  const double az = std::abs(zeta);
  if (az == 0.0) return false;
  if (zeta.real() < -1e-12 * az) return false;
  const double theta =
      std::clamp(std::atan2(zeta.imag(), zeta.real()), -kHalfPi, kHalfPi);
  const double yp = curve_.arg_inverse(theta);
  const double boundary = growth_.eval(k_.M) * std::abs(curve_.eval_base(yp));
  return az >= boundary * (1.0 - 1e-12);
}

namespace {

constexpr double kScanLo = -1000.0, kScanHi = 1000.0, kScanTol = 1e-9;

}  // namespace

DerivedConstants compute_constants(const ValidatedCurve& curve,
                                   const GrowthProfile& growth,
                                   double mu_target, Mode mode) {
  if (!(mu_target > 1.0)) {
    fail(ErrorCode::ValidationError, "mu_target must exceed 1");
  }
  DerivedConstants k;
  k.mu = mu_target;
  k.h_min = curve.h_min();
  k.c_h = curve.c_h();
  k.L = curve.lip_upper();
  k.c = growth.c();

  if (k.c * k.h_min <= 1.0 && mode == Mode::Certified) {
    fail(ErrorCode::CertificationFailed,
         "growth constant c = " + std::to_string(k.c) +
             " does not exceed 1/h_min = " + std::to_string(1.0 / k.h_min));
  }

  // expansion threshold: c_h * min{g, g'} >= mu from M on. Both g and g'
  // are non-decreasing, so the condition is monotone in x.
  auto expansion_ok = [&](double x) {
    return k.c_h * std::min(growth.eval(x), growth.eval_prime(x)) >= k.mu;
  };
  if (!expansion_ok(kScanHi)) {
    fail(ErrorCode::NoSuchM, "no expansion threshold below x = 1000");
  }
  if (expansion_ok(kScanLo)) {
    k.M = kScanLo;
  } else {
    double lo = kScanLo, hi = kScanHi;
    while (hi - lo > kScanTol) {
      const double mid = 0.5 * (lo + hi);
      if (expansion_ok(mid)) hi = mid; else lo = mid;
    }
    k.M = hi + kScanTol;  // round up: condition certified for x >= M
  }
  // certified reasoning leans on the growth constraint only past x_growth
  k.M = std::max(k.M, growth.x_growth());

  // contraction threshold: g + g' <= 1/(2(1+L)) up to m (monotone again)
  const double thr = 1.0 / (2.0 * (1.0 + k.L));
  auto contraction_ok = [&](double x) {
    return growth.eval(x) + growth.eval_prime(x) <= thr;
  };
  if (!contraction_ok(kScanLo)) {
    fail(ErrorCode::NoSuchM, "no contraction threshold above x = -1000");
  }
  if (contraction_ok(kScanHi)) {
    k.m = kScanHi;
  } else {
    double lo = kScanLo, hi = kScanHi;
    while (hi - lo > kScanTol) {
      const double mid = 0.5 * (lo + hi);
      if (contraction_ok(mid)) lo = mid; else hi = mid;
    }
    k.m = lo - kScanTol;  // round down
  }

  const double gM = growth.eval(k.M);
  k.a_min = std::max({0.0, gM - k.m, gM - k.M});
  return k;
}

double compute_headstart_K(const ValidatedCurve& curve,
                           const GrowthProfile& growth, double a,
                           const DerivedConstants& k) {
  const double gM = growth.eval(k.M);
  const double hmin = curve.h_min();
  for (int q = 1; q <= 64; ++q) {
    const double K = kTwoPi * q;
    const double cq = std::pow(k.c, q);
    const bool far = (0.5 * hmin * cq - 1.0 - K) * 2.0 * a >= a + kPi;
    const bool near =
        (hmin * cq * gM / (2.0 * a) - K) * k.M >= 3.0 * a + kPi;
    if (far && near) return K;
  }
  fail(ErrorCode::NoConvergence, "head-start search exhausted at q = 64");
}

GenExpMap GenExpMap::build(ValidatedCurve curve, GrowthProfile growth,
                           double a, double mu_target, Mode mode) {
  if (!(a > 0.0)) {
    fail(ErrorCode::ValidationError, "a must be positive");
  }
  GenExpMap map;
  map.k_ = compute_constants(curve, growth, mu_target, mode);
  map.curve_ = std::move(curve);
  map.growth_ = std::move(growth);
  map.a_ = a;

  const bool growth_ok = map.k_.c * map.k_.h_min > 1.0;
  const bool a_ok = a > map.k_.a_min;
  if (mode == Mode::Certified && !a_ok) {
    fail(ErrorCode::NotCertified,
         "a = " + std::to_string(a) + " does not exceed a_min = " +
             std::to_string(map.k_.a_min) +
             " (pass uncertified mode to proceed without guarantees)");
  }
  map.certified_ = growth_ok && a_ok;
  map.k_.K = compute_headstart_K(map.curve_, map.growth_, a, map.k_);

  if (map.certified_) {
    map.k_.xi = map.find_fixed_point();
  } else {
    // best effort: keep xi only if the iteration happens to settle
    try {
      Complex z{map.k_.m, 0.0};
      for (int i = 0; i < 400; ++i) {
        const Complex next = map.eval_f(z);
        if (std::abs(next - z) <= 1e-12) {
          if (std::abs(map.eval_f(next) - next) <= 1e-9) map.k_.xi = next;
          break;
        }
        z = next;
        if (!(std::abs(z) < 1e6)) break;
      }
    } catch (const Error&) {
    }
  }
  return map;
}

Complex GenExpMap::find_fixed_point() const {
  if (!certified_) {
    fail(ErrorCode::NotCertified,
         "fixed point is only guaranteed for certified maps");
  }
  Complex z{k_.m, 0.0};
  for (int i = 0; i < 200; ++i) {
    const Complex next = eval_f(z);
    if (std::abs(next - z) <= 1e-12) {
      if (!(std::abs(eval_f(next) - next) <= 1e-9)) {
        fail(ErrorCode::NoConvergence, "fixed-point residual too large");
      }
      return next;
    }
    z = next;
  }
  fail(ErrorCode::NoConvergence, "fixed-point iteration did not settle");
}

}  // namespace genexp
