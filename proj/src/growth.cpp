#include "genexp/growth.hpp"

#include <algorithm>
#include <cmath>

namespace genexp {

namespace {
constexpr double kLogCap = 690.77552789821368;  // log(1e300)
}

GrowthSpec GrowthSpec::exponential(double lambda, double beta) {
  GrowthSpec s;
  s.kind = Kind::Exponential;
  s.lambda = lambda;
  s.beta = beta;
  return s;
}

GrowthSpec GrowthSpec::log_convex_polyline(std::vector<GrowthBreakpoint> bps) {
  GrowthSpec s;
  s.kind = Kind::LogConvexPolyline;
  s.breakpoints = std::move(bps);
  return s;
}

double GrowthProfile::log_eval(double x) const {
  if (spec_.kind == GrowthSpec::Kind::Exponential) {
    return std::log(spec_.beta) + spec_.lambda * x;
  }
  const auto& xs = knot_x_;
  if (x <= xs.front()) {
    return knot_logg_.front() + slope_.front() * (x - xs.front());
  }
  if (x >= xs.back()) {
    return knot_logg_.back() + slope_.back() * (x - xs.back());
  }
  size_t lo = 0, hi = xs.size() - 1;
  while (hi - lo > 1) {
    size_t mid = (lo + hi) / 2;
    if (xs[mid] <= x) lo = mid; else hi = mid;
  }
  return knot_logg_[lo] + slope_[lo] * (x - xs[lo]);
}

double GrowthProfile::eval(double x) const { return std::exp(log_eval(x)); }

double GrowthProfile::eval_clamped(double x) const {
  const double lg = log_eval(x);
  if (lg >= kLogCap) return kGrowthCap;
  return std::exp(lg);
}

double GrowthProfile::eval_prime(double x) const {
  // d/dx exp(L(x)) = L'(x) g(x); L' is the (right) slope
  double s;
  if (spec_.kind == GrowthSpec::Kind::Exponential) {
    s = spec_.lambda;
  } else {
    const auto& xs = knot_x_;
    if (x < xs.front()) {
      s = slope_.front();
    } else if (x >= xs.back()) {
      s = slope_.back();
    } else {
      size_t lo = 0, hi = xs.size() - 1;
      while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        if (xs[mid] <= x) lo = mid; else hi = mid;
      }
      s = slope_[lo];
    }
  }
  return s * eval(x);
}

double GrowthProfile::invert(double v) const {
  if (!(v > 0.0) || v > kGrowthCap) {
    fail(ErrorCode::OutOfRange, "invert_g needs 0 < v <= 1e300");
  }
  const double target = std::log(v);
  if (spec_.kind == GrowthSpec::Kind::Exponential) {
    return (target - std::log(spec_.beta)) / spec_.lambda;
  }
  // bracket by expansion, then bisect on the monotone log
  double lo = knot_x_.front(), hi = knot_x_.back();
  double step = std::max(1.0, hi - lo);
  while (log_eval(lo) > target) {
    lo -= step;
    step *= 2;
    if (step > 1e18) fail(ErrorCode::OutOfRange, "invert_g bracket failed");
  }
  step = std::max(1.0, knot_x_.back() - knot_x_.front());
  while (log_eval(hi) < target) {
    hi += step;
    step *= 2;
    if (step > 1e18) fail(ErrorCode::OutOfRange, "invert_g bracket failed");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (log_eval(mid) < target) lo = mid; else hi = mid;
    if (hi - lo < 1e-15 * std::max(1.0, std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

double GrowthProfile::pullback_shift(double r, double t) const {
  if (!(t > 0.0)) fail(ErrorCode::OutOfRange, "pullback_shift needs t > 0");
  if (spec_.kind == GrowthSpec::Kind::Exponential) {
    return std::log(t) / spec_.lambda;
  }
  if (r >= knot_x_.back()) {
    // affine log regime on the right; constant slope, closed form
    const double shift = std::log(t) / slope_.back();
    if (r + shift >= knot_x_.back()) return shift;
  }
  // moderate r: g(r) representable, solve directly
  const double lg = log_eval(r) + std::log(t);
  if (lg >= kLogCap) {
    // target value beyond cap but r below the last knot cannot happen for
    // sane profiles; fall back to the affine form anyway
    return std::log(t) / slope_.back();
  }
  return invert(std::exp(lg)) - r;
}

double GrowthProfile::gprime_lower(double x) const {
  if (x < x_growth_ + kTwoPi) {
    fail(ErrorCode::BelowThreshold,
         "gprime_lower requires x >= x_growth + 2pi");
  }
  return (c_ - 1.0) / kTwoPi * eval(x - kTwoPi);
}

GrowthProfile build_growth(const GrowthSpec& spec, double x_growth) {
  GrowthProfile p;
  p.spec_ = spec;
  p.x_growth_ = x_growth;

  if (spec.kind == GrowthSpec::Kind::Exponential) {
    if (!(spec.lambda > 0.0)) {
      fail(ErrorCode::NotIncreasing, "exponential growth needs lambda > 0");
    }
    if (!(spec.beta > 0.0)) {
      fail(ErrorCode::MalformedSpec, "exponential growth needs beta > 0");
    }
  } else {
    const auto& bps = spec.breakpoints;
    if (bps.size() < 2) {
      fail(ErrorCode::MalformedSpec, "need at least two breakpoints");
    }
    for (const auto& b : bps) {
      if (!(b.g > 0.0)) {
        fail(ErrorCode::MalformedSpec, "breakpoint values must be positive");
      }
    }
    for (size_t i = 0; i + 1 < bps.size(); ++i) {
      if (!(bps[i].x < bps[i + 1].x)) {
        fail(ErrorCode::MalformedSpec,
             "breakpoint abscissae must be strictly increasing");
      }
    }
    p.knot_x_.reserve(bps.size());
    p.knot_logg_.reserve(bps.size());
    for (const auto& b : bps) {
      p.knot_x_.push_back(b.x);
      p.knot_logg_.push_back(std::log(b.g));
      p.bp_x_.push_back(b.x);
    }
    for (size_t i = 0; i + 1 < bps.size(); ++i) {
      const double s = (p.knot_logg_[i + 1] - p.knot_logg_[i]) /
                       (p.knot_x_[i + 1] - p.knot_x_[i]);
      p.slope_.push_back(s);
    }
    if (!(p.slope_.front() > 0.0)) {
      // leftmost log-slope must be positive for strict increase and decay
      fail(ErrorCode::NotIncreasing,
           "leftmost log-slope must be positive (g must grow and decay at "
           "-inf)");
    }
    for (size_t i = 0; i + 1 < p.slope_.size(); ++i) {
      if (p.slope_[i + 1] < p.slope_[i] * (1.0 - 1e-12)) {
        fail(ErrorCode::DerivativeNotMonotone,
             "log-slopes must be non-decreasing (g' monotone)");
      }
    }
  }

  // grid verification of (A)/(B) and certification of c
  const int n = 4096;
  const double lo = x_growth, hi = x_growth + 100.0;
  double prev = p.log_eval(lo);
  double cinf = 1e300;
  double env = 1e300;
  for (int i = 1; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    const double lg = p.log_eval(x);
    if (!(lg > prev)) {
      fail(ErrorCode::NotIncreasing, "g is not strictly increasing");
    }
    prev = lg;
  }
  prev = p.eval_prime(lo);
  for (int i = 1; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    const double d = p.eval_prime(x);
    if (d < prev * (1.0 - 1e-12)) {
      fail(ErrorCode::DerivativeNotMonotone, "g' decreases on the scan grid");
    }
    prev = d;
  }
  for (int i = 0; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    const double ratio_log = p.log_eval(x + kTwoPi) - p.log_eval(x);
    cinf = std::min(cinf, ratio_log);
  }
  const double c = std::exp(cinf) * (1.0 - 1e-9);
  if (!(c > 1.0)) {
    fail(ErrorCode::NoGrowth,
         "growth constant c = " + std::to_string(c) + " does not exceed 1");
  }
  p.c_ = c;

  // diagnostic envelope constant: inf of g(x) * c^{-x/2pi} over one period
  const double logc = std::log(c);
  for (int i = 0; i <= 256; ++i) {
    const double x = x_growth + kTwoPi * i / 256.0;
    env = std::min(env, p.log_eval(x) - logc * x / kTwoPi);
  }
  p.envelope_C_ = std::exp(env);

  return p;
}

}  // namespace genexp
