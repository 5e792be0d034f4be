#include "genexp/curve.hpp"

#include <algorithm>
#include <cmath>

namespace genexp {

namespace {

constexpr double kSafety = 1.0 - 1e-6;  // shrink for grid-derived lower bounds
// h_min comes from exact closed-form segment minima, so it only needs a
// rounding guard; a larger shrink would leak into the shadowing-square
// recursion r_{k+1} = h_min g(r_k) and spoil its asymptotic containment.
constexpr double kExactSafety = 1.0 - 1e-12;

double cross(Complex a, Complex b) {
  return a.real() * b.imag() - a.imag() * b.real();
}

double dot(Complex a, Complex b) {
  return a.real() * b.real() + a.imag() * b.imag();
}

// Exact minimum of |A + t(B-A)| over t in [0, 1].
double segment_min_modulus(Complex a, Complex b) {
  const Complex d = b - a;
  const double dd = std::norm(d);
  if (dd == 0.0) return std::abs(a);
  double t = -dot(a, d) / dd;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(a + t * d);
}

// Smallest singular value of the 2x2 matrix with columns u, v.
double sigma_min(Complex u, Complex v) {
  // columns (u1,u2), (v1,v2): use the E/F/G/H form
  const double a = u.real(), c = u.imag(), b = v.real(), d = v.imag();
  const double e = (a + d) / 2, f = (a - d) / 2;
  const double g = (c + b) / 2, h = (c - b) / 2;
  const double q = std::hypot(e, h), r = std::hypot(f, g);
  return std::abs(q - r);
}

}  // namespace

CurveSpec CurveSpec::unit_circle() {
  CurveSpec s;
  s.kind = Kind::UnitCircle;
  return s;
}

CurveSpec CurveSpec::polyline(std::vector<CurvePoint> vertices) {
  CurveSpec s;
  s.kind = Kind::Polyline;
  s.points = std::move(vertices);
  return s;
}

CurveSpec CurveSpec::sampled_table(std::vector<CurvePoint> samples) {
  CurveSpec s;
  s.kind = Kind::SampledTable;
  s.points = std::move(samples);
  return s;
}

ReducedParam ValidatedCurve::reduce(double y) const {
  int quo = 0;
  double yp = std::remquo(y, kPi, &quo);  // exact; yp in [-pi/2, pi/2]
  bool odd = (quo & 1) != 0;
  if (yp == kHalfPi) {
    // top of the reduction: keep y' = pi/2 (value agrees either way since
    // h(pi/2) = i = -h(-pi/2); this keeps the convention explicit)
    return {yp, odd};
  }
  if (yp == -kHalfPi && y > 0) {
    // reductions from above that land exactly on the bottom correspond to
    // the top of the previous period
    return {kHalfPi, !odd};
  }
  return {yp, odd};
}

Complex ValidatedCurve::eval_base(double y_prime) const {
  if (circle_) {
    return {std::cos(y_prime), std::sin(y_prime)};
  }
  const auto& pts = spec_.points;
  if (y_prime <= pts.front().y) return pts.front().p;
  if (y_prime >= pts.back().y) return pts.back().p;
  // binary search for the containing segment
  size_t lo = 0, hi = pts.size() - 1;
  while (hi - lo > 1) {
    size_t mid = (lo + hi) / 2;
    if (pts[mid].y <= y_prime) lo = mid; else hi = mid;
  }
  const double t = (y_prime - pts[lo].y) / (pts[hi].y - pts[lo].y);
  return pts[lo].p + t * (pts[hi].p - pts[lo].p);
}

Complex ValidatedCurve::eval(double y) const {
  const ReducedParam r = reduce(y);
  const Complex v = eval_base(r.y_prime);
  return r.odd ? -v : v;
}

bool ValidatedCurve::near_vertex(double y_prime, double tol) const {
  for (double v : vertices_) {
    if (std::abs(y_prime - v) <= tol) return true;
  }
  return false;
}

Complex ValidatedCurve::eval_prime(double y) const {
  const ReducedParam r = reduce(y);
  if (circle_) {
    const Complex d{-std::sin(r.y_prime), std::cos(r.y_prime)};
    return r.odd ? -d : d;
  }
  if (near_vertex(r.y_prime)) {
    fail(ErrorCode::NotDifferentiableHere,
         "curve parameter " + std::to_string(y) + " reduces to a vertex");
  }
  const auto& pts = spec_.points;
  size_t lo = 0, hi = pts.size() - 1;
  while (hi - lo > 1) {
    size_t mid = (lo + hi) / 2;
    if (pts[mid].y <= r.y_prime) lo = mid; else hi = mid;
  }
  const Complex slope = (pts[hi].p - pts[lo].p) / (pts[hi].y - pts[lo].y);
  return r.odd ? -slope : slope;
}

double ValidatedCurve::arg_inverse(double theta) const {
  if (theta < -kHalfPi - 1e-12 || theta > kHalfPi + 1e-12) {
    fail(ErrorCode::OutOfRange, "arg_inverse needs theta in [-pi/2, pi/2]");
  }
  if (theta >= kHalfPi) return kHalfPi;
  if (theta <= -kHalfPi) return -kHalfPi;
  if (circle_) return theta;  // arg h(y) = y exactly
  double lo = -kHalfPi, hi = kHalfPi;
  // arg h is strictly increasing (validated); plain bisection to 1e-12
  for (int i = 0; i < 64 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    const Complex p = eval_base(mid);
    if (std::atan2(p.imag(), p.real()) < theta) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

// Ratio |h(u) - h(v)| / |u - v| for the pairwise scans.
double pair_ratio(const ValidatedCurve& c, double u, double v) {
  return std::abs(c.eval_base(u) - c.eval_base(v)) / std::abs(u - v);
}

// Nested local refinement of the pairwise ratio around a starting pair.
double refine_pair_min(const ValidatedCurve& c, double u0, double v0,
                       double window) {
  double bu = u0, bv = v0;
  double best = pair_ratio(c, bu, bv);
  for (int round = 0; round < 24; ++round) {
    const double r = window;
    bool improved = false;
    for (int i = -4; i <= 4; ++i) {
      for (int j = -4; j <= 4; ++j) {
        double u = std::clamp(bu + i * r / 4.0, -kHalfPi, kHalfPi);
        double v = std::clamp(bv + j * r / 4.0, -kHalfPi, kHalfPi);
        if (std::abs(u - v) < 1e-9) continue;
        double val = pair_ratio(c, u, v);
        if (val < best) {
          best = val;
          bu = u;
          bv = v;
          improved = true;
        }
      }
    }
    window *= improved ? 0.6 : 0.35;
    if (window < 1e-12) break;
  }
  return best;
}

// Golden-section refinement of a 1-d function minimum inside [lo, hi].
template <typename F>
double golden_min(F f, double lo, double hi, int iters = 80) {
  const double gr = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - gr * (b - a); f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + gr * (b - a); f2 = f(x2);
    }
  }
  return std::min(f1, f2);
}

}  // namespace

ValidatedCurve build_curve(const CurveSpec& spec) {
  ValidatedCurve c;
  c.spec_ = spec;
  c.circle_ = (spec.kind == CurveSpec::Kind::UnitCircle);

  if (spec.grid_samples < 16) {
    fail(ErrorCode::MalformedSpec, "grid_samples must be at least 16");
  }

  if (!c.circle_) {
    const auto& pts = spec.points;
    if (pts.size() < 2) {
      fail(ErrorCode::MalformedSpec, "need at least two curve points");
    }
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      if (!(pts[i].y < pts[i + 1].y)) {
        fail(ErrorCode::MalformedSpec,
             "curve parameters must be strictly increasing");
      }
    }
    const double endpoint_tol = 1e-15;
    if (std::abs(pts.front().y + kHalfPi) > endpoint_tol ||
        std::abs(pts.front().p - Complex{0.0, -1.0}) > endpoint_tol ||
        std::abs(pts.back().y - kHalfPi) > endpoint_tol ||
        std::abs(pts.back().p - Complex{0.0, 1.0}) > endpoint_tol) {
      fail(ErrorCode::EndpointMismatch,
           "curve must run from (-pi/2, -i) to (pi/2, i) exactly");
    }
    for (size_t i = 1; i + 1 < pts.size(); ++i) {
      const Complex p = pts[i].p;
      if (!(p.real() > 0.0)) {
        fail(ErrorCode::PointOutsideHalfDisc,
             "interior curve point has non-positive real part");
      }
      if (std::abs(p) > 1.0 + 1e-15) {
        fail(ErrorCode::PointOutsideHalfDisc,
             "interior curve point leaves the unit disc");
      }
    }
    // exact monotone-argument check: along each segment d(arg)/dt has the
    // constant sign of cross(p_j, p_{j+1})
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      if (!(cross(pts[i].p, pts[i + 1].p) > 0.0)) {
        fail(ErrorCode::NonMonotoneArgument,
             "argument of h is not strictly increasing across segment " +
                 std::to_string(i));
      }
    }
    for (size_t i = 0; i < pts.size(); ++i) c.vertices_.push_back(pts[i].y);
  }

  // dense-grid sanity pass (exact checks above make this redundant for
  // polylines but it also covers the circle and sampled tables)
  const int n = spec.grid_samples;
  double prev_arg = -kHalfPi - 1e-9;
  for (int i = 0; i <= n; ++i) {
    const double y = -kHalfPi + (kPi * i) / n;
    const Complex p = c.eval_base(y);
    const double m = std::abs(p);
    if (m > 1.0 + 1e-12) {
      fail(ErrorCode::PointOutsideHalfDisc, "curve leaves the unit disc");
    }
    if (i > 0 && i < n && !(p.real() > 0.0)) {
      fail(ErrorCode::PointOutsideHalfDisc,
           "curve leaves the open right half-plane");
    }
    const double a = std::atan2(p.imag(), p.real());
    if (a < prev_arg - 1e-12) {
      fail(ErrorCode::NonMonotoneArgument, "argument of h decreases");
    }
    prev_arg = a;
  }

  // --- h_min: exact per-segment minima (polyline), 1 for the circle
  double hmin = 1.0;
  if (!c.circle_) {
    const auto& pts = spec.points;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      hmin = std::min(hmin, segment_min_modulus(pts[i].p, pts[i + 1].p));
    }
  }
  if (hmin < 1e-9) {
    fail(ErrorCode::DegenerateLipschitz, "curve passes through the origin");
  }
  c.h_min_ = hmin * kExactSafety;

  // --- Lipschitz constants
  if (c.circle_) {
    c.lip_upper_ = 1.0;
    c.lip_lower_ = (2.0 / kPi) * kSafety;  // chord/arc min at |dy| = pi
  } else {
    const auto& pts = spec.points;
    double up = 0.0, diag = 1e300;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      const double s =
          std::abs(pts[i + 1].p - pts[i].p) / (pts[i + 1].y - pts[i].y);
      up = std::max(up, s);
      diag = std::min(diag, s);
    }
    c.lip_upper_ = std::max(1.0, up);  // L >= 1 by convention downstream

    // pairwise infimum: coarse grid + exact vertex pairs + local refinement
    const int pg = 384;
    double best = diag;
    double bu = 0, bv = 0;
    bool have_pair = false;
    std::vector<double> ys(pg + 1);
    for (int i = 0; i <= pg; ++i) ys[i] = -kHalfPi + (kPi * i) / pg;
    for (size_t i = 0; i < pts.size(); ++i) {
      for (size_t j = i + 1; j < pts.size(); ++j) {
        ys.push_back(pts[i].y);
        ys.push_back(pts[j].y);
      }
    }
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    for (size_t i = 0; i < ys.size(); ++i) {
      for (size_t j = i + 1; j < ys.size(); ++j) {
        if (ys[j] - ys[i] < 1e-9) continue;
        const double r = pair_ratio(c, ys[i], ys[j]);
        if (r < best) { best = r; bu = ys[i]; bv = ys[j]; have_pair = true; }
      }
    }
    if (have_pair) {
      best = std::min(best, refine_pair_min(c, bu, bv, kPi / pg));
    }
    if (best < 1e-9) {
      fail(ErrorCode::DegenerateLipschitz, "lower Lipschitz bound degenerate");
    }
    c.lip_lower_ = best * kSafety;
  }

  // --- c_h: smallest singular value of [h | h'] over differentiability points
  if (c.circle_) {
    c.c_h_ = 1.0 * kSafety;  // rotation matrix: both singular values are 1
  } else {
    const auto& pts = spec.points;
    double ch = 1e300;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      const Complex a = pts[i].p, b = pts[i + 1].p;
      const Complex slope = (b - a) / (pts[i + 1].y - pts[i].y);
      auto f = [&](double t) { return sigma_min(a + t * (b - a), slope); };
      const int sg = 1024;
      double seg_best = 1e300;
      double tb = 0.0;
      for (int k = 0; k <= sg; ++k) {
        const double t = double(k) / sg;
        const double v = f(t);
        if (v < seg_best) { seg_best = v; tb = t; }
      }
      const double w = 2.0 / sg;
      seg_best = std::min(
          seg_best,
          golden_min(f, std::max(0.0, tb - w), std::min(1.0, tb + w)));
      ch = std::min(ch, seg_best);
    }
    if (ch < 1e-12) {
      fail(ErrorCode::DegenerateLipschitz,
           "columns h, h' become parallel; expansion estimate degenerate");
    }
    c.c_h_ = ch * kSafety;
  }

  return c;
}

}  // namespace genexp
