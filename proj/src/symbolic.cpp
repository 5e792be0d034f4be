#include "genexp/symbolic.hpp"

#include <algorithm>
#include <cmath>

#include "genexp/pullback.hpp"

namespace genexp {

namespace {

constexpr double kGridStep = kPi / 32.0;
// beyond this, round(Im/2pi) is no longer an exact integer count
constexpr double kMaxTractIndex = 4.5e15;

}  // namespace

TractResult tract_of(const GenExpMap& map, Complex z) {
  if (!(z.real() > map.constants().M)) {
    return {TractResult::Status::LeftOfM, 0};
  }
  const double ky = std::round(z.imag() / kTwoPi);
  if (std::abs(ky) > kMaxTractIndex) {
    // strip boundaries are below double spacing out here; refuse to resolve
    return {TractResult::Status::Boundary, 0};
  }
  const long long k = static_cast<long long>(ky);
  const double dist = std::abs(z.imag() - kTwoPi * ky);
  if (dist < kHalfPi) return {TractResult::Status::InTract, k};
  if (dist > kHalfPi) return {TractResult::Status::GapStrip, 0};
  return {TractResult::Status::Boundary, 0};
}

AddressPrefix partial_address(const GenExpMap& map, Complex z, std::size_t N) {
  AddressPrefix out;
  Complex w = z;
  for (std::size_t n = 0; n < N; ++n) {
    const TractResult tr = tract_of(map, w);
    if (!tr.in_tract()) {
      out.left_at = n;
      return out;
    }
    out.entries.push_back(tr.k);
    w = map.eval_f(w);
  }
  out.complete = true;
  return out;
}

GBoundedness is_g_bounded(const GenExpMap& map, const ExternalAddress& addr,
                          std::size_t N, double x_max) {
  if (N < 1) fail(ErrorCode::ValidationError, "need N >= 1");
  const GrowthProfile& g = map.growth();
  const double target = kTwoPi * static_cast<double>(addr.max_abs_entry());

  // A witness x_0 >= 2pi sup|s| with g(x_0) > x_0 settles every n at once:
  // the g-orbit of x_0 increases, so g^n(x_0) >= x_0 >= 2pi|s_n|.
  const long long j0 =
      static_cast<long long>(std::ceil(target / kGridStep - 1e-9));
  for (long long j = std::max(0LL, j0);; ++j) {
    const double x0 = static_cast<double>(j) * kGridStep;
    if (x0 > x_max) break;
    if (g.eval_clamped(x0) > x0) {
      return {GBoundedness::Verdict::Bounded, x0, 0};
    }
  }

  // Fallback: test the defining inequality directly for n < N, promoting to
  // a proof if the orbit enters the monotone regime above the sup.
  for (long long j = 0;; ++j) {
    const double x0 = static_cast<double>(j) * kGridStep;
    if (x0 > x_max) break;
    double orbit = x0;
    for (std::size_t n = 0; n < N; ++n) {
      if (kTwoPi * static_cast<double>(std::llabs(addr.entry(n))) > orbit) {
        break;
      }
      if (orbit >= target && g.eval_clamped(orbit) > orbit) {
        return {GBoundedness::Verdict::Bounded, x0, 0};
      }
      orbit = g.eval_clamped(orbit);
    }
  }
  return {GBoundedness::Verdict::Inconclusive, 0.0, 0};
}

ShadowParams build_shadow_params(const GenExpMap& map,
                                 const ExternalAddress& addr, std::size_t N) {
  const DerivedConstants& k = map.constants();
  const double sup = static_cast<double>(addr.max_abs_entry());
  const GBoundedness gb = is_g_bounded(
      map, addr, std::max<std::size_t>(N, 8),
      std::max(1000.0, kTwoPi * sup + 10.0));
  if (gb.verdict != GBoundedness::Verdict::Bounded) {
    fail(ErrorCode::NotGBounded,
         "no g-boundedness witness for " + addr.format());
  }

  ShadowParams p;
  p.addr = addr;
  p.depth = N;

  const double ratio2 = (k.c / k.h_min) * (k.c / k.h_min);
  p.kappa = std::min(0.5 * std::sqrt(ratio2 - 1.0), 1e3);
  p.delta = 0.5 * (std::sqrt(ratio2 - p.kappa * p.kappa) - 1.0);

  // anchored inequality max{3pi/2, 4pi|s_n|} <= kappa g~^n(x) for n < N
  const GrowthProfile& g = map.growth();
  const auto g_tilde = [&](double x) {
    return std::min(kGrowthCap, k.h_min * g.eval_clamped(x));
  };
  p.x0pp = -1.0;
  for (long long j = 0;; ++j) {
    const double x = static_cast<double>(j) * kGridStep;
    if (x > 1e6) break;
    double orbit = x;
    bool ok = true;
    for (std::size_t n = 0; n < N; ++n) {
      const double need = std::max(
          1.5 * kPi,
          2.0 * kTwoPi * static_cast<double>(std::llabs(addr.entry(n))));
      if (need > p.kappa * orbit) {
        ok = false;
        break;
      }
      orbit = g_tilde(orbit);
    }
    if (ok) {
      p.x0pp = x;
      break;
    }
  }
  if (p.x0pp < 0.0) {
    fail(ErrorCode::NoConvergence, "no anchored-inequality grid point");
  }

  p.r0 = std::max({k.M, p.x0pp, (kTwoPi + map.a()) / p.delta,
                   g.eval(k.M) - map.a()}) +
         1.0;

  p.r_seq.resize(N + 1);
  p.squares.resize(N + 1);
  p.r_seq[0] = p.r0;
  for (std::size_t n = 0; n <= N; ++n) {
    if (n > 0) p.r_seq[n] = g_tilde(p.r_seq[n - 1]);
    const double y =
        (4.0 * static_cast<double>(addr.entry(n)) - 1.0) * kHalfPi;
    p.squares[n] = Complex{p.r_seq[n], y};
  }
  return p;
}

namespace {

// boundary of the closed square [0,2pi]^2 in (u,v) offsets, 256 per side
std::vector<std::pair<double, double>> square_boundary() {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(4 * 256);
  const int n = 256;
  for (int j = 0; j < n; ++j) {
    const double s = kTwoPi * static_cast<double>(j) / n;
    pts.emplace_back(s, 0.0);
    pts.emplace_back(kTwoPi, s);
    pts.emplace_back(kTwoPi - s, kTwoPi);
    pts.emplace_back(0.0, kTwoPi - s);
  }
  return pts;
}

}  // namespace

std::vector<ShadowLevel> verify_shadowing(const GenExpMap& map,
                                          const ShadowParams& params,
                                          std::size_t N) {
  if (N > params.depth) {
    fail(ErrorCode::OutOfRange, "params carry fewer levels than requested");
  }
  const DerivedConstants& k = map.constants();
  const GrowthProfile& g = map.growth();
  const ValidatedCurve& curve = map.curve();
  const double a = map.a();
  const auto boundary = square_boundary();
  const double tol = 1e-9;

  std::vector<ShadowLevel> report(N);
  for (std::size_t n = 0; n < N; ++n) {
    ShadowLevel& lvl = report[n];
    const double rn = params.r_seq[n];
    const double rn1 = params.r_seq[n + 1];
    const double Y1 = params.squares[n + 1].imag();
    const long long sn = params.addr.entry(n);
    lvl.scale_free = rn1 > 1e12;

    double dx_min = 1e308, dx_max = -1e308;
    bool all_in = true;
    for (const auto& [u, v] : boundary) {
      double dx;
      if (lvl.scale_free) {
        // relative offsets of zeta = w + a from r_{n+1}; at this scale the
        // square's absolute position may sit at the growth cap, but the
        // displacement of the pullback from r_n stays well conditioned
        const double q1 = (u + a) / rn1;
        const double q2 = (Y1 + v) / rn1;
        const double rho = std::hypot(1.0 + q1, q2) - 1.0;
        if (!(std::log(rn1) + std::log1p(rho) >
              std::log(g.eval(k.M)) )) {
          ++lvl.outside_H;
          continue;
        }
        const double yp = curve.arg_inverse(std::atan2(q2, 1.0 + q1));
        const double t =
            k.h_min * (1.0 + rho) / std::abs(curve.eval_base(yp));
        dx = g.pullback_shift(rn, t);
      } else {
        const Complex w{rn1 + u, Y1 + v};
        if (!map.in_H_closure(w)) {
          ++lvl.outside_H;
          continue;
        }
        const Complex z = inverse_branch(map, sn, w);
        dx = z.real() - rn;
        const double dy = z.imag() - params.squares[n].imag();
        if (dy < -tol || dy > kTwoPi + tol) all_in = false;
      }
      dx_min = std::min(dx_min, dx);
      dx_max = std::max(dx_max, dx);
      if (dx < -tol || dx > kTwoPi + tol) all_in = false;
    }
    lvl.dx_min = dx_min;
    lvl.dx_max = dx_max;
    lvl.pullback_ok = all_in && lvl.outside_H == 0;

    // round-annulus version: needs |h| == h_min in every direction hit by
    // the square, plus the outer radius bound g~(r_n + 2pi)
    bool h_const = true;
    for (const auto& [u, v] : boundary) {
      const double q1 = (u + a) / rn1;
      const double q2 = (Y1 + v) / rn1;
      const double yp = curve.arg_inverse(std::atan2(q2, 1.0 + q1));
      if (std::abs(curve.eval_base(yp)) > k.h_min * (1.0 + 1e-9)) {
        h_const = false;
        break;
      }
    }
    const double zeta_max =
        std::hypot(rn1 + kTwoPi + a, std::abs(Y1) + kTwoPi);
    const bool outer = std::log(zeta_max) <=
                       std::log(k.h_min) + g.log_eval(rn + kTwoPi) + 1e-12;
    lvl.annulus_ok = h_const && outer;
  }
  return report;
}

}  // namespace genexp
