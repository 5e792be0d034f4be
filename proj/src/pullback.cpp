#include "genexp/pullback.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "genexp/symbolic.hpp"

namespace genexp {

namespace {

constexpr double kSaturated = 1e250;  // orbit values beyond this are capped soon

double mu_of(const GenExpMap& map) { return map.constants().mu; }

// anchor for endpoint iteration and hair traces; real part alone already
// clears the boundary curve |w + a| = g(M)|h|, so it lies in H for any
// vertical offset
double anchor_base(const GenExpMap& map) {
  return map.growth().eval(map.constants().M + 1.0) + map.a();
}

}  // namespace

Complex inverse_branch(const GenExpMap& map, long long k, Complex w) {
  if (!map.in_H_closure(w)) {
    fail(ErrorCode::NotInH,
         "point " + std::to_string(w.real()) + "+" +
             std::to_string(w.imag()) + "i is outside the closed image");
  }
  const Complex zeta = w + map.a();
  double theta = std::atan2(zeta.imag(), zeta.real());
  theta = std::clamp(theta, -kHalfPi, kHalfPi);
  const double yp = map.curve().arg_inverse(theta);
  const double mod_h = std::abs(map.curve().eval_base(yp));
  const double x = map.growth().invert(std::abs(zeta) / mod_h);
  return Complex{x, yp + kTwoPi * static_cast<double>(k)};
}

Complex pullback_n(const GenExpMap& map, const std::vector<long long>& prefix,
                   Complex w) {
  Complex z = w;
  for (std::size_t i = prefix.size(); i-- > 0;) {
    try {
      z = inverse_branch(map, prefix[i], z);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotInH) {
        fail(ErrorCode::NotInH,
             "stage " + std::to_string(prefix.size() - i) + " of " +
                 std::to_string(prefix.size()) + ": " + e.what());
      }
      throw;
    }
  }
  return z;
}

EndpointResult endpoint_detail(const GenExpMap& map,
                               const ExternalAddress& addr, double tol) {
  if (!(tol > 0.0)) fail(ErrorCode::ValidationError, "tol must be positive");
  const double sup = static_cast<double>(addr.max_abs_entry());
  const GBoundedness gb =
      is_g_bounded(map, addr, 8, std::max(1000.0, kTwoPi * sup + 10.0));
  if (gb.verdict != GBoundedness::Verdict::Bounded) {
    fail(ErrorCode::NotGBounded,
         "no g-boundedness witness for " + addr.format());
  }

  Complex anchor{anchor_base(map), 0.0};
  for (int i = 0; i < 100 && !map.in_H_closure(anchor); ++i) anchor += 1.0;

  const double mu = mu_of(map);
  const double stop = tol * (mu - 1.0) / mu;
  std::vector<long long> prefix;
  Complex prev = anchor;
  for (std::size_t n = 1; n <= 200; ++n) {
    prefix.push_back(addr.entry(n - 1));
    const Complex cur = pullback_n(map, prefix, anchor);
    const double gap = std::abs(cur - prev);
    if (gap <= stop) {
      return {cur, gap / (mu - 1.0), n, gap};
    }
    prev = cur;
  }
  fail(ErrorCode::NoConvergence, "no Cauchy stop within 200 pullback levels");
}

Complex endpoint(const GenExpMap& map, const ExternalAddress& addr,
                 double tol) {
  return endpoint_detail(map, addr, tol).value;
}

namespace {

HairTrace trace_hair_impl(const GenExpMap& map, const ExternalAddress& addr,
                          std::size_t depth, double t_max,
                          std::size_t samples, bool parallel) {
  if (samples < 1) fail(ErrorCode::ValidationError, "need at least 1 sample");
  if (!(t_max >= 0.0)) fail(ErrorCode::ValidationError, "t_max must be >= 0");

  HairTrace trace;
  trace.address = addr;
  trace.depth = depth;
  trace.samples.resize(samples);

  std::vector<long long> prefix(depth);
  for (std::size_t n = 0; n < depth; ++n) prefix[n] = addr.entry(n);
  const double base = anchor_base(map);
  const double anchor_im =
      kTwoPi * static_cast<double>(addr.entry(depth));

  std::string error_text;
  ErrorCode error_code{};
  bool failed = false;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (std::size_t j = 0; j < samples; ++j) {
    const double t =
        samples == 1
            ? 0.0
            : t_max * static_cast<double>(j) / static_cast<double>(samples - 1);
    try {
      const Complex b{base + t, anchor_im};
      trace.samples[j] = {t, pullback_n(map, prefix, b)};
    } catch (const Error& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
      {
        if (!failed) {
          failed = true;
          error_code = e.code();
          error_text = e.what();
        }
      }
    }
  }
  (void)parallel;
  if (failed) fail(error_code, error_text);

  // Cauchy gaps of the t = 0 anchor column
  const Complex b0{base, anchor_im};
  Complex prev = b0;
  for (std::size_t n = 1; n <= depth; ++n) {
    std::vector<long long> head(prefix.begin(),
                                prefix.begin() + static_cast<long>(n));
    const Complex cur = pullback_n(map, head, b0);
    const double gap = std::abs(cur - prev);
    if (n == 1) trace.first_gap = gap;
    if (n == depth) trace.cauchy_gap = gap;
    prev = cur;
  }

  const EndpointResult ep = endpoint_detail(map, addr, 1e-10);
  trace.endpoint_estimate = ep.value;
  if (!trace.samples.empty()) trace.samples[0].z = ep.value;
  return trace;
}

}  // namespace

HairTrace trace_hair(const GenExpMap& map, const ExternalAddress& addr,
                     std::size_t depth, double t_max, std::size_t samples) {
  return trace_hair_impl(map, addr, depth, t_max, samples, true);
}

HairTrace trace_hair_serial(const GenExpMap& map, const ExternalAddress& addr,
                            std::size_t depth, double t_max,
                            std::size_t samples) {
  return trace_hair_impl(map, addr, depth, t_max, samples, false);
}

AccumulatePair accumulate(const GenExpMap& map, Complex z0, std::size_t p) {
  const AddressPrefix ap = partial_address(map, z0, p + 1);
  if (!ap.complete) {
    fail(ErrorCode::AddressMismatch,
         "orbit leaves the tracts at step " + std::to_string(ap.left_at) +
             ", so entry " + std::to_string(p) + " is undefined");
  }

  AccumulatePair out;
  out.addr_minus.assign(ap.entries.begin(), ap.entries.end());
  out.addr_plus = out.addr_minus;
  out.addr_minus[p] -= 1;
  out.addr_plus[p] += 1;

  if (p == 0) {
    out.z_minus = z0 - Complex{0.0, kTwoPi};
    out.z_plus = z0 + Complex{0.0, kTwoPi};
    return out;
  }

  std::vector<Complex> orbit(p + 1);
  orbit[0] = z0;
  bool saturated = false;
  for (std::size_t j = 1; j <= p; ++j) {
    orbit[j] = map.eval_f(orbit[j - 1]);
    if (std::abs(orbit[j]) >= kSaturated) saturated = true;
  }
  if (saturated) {
    // the capped orbit no longer round-trips through the inverse branches,
    // and the true displacement is smaller than one ulp of z0 anyway
    out.z_minus = z0;
    out.z_plus = z0;
    out.displacement_resolved = false;
    return out;
  }

  const auto pull_displacement = [&](Complex d_top) {
    Complex d = d_top;
    for (std::size_t j = p; j-- > 0;) {
      d = inverse_branch(map, ap.entries[j], orbit[j + 1] + d) - orbit[j];
    }
    return d;
  };
  out.z_minus = z0 + pull_displacement(Complex{0.0, -kTwoPi});
  out.z_plus = z0 + pull_displacement(Complex{0.0, kTwoPi});
  return out;
}

SpeedVerdict speed_compare(const GenExpMap& map, Complex z, Complex w,
                           std::size_t max_iter) {
  const AddressPrefix az = partial_address(map, z, max_iter);
  const AddressPrefix aw = partial_address(map, w, max_iter);
  if (!az.complete || !aw.complete || az.entries != aw.entries) {
    fail(ErrorCode::AddressMismatch,
         "speed ordering needs a shared address prefix of length " +
             std::to_string(max_iter));
  }
  const double K = map.constants().K;
  Complex zc = z, wc = w;
  for (std::size_t k = 0; k <= max_iter; ++k) {
    if (zc.real() > K * wc.real()) return {SpeedVerdict::Kind::ZFaster, k};
    if (wc.real() > K * zc.real()) return {SpeedVerdict::Kind::WFaster, k};
    if (k < max_iter) {
      zc = map.eval_f(zc);
      wc = map.eval_f(wc);
    }
  }
  return {SpeedVerdict::Kind::Undecided, 0};
}

}  // namespace genexp
