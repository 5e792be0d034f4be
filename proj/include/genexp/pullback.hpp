#pragma once

#include <cstddef>
#include <vector>

#include "genexp/address.hpp"
#include "genexp/map.hpp"

namespace genexp {

// Branch inverse on H closure: for w with w + a != 0 in the closed image
// sector, returns the unique preimage in the closed tract T_k. The
// construction is exact up to the curve/growth inversions (each 1e-12
// relative), so |f(z) - w| <= 1e-9 (1 + |w|); the roundtrip property is
// exercised by tests rather than re-checked per call. Throws NotInH.
Complex inverse_branch(const GenExpMap& map, long long k, Complex w);

// Composite f^{-1}_{k_1} o ... o f^{-1}_{k_n} applied to w: the last prefix
// entry acts first. Throws NotInH naming the failing stage.
Complex pullback_n(const GenExpMap& map, const std::vector<long long>& prefix,
                   Complex w);

// Limit of pullbacks of a fixed anchor along an address. The gaps
// |e_{n+1} - e_n| shrink geometrically (certified factor 1/mu), so stopping
// at gap <= tol (mu-1)/mu leaves the limit within tol.
struct EndpointResult {
  Complex value;
  double error_bound = 0.0;  // last gap / (mu - 1)
  std::size_t depth = 0;     // pullback levels used
  double cauchy_gap = 0.0;   // last gap
};

EndpointResult endpoint_detail(const GenExpMap& map,
                               const ExternalAddress& addr, double tol);
Complex endpoint(const GenExpMap& map, const ExternalAddress& addr,
                 double tol);

struct HairSample {
  double t;
  Complex z;
};

// Inverse-iteration trace of the hair with the given address: anchors
// b(t) = R_base + t + 2 pi i entry(depth) march out along the tract midline
// and are pulled back depth levels; the t = 0 column is replaced by the
// endpoint. first_gap and cauchy_gap are the first and last pullback
// increments of the t = 0 anchor.
struct HairTrace {
  ExternalAddress address;
  std::size_t depth = 0;
  std::vector<HairSample> samples;  // ordered by t
  Complex endpoint_estimate;
  double first_gap = 0.0;
  double cauchy_gap = 0.0;
};

HairTrace trace_hair(const GenExpMap& map, const ExternalAddress& addr,
                     std::size_t depth, double t_max, std::size_t samples);
// Single-threaded reference with identical output.
HairTrace trace_hair_serial(const GenExpMap& map, const ExternalAddress& addr,
                            std::size_t depth, double t_max,
                            std::size_t samples);

// The two accumulation points phi(f^p(z0) +- 2 pi i), where phi pulls back
// along the first p tract entries of z0. Their addresses agree with z0's up
// to entry p-1 and differ by +-1 at entry p; both are returned explicitly
// (p+1 entries each). Once the forward orbit saturates the growth cap the
// true displacement is far below double resolution; the points are then
// returned equal to z0 with displacement_resolved = false.
struct AccumulatePair {
  Complex z_minus;
  Complex z_plus;
  std::vector<long long> addr_minus;  // p+1 entries
  std::vector<long long> addr_plus;
  bool displacement_resolved = true;
};

AccumulatePair accumulate(const GenExpMap& map, Complex z0, std::size_t p);

// Speed ordering: first k <= max_iter with Re f^k(one) > K Re f^k(other).
// Both orbits must share their address prefix to max_iter (AddressMismatch
// otherwise).
struct SpeedVerdict {
  enum class Kind { ZFaster, WFaster, Undecided };

  Kind kind = Kind::Undecided;
  std::size_t k = 0;
};

SpeedVerdict speed_compare(const GenExpMap& map, Complex z, Complex w,
                           std::size_t max_iter);

}  // namespace genexp
