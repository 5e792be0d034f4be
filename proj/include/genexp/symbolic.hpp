#pragma once

#include <cstddef>
#include <vector>

#include "genexp/address.hpp"
#include "genexp/map.hpp"

namespace genexp {

// Tract T_k = {Re z > M, (4k-1)pi/2 < Im z < (4k+1)pi/2}: the vertical strip
// of height pi centred on Im = 2*pi*k, right of the expansion threshold.
struct TractResult {
  enum class Status { InTract, LeftOfM, GapStrip, Boundary };

  Status status = Status::InTract;
  long long k = 0;  // meaningful only for InTract

  bool in_tract() const { return status == Status::InTract; }
};

TractResult tract_of(const GenExpMap& map, Complex z);

// Tract indices of z, f(z), ..., read until an iterate leaves the tracts or
// N entries are collected. complete means all N iterates sat in tracts;
// otherwise left_at is the index of the first iterate outside.
struct AddressPrefix {
  std::vector<long long> entries;
  bool complete = false;
  std::size_t left_at = 0;
};

AddressPrefix partial_address(const GenExpMap& map, Complex z, std::size_t N);

// Witness search for "2pi|s_n| <= g^n(x_0) for all n": Bounded carries a
// proved witness (g-orbit of x_0 is increasing and already clears the sup of
// the entries), Inconclusive means no witness was found on the grid below
// x_max. Unbounded is never produced for tail-rule addresses; the arm exists
// so callers can treat the verdict as three-valued.
struct GBoundedness {
  enum class Verdict { Bounded, Unbounded, Inconclusive };

  Verdict verdict = Verdict::Inconclusive;
  double witness_x0 = 0.0;    // Bounded only
  std::size_t evidence_n = 0; // Unbounded only
};

GBoundedness is_g_bounded(const GenExpMap& map, const ExternalAddress& addr,
                          std::size_t N, double x_max);

// Shadowing data for an address: closed squares D_n of side 2pi with
// bottom-left corner (r_n, (4 s_n - 1) pi/2), where r_{k+1} = h_min g(r_k)
// (saturating at the growth cap) and r_0 clears every constraint below.
struct ShadowParams {
  ExternalAddress addr;
  std::size_t depth = 0;  // N: squares D_0..D_N, levels 0..N-1
  double kappa = 0.0;     // kappa^2 < c^2/h_min^2 - 1, capped at 1e3
  double delta = 0.0;     // (1+delta)^2 < c^2/h_min^2 - kappa^2
  double x0pp = 0.0;      // smallest grid x with max{3pi/2,4pi|s_n|} <= kappa g~^n(x)
  double r0 = 0.0;        // max{M, x0pp, (2pi+a)/delta, g(M)-a} + 1
  std::vector<double> r_seq;     // r_0..r_N
  std::vector<Complex> squares;  // bottom-left corners of D_0..D_N
};

ShadowParams build_shadow_params(const GenExpMap& map,
                                 const ExternalAddress& addr, std::size_t N);

// One report per level n < N. pullback_ok: every sampled boundary point of
// D_{n+1} pulls back through the tract-s_n inverse branch into D_n
// (x-displacement within [-1e-9, 2pi + 1e-9]; the y-range is automatic).
// annulus_ok: the cruder round-annulus containment, which additionally needs
// |h| constant at h_min; reported so the two methods can be compared.
// Once h_min g(r_n) crosses 1e12 the level is evaluated in scale-free
// displacement arithmetic (scale_free flag) because the square positions
// saturate the double range.
struct ShadowLevel {
  bool pullback_ok = false;
  bool annulus_ok = false;
  bool scale_free = false;
  int outside_H = 0;    // sampled boundary points not in the closure of H
  double dx_min = 0.0;  // extremes of the pulled-back x-displacement
  double dx_max = 0.0;
};

std::vector<ShadowLevel> verify_shadowing(const GenExpMap& map,
                                          const ShadowParams& params,
                                          std::size_t N);

}  // namespace genexp
