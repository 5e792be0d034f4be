#pragma once

#include <cstddef>
#include <vector>

#include "genexp/map.hpp"

namespace genexp {

// Basin verdict for one point. AttractedCertified(step n) fires at the first
// n <= N with Re f^n(z) <= M: the half-plane {Re <= M} maps into the
// contraction region {Re <= m}, whose orbits converge to the fixed point.
// JCandidate(N) means Re f^k(z) > M held for every k <= N.
struct Classification {
  enum class Verdict { AttractedCertified, JCandidate };

  Verdict verdict = Verdict::JCandidate;
  std::size_t step = 0;            // entry step, or N for JCandidate
  double first_entry_re = 0.0;     // Re f^step(z) on entry; NaN for JCandidate

  bool attracted() const { return verdict == Verdict::AttractedCertified; }
};

Classification classify_point(const GenExpMap& map, Complex z, std::size_t N);

struct GridJob {
  double x_min, x_max, y_min, y_max;
  std::size_t width, height;
  std::size_t max_iter;

  double pixel_x(std::size_t i) const {
    return x_min + (static_cast<double>(i) + 0.5) * (x_max - x_min) /
                       static_cast<double>(width);
  }
  // row 0 is the top of the window
  double pixel_y(std::size_t j) const {
    return y_max - (static_cast<double>(j) + 0.5) * (y_max - y_min) /
                       static_cast<double>(height);
  }
};

// Row-major matrix of per-pixel verdicts at pixel centers. Pixels are
// independent, so the parallel and serial versions agree bit for bit.
// Throws InvalidWindow, ResolutionTooLarge, ValidationError.
std::vector<Classification> render_grid(const GenExpMap& map,
                                        const GridJob& job);
std::vector<Classification> render_grid_serial(const GenExpMap& map,
                                               const GridJob& job);

}  // namespace genexp
