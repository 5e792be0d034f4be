#include "genexp/classify.hpp"

#include <cmath>
#include <limits>

namespace genexp {

Classification classify_point(const GenExpMap& map, Complex z, std::size_t N) {
  if (N < 1) fail(ErrorCode::ValidationError, "need at least one iteration");
  const double M = map.constants().M;
  // Once the radial factor saturates while the orbit is still right of M,
  // the remaining iterates are treated as staying right of M (log-magnitude
  // continuation): the point keeps its J-candidate status.
  const double log_cap = std::log(kGrowthCap);
  Complex w = z;
  for (std::size_t k = 0; k <= N; ++k) {
    if (w.real() <= M) {
      return {Classification::Verdict::AttractedCertified, k, w.real()};
    }
    if (map.growth().log_eval(w.real()) >= log_cap) break;
    if (k < N) w = map.eval_f(w);
  }
  return {Classification::Verdict::JCandidate, N,
          std::numeric_limits<double>::quiet_NaN()};
}

namespace {

std::vector<Classification> render_impl(const GenExpMap& map,
                                        const GridJob& job, bool parallel) {
  if (!(job.x_min < job.x_max) || !(job.y_min < job.y_max)) {
    fail(ErrorCode::InvalidWindow, "window must have positive area");
  }
  if (job.width == 0 || job.height == 0) {
    fail(ErrorCode::InvalidWindow, "resolution must be positive");
  }
  if (static_cast<double>(job.width) * static_cast<double>(job.height) >
      1e8) {
    fail(ErrorCode::ResolutionTooLarge, "width*height exceeds 1e8");
  }
  if (job.max_iter < 1) {
    fail(ErrorCode::ValidationError, "max_iter must be >= 1");
  }

  std::vector<Classification> out(job.width * job.height);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (std::size_t j = 0; j < job.height; ++j) {
    const double y = job.pixel_y(j);
    for (std::size_t i = 0; i < job.width; ++i) {
      out[j * job.width + i] =
          classify_point(map, Complex{job.pixel_x(i), y}, job.max_iter);
    }
  }
  (void)parallel;
  return out;
}

}  // namespace

std::vector<Classification> render_grid(const GenExpMap& map,
                                        const GridJob& job) {
  return render_impl(map, job, true);
}

std::vector<Classification> render_grid_serial(const GenExpMap& map,
                                               const GridJob& job) {
  return render_impl(map, job, false);
}

}  // namespace genexp
