#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "doctest.h"
#include "genexp/classify.hpp"
#include "genexp/image.hpp"
#include "genexp/symbolic.hpp"
#include "support.hpp"

using namespace genexp;
using testsupport::Rng;

namespace {

constexpr double kXi = -4.99321618864790302874587382428;

// frozen first-run digest of the 256x256 reference picture below
constexpr std::uint64_t kGoldenDigest = 0xa7d4e77e3fb59a2bull;
constexpr std::size_t kGoldenJCount = 1850ull;

bool same_bits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

bool same_cls(const Classification& a, const Classification& b) {
  return a.verdict == b.verdict && a.step == b.step &&
         same_bits(a.first_entry_re, b.first_entry_re);
}

}  // namespace

TEST_CASE("point verdicts") {
  const GenExpMap map = testsupport::circle_map(5.0);
  const double M = map.constants().M;

  const Classification at_fix = classify_point(map, Complex{kXi, 0.0}, 100);
  CHECK(at_fix.attracted());
  CHECK(at_fix.step == 0);
  CHECK(at_fix.first_entry_re == kXi);

  // the stored repelling point is one ulp off the true one, and iteration
  // amplifies that by ~6.94 per step; 15 steps keep the drift below 1e-3
  const Classification rep =
      classify_point(map, Complex{1.93684740722021872216431824129, 0.0}, 15);
  CHECK(!rep.attracted());
  CHECK(rep.verdict == Classification::Verdict::JCandidate);
  CHECK(rep.step == 15);
  CHECK(std::isnan(rep.first_entry_re));

  // a real orbit marching right survives any depth
  const Classification ray = classify_point(map, Complex{2.5, 0.0}, 100);
  CHECK(ray.verdict == Classification::Verdict::JCandidate);
  CHECK(ray.step == 100);
  CHECK(std::isnan(ray.first_entry_re));

  // one step through the flip half: f(1 + i pi) = -e - 5
  const Classification flip = classify_point(map, Complex{1.0, kPi}, 50);
  CHECK(flip.attracted());
  CHECK(flip.step == 1);
  CHECK(flip.first_entry_re ==
        doctest::Approx(-std::exp(1.0) - 5.0).epsilon(1e-12));

  CHECK(classify_point(map, Complex{M, 0.0}, 10).step == 0);
  const Classification just_right =
      classify_point(map, Complex{M + 1e-9, 0.0}, 10);
  CHECK(just_right.attracted());
  CHECK(just_right.step == 1);

  CHECK_THROWS_AS(classify_point(map, Complex{0.0, 0.0}, 0), Error);
}

TEST_CASE("saturated orbits keep candidate status") {
  const GenExpMap map = testsupport::circle_map(5.0);
  // the radial factor saturates instantly here; the verdict must not flip
  const Classification far = classify_point(map, Complex{800.0, 0.0}, 50);
  CHECK(far.verdict == Classification::Verdict::JCandidate);
  CHECK(far.step == 50);
  // a real orbit that walks into saturation after a few steps
  const Classification walk = classify_point(map, Complex{3.0, 0.0}, 50);
  CHECK(walk.verdict == Classification::Verdict::JCandidate);
  // intermediate overflow in the exponential must not poison the verdict
  const Classification mid = classify_point(map, Complex{600.0, 0.0}, 50);
  CHECK(mid.verdict == Classification::Verdict::JCandidate);
}

TEST_CASE("render job validation") {
  const GenExpMap map = testsupport::circle_map(5.0);
  auto code_of = [&](const GridJob& job) -> std::optional<ErrorCode> {
    try {
      render_grid(map, job);
    } catch (const Error& e) {
      return e.code();
    }
    return std::nullopt;
  };
  CHECK(code_of({2.0, 2.0, -1.0, 1.0, 8, 8, 10}) == ErrorCode::InvalidWindow);
  CHECK(code_of({-1.0, 1.0, 1.0, -1.0, 8, 8, 10}) == ErrorCode::InvalidWindow);
  CHECK(code_of({-1.0, 1.0, -1.0, 1.0, 0, 8, 10}) == ErrorCode::InvalidWindow);
  CHECK(code_of({-1.0, 1.0, -1.0, 1.0, 10001, 10000, 10}) ==
        ErrorCode::ResolutionTooLarge);
  CHECK(code_of({-1.0, 1.0, -1.0, 1.0, 8, 8, 0}) ==
        ErrorCode::ValidationError);
}

TEST_CASE("render geometry") {
  const GenExpMap map = testsupport::circle_map(5.0);
  const GridJob job{-8.0, 4.0, -8.0, 8.0, 64, 64, 30};
  const std::vector<Classification> cells = render_grid(map, job);
  REQUIRE(cells.size() == 64 * 64);
  const double M = map.constants().M;

  std::size_t candidates = 0;
  for (std::size_t j = 0; j < job.height; ++j) {
    for (std::size_t i = 0; i < job.width; ++i) {
      const Complex z{job.pixel_x(i), job.pixel_y(j)};
      const Classification& c = cells[j * job.width + i];
      if (z.real() <= M) {
        // the left half-plane is attracted on sight
        CHECK(c.attracted());
        CHECK(c.step == 0);
        CHECK(c.first_entry_re == z.real());
      }
      if (!c.attracted()) {
        ++candidates;
        // candidate pixels live strictly inside the horizontal strips
        const TractResult t = tract_of(map, z);
        CHECK(t.status == TractResult::Status::InTract);
      }
    }
  }
  CHECK(candidates > 0);

  // pixels are classified exactly at their centres
  Rng rng(71);
  for (int s = 0; s < 100; ++s) {
    const std::size_t i = static_cast<std::size_t>(rng.integer(0, 63));
    const std::size_t j = static_cast<std::size_t>(rng.integer(0, 63));
    const Classification direct = classify_point(
        map, Complex{job.pixel_x(i), job.pixel_y(j)}, job.max_iter);
    CHECK(same_cls(direct, cells[j * job.width + i]));
  }

  // points in the gap strips flip sign in one application
  for (int s = 0; s < 200; ++s) {
    const Complex z{rng.uniform(M + 0.01, 4.0),
                    kPi + rng.uniform(-kHalfPi + 1e-3, kHalfPi - 1e-3) +
                        kTwoPi * static_cast<double>(rng.integer(-2, 1))};
    CHECK(tract_of(map, z).status == TractResult::Status::GapStrip);
    const Classification c = classify_point(map, z, 30);
    CHECK(c.attracted());
    CHECK(c.step <= 1);
  }
}

TEST_CASE("parallel render matches the serial reference") {
  const GenExpMap map = testsupport::circle_map(5.0);
  const GridJob job{-6.0, 3.0, -7.0, 7.0, 48, 56, 25};
  const std::vector<Classification> serial = render_grid_serial(map, job);
  const std::vector<Classification> parallel = render_grid(map, job);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t n = 0; n < serial.size(); ++n) {
    CHECK(same_cls(serial[n], parallel[n]));
  }
#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  for (int threads : {1, 2, 4}) {
    omp_set_num_threads(threads);
    const std::vector<Classification> again = render_grid(map, job);
    for (std::size_t n = 0; n < serial.size(); ++n) {
      CHECK(same_cls(serial[n], again[n]));
    }
  }
  omp_set_num_threads(saved);
#endif
}

TEST_CASE("vertical period carries the picture") {
  const GenExpMap map = testsupport::circle_map(5.0);
  // dyadic bounds keep the shifted pixel centres exactly 2 pi higher, so
  // the two windows must classify bit for bit identically
  const GridJob base{0.5, 2.5, -0.75, 0.75, 32, 32, 25};
  const GridJob lifted{0.5, 2.5, -0.75 + kTwoPi, 0.75 + kTwoPi, 32, 32, 25};
  for (std::size_t j = 0; j < base.height; ++j) {
    CHECK(lifted.pixel_y(j) == base.pixel_y(j) + kTwoPi);
  }
  const std::vector<Classification> lo = render_grid(map, base);
  const std::vector<Classification> hi = render_grid(map, lifted);
  REQUIRE(lo.size() == hi.size());
  for (std::size_t n = 0; n < lo.size(); ++n) {
    CHECK(same_cls(lo[n], hi[n]));
  }
}

TEST_CASE("deeper iteration only removes candidates") {
  const GenExpMap map = testsupport::circle_map(5.0);
  const GridJob shallow{-8.0, 4.0, -8.0, 8.0, 64, 64, 30};
  GridJob deep = shallow;
  deep.max_iter = 40;
  const std::vector<Classification> c30 = render_grid(map, shallow);
  const std::vector<Classification> c40 = render_grid(map, deep);
  REQUIRE(c30.size() == c40.size());
  for (std::size_t n = 0; n < c30.size(); ++n) {
    if (!c40[n].attracted()) {
      CHECK(!c30[n].attracted());
    }
    if (c30[n].attracted()) {
      CHECK(c40[n].attracted());
      CHECK(c40[n].step == c30[n].step);
      CHECK(same_bits(c40[n].first_entry_re, c30[n].first_entry_re));
    }
  }
}

TEST_CASE("attracted verdicts really converge to the fixed point") {
  const GenExpMap map = testsupport::circle_map(5.0);
  REQUIRE(map.constants().xi.has_value());
  const Complex xi = *map.constants().xi;
  const GridJob job{-8.0, 4.0, -8.0, 8.0, 64, 64, 30};
  const std::vector<Classification> cells = render_grid(map, job);

  std::size_t checked = 0;
  for (std::size_t j = 0; j < job.height && checked < 200; j += 3) {
    for (std::size_t i = 0; i < job.width && checked < 200; i += 3) {
      const Classification& c = cells[j * job.width + i];
      if (!c.attracted()) continue;
      ++checked;
      Complex w{job.pixel_x(i), job.pixel_y(j)};
      for (std::size_t k = 0; k < c.step; ++k) w = map.eval_f(w);
      CHECK(w.real() <= map.constants().M);
      // past the entry step the orbit contracts at least geometrically
      double prev = std::abs(w - xi);
      for (int k = 0; k < 150; ++k) {
        w = map.eval_f(w);
        const double cur = std::abs(w - xi);
        if (prev > 1e-12 && k >= 1) {
          CHECK(cur <= 0.5 * prev + 1e-15);
        }
        prev = cur;
      }
      CHECK(std::abs(w - xi) <= 1e-12 * (1.0 + std::abs(xi)));
    }
  }
  CHECK(checked == 200);
}

TEST_CASE("pixmap encoding") {
  const GenExpMap map = testsupport::circle_map(5.0);
  // a single attracted pixel at full brightness
  const GridJob white_job{-5.0, -4.9, -0.05, 0.05, 1, 1, 10};
  const auto white = encode_ppm(render_grid(map, white_job), 1, 1, 10, false);
  REQUIRE(white.size() == 14);
  const std::string header(white.begin(), white.begin() + 11);
  CHECK(header == "P6\n1 1\n255\n");
  CHECK(white[11] == 255);
  CHECK(white[12] == 255);
  CHECK(white[13] == 255);

  // a single candidate pixel is black
  const GridJob black_job{1.9, 2.0, -0.05, 0.05, 1, 1, 10};
  const auto black = encode_ppm(render_grid(map, black_job), 1, 1, 10, false);
  REQUIRE(black.size() == 14);
  CHECK(black[11] == 0);
  CHECK(black[12] == 0);
  CHECK(black[13] == 0);

  // the ramp darkens monotonically with the entry step
  std::vector<Classification> ramp(11);
  for (std::size_t s = 0; s <= 10; ++s) {
    ramp[s] = {Classification::Verdict::AttractedCertified, s,
               static_cast<double>(s)};
  }
  const auto bytes = encode_ppm(ramp, 11, 1, 10, false);
  REQUIRE(bytes.size() == 12 + 3 * 11);
  unsigned char last = 255;
  for (std::size_t s = 0; s <= 10; ++s) {
    const unsigned char v = bytes[12 + 3 * s];
    CHECK(v <= last);
    if (s > 0) CHECK(v < last);
    last = v;
  }
  CHECK(bytes[12] == 255);

  // runs without certification are labelled in the header
  const auto marked = encode_ppm(ramp, 11, 1, 10, true);
  const std::string text(marked.begin(),
                         marked.begin() + static_cast<long>(
                                              marked.size() - 3 * 11));
  CHECK(text.find("# uncertified\n") != std::string::npos);

  CHECK_THROWS_AS(encode_ppm(ramp, 5, 1, 10, false), Error);
  CHECK_THROWS_AS(encode_ppm({}, 0, 0, 10, false), Error);
}

TEST_CASE("grid csv round trip") {
  const GenExpMap map = testsupport::diamond_map(2.0);
  // the window puts a pixel row exactly on the real axis, where the
  // candidate set is guaranteed to be hit
  const GridJob job{0.0, 4.0, -1.75, 2.25, 8, 8, 25};
  const std::vector<Classification> cells = render_grid(map, job);
  const std::string csv = grid_csv(cells, job);
  CHECK(csv.rfind("i,j,x,y,verdict,step,first_entry_re\n", 0) == 0);

  const std::string path = "/tmp/genexp_test_grid.csv";
  write_text(path, csv);
  const GridCsv parsed = read_grid_csv(path);
  CHECK(parsed.width == job.width);
  CHECK(parsed.height == job.height);
  REQUIRE(parsed.cells.size() == cells.size());
  bool saw_candidate = false, saw_attracted = false;
  for (std::size_t n = 0; n < cells.size(); ++n) {
    CHECK(same_cls(parsed.cells[n], cells[n]));
    (cells[n].attracted() ? saw_attracted : saw_candidate) = true;
  }
  // the sample window genuinely exercises both verdicts (and the NaN column)
  CHECK(saw_candidate);
  CHECK(saw_attracted);
  // a rewrite of the parsed matrix reproduces the file byte for byte
  CHECK(grid_csv(parsed.cells, job) == csv);

  CHECK_THROWS_AS(read_grid_csv("/tmp/genexp_no_such_file.csv"), Error);
  try {
    read_grid_csv("/tmp/genexp_no_such_file.csv");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoFailure);
  }

  auto parse_code = [](const std::string& text) -> std::optional<ErrorCode> {
    const std::string p = "/tmp/genexp_test_bad.csv";
    write_text(p, text);
    try {
      read_grid_csv(p);
    } catch (const Error& e) {
      return e.code();
    }
    return std::nullopt;
  };
  CHECK(parse_code("t,re,im\n") == ErrorCode::ParseError);
  CHECK(parse_code("i,j,x,y,verdict,step,first_entry_re\n0,0,1,2\n") ==
        ErrorCode::ParseError);
  CHECK(parse_code("i,j,x,y,verdict,step,first_entry_re\n"
                   "0,0,1.0,2.0,maybe,3,0.5\n") == ErrorCode::ParseError);
  CHECK(parse_code("i,j,x,y,verdict,step,first_entry_re\n"
                   "1,0,1.0,2.0,attracted,3,0.5\n") == ErrorCode::ParseError);

  // hair trace export has the fixed schema
  const HairTrace tr =
      trace_hair(testsupport::circle_map(5.0),
                 ExternalAddress::constant_tail(0), 8, 2.0, 5);
  const std::string tcsv = trace_csv(tr);
  CHECK(tcsv.rfind("t,re,im,depth_used\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : tcsv) lines += (ch == '\n') ? 1 : 0;
  CHECK(lines == 1 + tr.samples.size());
}

TEST_CASE("reference picture is pinned") {
  const GenExpMap map = testsupport::circle_map(5.0);
  const GridJob job{-8.0, 4.0, -8.0, 8.0, 256, 256, 50};
  const std::vector<Classification> cells = render_grid(map, job);
  std::size_t candidates = 0;
  for (const Classification& c : cells) candidates += c.attracted() ? 0 : 1;
  const std::uint64_t digest = fnv1a64(encode_ppm(cells, 256, 256, 50, false));
  char hex[32];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(digest));
  CAPTURE(hex);
  CAPTURE(candidates);
  CHECK(digest == kGoldenDigest);
  CHECK(candidates == kGoldenJCount);
}
