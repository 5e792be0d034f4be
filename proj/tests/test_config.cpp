#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <optional>
#include <string>

#include "doctest.h"
#include "genexp/config.hpp"
#include "support.hpp"

using namespace genexp;

namespace {

std::optional<ErrorCode> parse_code(const std::string& text,
                                    std::string* msg = nullptr) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    if (msg) *msg = e.what();
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("minimal config and defaults") {
  const RunConfig cfg = parse_config("[map]\na = 5\n");
  CHECK(cfg.a == 5.0);
  CHECK(cfg.a_set);
  CHECK(cfg.mu_target == 2.0);
  CHECK(cfg.mode == Mode::Certified);
  CHECK(cfg.seed == 0);
  CHECK(cfg.x_growth == 0.0);
  CHECK(cfg.curve.kind == CurveSpec::Kind::UnitCircle);
  CHECK(cfg.growth.kind == GrowthSpec::Kind::Exponential);

  const GenExpMap map = build_map(cfg);
  CHECK(map.certified());
  CHECK(map.a() == 5.0);
  // identical inputs produce the identical validated object
  const GenExpMap ref = testsupport::circle_map(5.0);
  CHECK(map.constants().M == ref.constants().M);
  CHECK(map.constants().c == ref.constants().c);
  REQUIRE(map.constants().xi.has_value());
  CHECK(*map.constants().xi == *ref.constants().xi);
}

TEST_CASE("comments whitespace and line endings") {
  const std::string text =
      "# leading comment\r\n"
      "  [map]  \r\n"
      "\ta =\t5 # inline note\r\n"
      "\r\n"
      "seed = 42\r\n"
      "mu_target = 2.5\r\n"
      "mode = uncertified\r\n";
  const RunConfig cfg = parse_config(text);
  CHECK(cfg.a == 5.0);
  CHECK(cfg.seed == 42);
  CHECK(cfg.mu_target == 2.5);
  CHECK(cfg.mode == Mode::Uncertified);
}

TEST_CASE("example files build") {
  const RunConfig circle = parse_config_file("examples/exp_circle_a5.ini");
  CHECK(circle.a == 5.0);
  CHECK(circle.curve.kind == CurveSpec::Kind::UnitCircle);
  const GenExpMap cm = build_map(circle);
  CHECK(cm.certified());

  const RunConfig diamond = parse_config_file("examples/diamond_a2.ini");
  CHECK(diamond.a == 2.0);
  CHECK(diamond.mode == Mode::Uncertified);
  REQUIRE(diamond.curve.kind == CurveSpec::Kind::Polyline);
  REQUIRE(diamond.curve.points.size() == 3);
  CHECK(diamond.curve.points[0].y == -kHalfPi);
  CHECK(diamond.curve.points[0].p == Complex{0.0, -1.0});
  CHECK(diamond.curve.points[1].p == Complex{1.0, 0.0});
  const GenExpMap dm = build_map(diamond);
  CHECK(!dm.certified());
  // constants are still computed best effort without certification
  REQUIRE(dm.constants().xi.has_value());
  CHECK(*dm.constants().xi ==
        *testsupport::diamond_map(2.0).constants().xi);

  CHECK_THROWS_AS(parse_config_file("examples/no_such_file.ini"), Error);
  try {
    parse_config_file("examples/no_such_file.ini");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoFailure);
  }
}

TEST_CASE("growth section variants") {
  const std::string poly =
      "[growth]\n"
      "variant = polyline\n"
      "breakpoints = 0 1 ; 1 2 ; 2 8\n"
      "x_growth = 0.25\n"
      "[map]\n"
      "a = 5\n"
      "mode = uncertified\n";
  const RunConfig cfg = parse_config(poly);
  CHECK(cfg.x_growth == 0.25);
  REQUIRE(cfg.growth.kind == GrowthSpec::Kind::LogConvexPolyline);
  REQUIRE(cfg.growth.breakpoints.size() == 3);
  CHECK(cfg.growth.breakpoints[2].x == 2.0);
  CHECK(cfg.growth.breakpoints[2].g == 8.0);

  const RunConfig scaled =
      parse_config("[growth]\nlambda = 2\nbeta = 3\n[map]\na = 5\n");
  CHECK(scaled.growth.lambda == 2.0);
  CHECK(scaled.growth.beta == 3.0);
}

TEST_CASE("parse rejections name the line") {
  std::string msg;
  CHECK(parse_code("[orbit]\n", &msg) == ErrorCode::ParseError);
  CHECK(msg.find("line 1") != std::string::npos);
  CHECK(msg.find("unknown section") != std::string::npos);

  CHECK(parse_code("[curve\n", &msg) == ErrorCode::ParseError);
  CHECK(msg.find("unterminated") != std::string::npos);

  CHECK(parse_code("a = 5\n", &msg) == ErrorCode::ParseError);
  CHECK(msg.find("before any section") != std::string::npos);

  CHECK(parse_code("[map]\njust words\n", &msg) == ErrorCode::ParseError);
  CHECK(msg.find("line 2") != std::string::npos);
  CHECK(msg.find("key = value") != std::string::npos);

  CHECK(parse_code("[map]\n= 5\n", &msg) == ErrorCode::ParseError);
  CHECK(msg.find("empty key") != std::string::npos);

  CHECK(parse_code("[map]\nb = 5\n", &msg) == ErrorCode::ParseError);
  CHECK(msg.find("unknown key 'b' in [map]") != std::string::npos);

  CHECK(parse_code("[curve]\ncolor = red\n[map]\na = 5\n", &msg) ==
        ErrorCode::ParseError);
  CHECK(msg.find("in [curve]") != std::string::npos);

  CHECK(parse_code("[map]\na = five\n", &msg) == ErrorCode::ParseError);
  CHECK(msg.find("bad number") != std::string::npos);

  CHECK(parse_code("[map]\na = 5\nseed = 1.5\n", &msg) ==
        ErrorCode::ParseError);
  CHECK(msg.find("bad integer") != std::string::npos);

  CHECK(parse_code("[map]\nmode = maybe\n", &msg) == ErrorCode::ParseError);
  CHECK(msg.find("certified|uncertified") != std::string::npos);

  CHECK(parse_code("[curve]\nvariant = square\n", &msg) ==
        ErrorCode::ParseError);
  CHECK(msg.find("circle|polyline|table") != std::string::npos);

  CHECK(parse_code("[growth]\nvariant = cubic\n", &msg) ==
        ErrorCode::ParseError);
  CHECK(msg.find("exp|polyline") != std::string::npos);

  // malformed vertex groups say what a group needs
  CHECK(parse_code("[curve]\nvariant = polyline\nvertices = 0 1\n[map]\na=5\n",
                   &msg) == ErrorCode::ParseError);
  CHECK(msg.find("needs 3 numbers") != std::string::npos);

  CHECK(parse_code("[growth]\nvariant = polyline\nbreakpoints = 1\n", &msg) ==
        ErrorCode::ParseError);
  CHECK(msg.find("needs 2 numbers") != std::string::npos);
}

TEST_CASE("cross field rejections") {
  std::string msg;
  // variant/field mismatches
  const std::string circle_with_vertices =
      "[curve]\nvariant = circle\nvertices = 0 1 0\n[map]\na = 5\n";
  CHECK(parse_code(circle_with_vertices, &msg) == ErrorCode::ParseError);
  CHECK(msg.find("circle takes no vertex list") != std::string::npos);
  CHECK(msg.find("line 3") != std::string::npos);

  CHECK(parse_code("[growth]\nbreakpoints = 0 1 ; 1 2\n[map]\na = 5\n",
                   &msg) == ErrorCode::ParseError);
  CHECK(msg.find("exp growth takes no breakpoints") != std::string::npos);

  CHECK(parse_code("[curve]\nvariant = polyline\n[map]\na = 5\n", &msg) ==
        ErrorCode::ValidationError);
  CHECK(msg.find("curve.vertices: required") != std::string::npos);

  CHECK(parse_code("[growth]\nvariant = polyline\n[map]\na = 5\n", &msg) ==
        ErrorCode::ValidationError);
  CHECK(msg.find("growth.breakpoints: required") != std::string::npos);

  CHECK(parse_code("[growth]\nvariant = polyline\nlambda = 2\n"
                   "breakpoints = 0 1 ; 1 2\n[map]\na = 5\n",
                   &msg) == ErrorCode::ValidationError);
  CHECK(msg.find("not used by the polyline variant") != std::string::npos);

  // field bounds
  CHECK(parse_code("[map]\nmu_target = 2\n", &msg) ==
        ErrorCode::ValidationError);
  CHECK(msg.find("a: required in [map]") != std::string::npos);
  CHECK(parse_code("[map]\na = -1\n", &msg) == ErrorCode::ValidationError);
  CHECK(msg.find("a must be positive") != std::string::npos);
  CHECK(parse_code("[map]\na = 0\n", &msg) == ErrorCode::ValidationError);
  CHECK(parse_code("[map]\na = 5\nmu_target = 1\n", &msg) ==
        ErrorCode::ValidationError);
  CHECK(msg.find("mu_target must exceed 1") != std::string::npos);
}

TEST_CASE("certification failures point at the a field") {
  RunConfig cfg = parse_config_file("examples/diamond_a2.ini");
  cfg.mode = Mode::Certified;
  try {
    build_map(cfg);
    FAIL("expected the certification to fail");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ValidationError);
    const std::string msg = e.what();
    CHECK(msg.find("a: ") != std::string::npos);
    CHECK(msg.find("a_min") != std::string::npos);
    CHECK(msg.find("uncertified mode") != std::string::npos);
  }
  // raising a past the certified bound fixes the build
  cfg.a = 6.5;
  const GenExpMap map = build_map(cfg);
  CHECK(map.certified());
  CHECK(map.constants().a_min < 6.5);
}
