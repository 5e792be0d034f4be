#include "genexp/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace genexp {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& reason) {
  fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + reason);
}

std::string trimmed(const std::string& s) {
  const std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& tok, std::size_t line) {
  const std::string t = trimmed(tok);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || errno != 0 || end != t.c_str() + t.size()) {
    parse_fail(line, "bad number '" + t + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& tok, std::size_t line) {
  const std::string t = trimmed(tok);
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  if (t.empty() || errno != 0 || end != t.c_str() + t.size()) {
    parse_fail(line, "bad integer '" + t + "'");
  }
  return v;
}

// groups separated by ';', each group whitespace-separated numbers
std::vector<std::vector<double>> parse_groups(const std::string& value,
                                              std::size_t width,
                                              std::size_t line) {
  std::vector<std::vector<double>> out;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    const std::size_t semi = value.find(';', pos);
    const std::string group = value.substr(
        pos, semi == std::string::npos ? semi : semi - pos);
    std::istringstream gs(group);
    std::vector<double> nums;
    std::string tok;
    while (gs >> tok) nums.push_back(parse_double(tok, line));
    if (nums.size() != width) {
      parse_fail(line, "group '" + trimmed(group) + "' needs " +
                           std::to_string(width) + " numbers");
    }
    out.push_back(std::move(nums));
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
  return out;
}

std::vector<CurvePoint> to_points(const std::vector<std::vector<double>>& g) {
  std::vector<CurvePoint> pts;
  pts.reserve(g.size());
  for (const auto& row : g) pts.push_back({row[0], {row[1], row[2]}});
  return pts;
}

struct PendingCurve {
  std::string variant = "circle";
  bool have_points = false;
  std::vector<CurvePoint> points;
  int grid_samples = 4096;
  std::size_t variant_line = 0, points_line = 0;
};

struct PendingGrowth {
  std::string variant = "exp";
  double lambda = 1.0, beta = 1.0;
  bool have_breakpoints = false;
  std::vector<GrowthBreakpoint> breakpoints;
  std::size_t variant_line = 0, breakpoints_line = 0;
  bool lambda_set = false, beta_set = false;
};

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  PendingCurve curve;
  PendingGrowth growth;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trimmed(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') parse_fail(line_no, "unterminated section");
      section = trimmed(line.substr(1, line.size() - 2));
      if (section != "curve" && section != "growth" && section != "map") {
        parse_fail(line_no, "unknown section [" + section + "]");
      }
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) parse_fail(line_no, "expected key = value");
    const std::string key = trimmed(line.substr(0, eq));
    const std::string value = trimmed(line.substr(eq + 1));
    if (key.empty()) parse_fail(line_no, "empty key");
    if (section.empty()) parse_fail(line_no, "key before any section");

    if (section == "curve") {
      if (key == "variant") {
        if (value != "circle" && value != "polyline" && value != "table") {
          parse_fail(line_no, "curve variant must be circle|polyline|table");
        }
        curve.variant = value;
        curve.variant_line = line_no;
      } else if (key == "vertices" || key == "samples") {
        curve.points = to_points(parse_groups(value, 3, line_no));
        curve.have_points = true;
        curve.points_line = line_no;
      } else if (key == "grid_samples") {
        curve.grid_samples = static_cast<int>(parse_u64(value, line_no));
      } else {
        parse_fail(line_no, "unknown key '" + key + "' in [curve]");
      }
    } else if (section == "growth") {
      if (key == "variant") {
        if (value != "exp" && value != "polyline") {
          parse_fail(line_no, "growth variant must be exp|polyline");
        }
        growth.variant = value;
        growth.variant_line = line_no;
      } else if (key == "lambda") {
        growth.lambda = parse_double(value, line_no);
        growth.lambda_set = true;
      } else if (key == "beta") {
        growth.beta = parse_double(value, line_no);
        growth.beta_set = true;
      } else if (key == "breakpoints") {
        growth.breakpoints.clear();
        for (const auto& row : parse_groups(value, 2, line_no)) {
          growth.breakpoints.push_back({row[0], row[1]});
        }
        growth.have_breakpoints = true;
        growth.breakpoints_line = line_no;
      } else if (key == "x_growth") {
        cfg.x_growth = parse_double(value, line_no);
      } else {
        parse_fail(line_no, "unknown key '" + key + "' in [growth]");
      }
    } else {
      if (key == "a") {
        cfg.a = parse_double(value, line_no);
        cfg.a_set = true;
      } else if (key == "mu_target") {
        cfg.mu_target = parse_double(value, line_no);
      } else if (key == "mode") {
        if (value == "certified") {
          cfg.mode = Mode::Certified;
        } else if (value == "uncertified") {
          cfg.mode = Mode::Uncertified;
        } else {
          parse_fail(line_no, "mode must be certified|uncertified");
        }
      } else if (key == "seed") {
        cfg.seed = parse_u64(value, line_no);
      } else {
        parse_fail(line_no, "unknown key '" + key + "' in [map]");
      }
    }
  }

  // assemble specs; cross-field complaints name the offending line
  if (curve.variant == "circle") {
    if (curve.have_points) {
      parse_fail(curve.points_line, "circle takes no vertex list");
    }
    cfg.curve = CurveSpec::unit_circle();
  } else {
    if (!curve.have_points) {
      fail(ErrorCode::ValidationError,
           "curve.vertices: required for variant " + curve.variant);
    }
    cfg.curve = curve.variant == "polyline"
                    ? CurveSpec::polyline(std::move(curve.points))
                    : CurveSpec::sampled_table(std::move(curve.points));
  }
  cfg.curve.grid_samples = curve.grid_samples;

  if (growth.variant == "exp") {
    if (growth.have_breakpoints) {
      parse_fail(growth.breakpoints_line, "exp growth takes no breakpoints");
    }
    cfg.growth = GrowthSpec::exponential(growth.lambda, growth.beta);
  } else {
    if (!growth.have_breakpoints) {
      fail(ErrorCode::ValidationError,
           "growth.breakpoints: required for variant polyline");
    }
    if (growth.lambda_set || growth.beta_set) {
      fail(ErrorCode::ValidationError,
           "growth.lambda/beta: not used by the polyline variant");
    }
    cfg.growth = GrowthSpec::log_convex_polyline(std::move(growth.breakpoints));
  }

  if (!cfg.a_set) {
    fail(ErrorCode::ValidationError, "a: required in [map]");
  }
  if (!(cfg.a > 0.0)) {
    fail(ErrorCode::ValidationError, "a must be positive");
  }
  if (!(cfg.mu_target > 1.0)) {
    fail(ErrorCode::ValidationError, "mu_target must exceed 1");
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::IoFailure, "cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str());
}

GenExpMap build_map(const RunConfig& cfg) {
  ValidatedCurve curve = build_curve(cfg.curve);
  GrowthProfile growth = build_growth(cfg.growth, cfg.x_growth);
  try {
    return GenExpMap::build(std::move(curve), std::move(growth), cfg.a,
                            cfg.mu_target, cfg.mode);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotCertified ||
        e.code() == ErrorCode::CertificationFailed) {
      fail(ErrorCode::ValidationError, std::string("a: ") + e.what());
    }
    throw;
  }
}

}  // namespace genexp
