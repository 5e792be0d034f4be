#include "genexp/cli.hpp"

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "genexp/classify.hpp"
#include "genexp/config.hpp"
#include "genexp/image.hpp"
#include "genexp/pullback.hpp"
#include "genexp/symbolic.hpp"

namespace genexp::cli {

namespace {

std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::ValidationError:
    case ErrorCode::MalformedSpec:
    case ErrorCode::EndpointMismatch:
    case ErrorCode::PointOutsideHalfDisc:
    case ErrorCode::NonMonotoneArgument:
    case ErrorCode::NotIncreasing:
    case ErrorCode::DerivativeNotMonotone:
    case ErrorCode::NoGrowth:
    case ErrorCode::DegenerateLipschitz:
    case ErrorCode::NotCertified:
    case ErrorCode::CertificationFailed:
    case ErrorCode::NoSuchM:
    case ErrorCode::InvalidWindow:
    case ErrorCode::ResolutionTooLarge:
      return 1;
    default:
      return 2;
  }
}

Complex parse_point(const std::string& text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos) {
    fail(ErrorCode::ValidationError, "point: want re,im");
  }
  char* end = nullptr;
  const double re = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + comma) {
    fail(ErrorCode::ValidationError, "point: bad real part");
  }
  const std::string rest = text.substr(comma + 1);
  const double im = std::strtod(rest.c_str(), &end);
  if (end != rest.c_str() + rest.size() || rest.empty()) {
    fail(ErrorCode::ValidationError, "point: bad imaginary part");
  }
  return {re, im};
}

void parse_window(const std::string& text, GridJob& job) {
  double v[4];
  std::size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    const std::size_t comma = text.find(',', pos);
    const bool last = i == 3;
    if (last != (comma == std::string::npos)) {
      fail(ErrorCode::ValidationError, "window: want x0,x1,y0,y1");
    }
    const std::string tok =
        text.substr(pos, last ? std::string::npos : comma - pos);
    char* end = nullptr;
    v[i] = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size()) {
      fail(ErrorCode::ValidationError, "window: bad number '" + tok + "'");
    }
    pos = comma + 1;
  }
  job.x_min = v[0];
  job.x_max = v[1];
  job.y_min = v[2];
  job.y_max = v[3];
}

void parse_res(const std::string& text, GridJob& job) {
  const std::size_t x = text.find('x');
  if (x == std::string::npos) {
    fail(ErrorCode::ValidationError, "res: want WxH");
  }
  try {
    job.width = std::stoull(text.substr(0, x));
    job.height = std::stoull(text.substr(x + 1));
  } catch (const std::exception&) {
    fail(ErrorCode::ValidationError, "res: bad dimensions '" + text + "'");
  }
}

std::string verdict_text(const Classification& c) {
  if (c.attracted()) {
    return "attracted step=" + std::to_string(c.step) +
           " first_entry_re=" + fmt12(c.first_entry_re);
  }
  return "jcandidate iterations=" + std::to_string(c.step);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"generalised exponential map toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string mode_override;
  std::uint64_t seed_override = 0;
  bool seed_set = false;
  app.add_option("--config", config_path, "run configuration file")
      ->required();
  app.add_option("--mode", mode_override, "certified|uncertified override");
  app.add_option("--seed", seed_override, "sampling seed override")
      ->each([&](const std::string&) { seed_set = true; });

  auto* c_validate = app.add_subcommand("validate", "build and certify");
  auto* c_constants = app.add_subcommand("constants", "derived constants");

  auto* c_classify = app.add_subcommand("classify", "basin verdict");
  std::string point_text;
  std::size_t max_iter = 50;
  c_classify->add_option("--point", point_text, "re,im")->required();
  c_classify->add_option("--max-iter", max_iter, "iteration budget");

  auto* c_render = app.add_subcommand("render", "escape grid image");
  GridJob job{-8.0, 4.0, -8.0, 8.0, 256, 256, 50};
  std::string window_text, res_text, out_path, csv_path;
  c_render->add_option("--window", window_text, "x0,x1,y0,y1");
  c_render->add_option("--res", res_text, "WxH");
  c_render->add_option("--max-iter", job.max_iter, "iteration budget");
  c_render->add_option("--out", out_path, "output pixmap path")->required();
  c_render->add_option("--csv", csv_path, "also dump the grid as csv");

  auto* c_address = app.add_subcommand("address", "tract itinerary");
  c_address->add_option("--point", point_text, "re,im")->required();
  c_address->add_option("--max-iter", max_iter, "entries to read");

  std::string addr_text;
  std::size_t depth = 12, samples = 64;
  double t_max = 10.0, tol = 1e-8, x_max = 1000.0;

  auto* c_hair = app.add_subcommand("hair", "trace a hair by pullback");
  c_hair->add_option("--address", addr_text, "external address")->required();
  c_hair->add_option("--depth", depth, "pullback depth");
  c_hair->add_option("--t-max", t_max, "parameter range");
  c_hair->add_option("--samples", samples, "sample count");
  c_hair->add_option("--out", out_path, "csv output path")->required();

  auto* c_endpoint = app.add_subcommand("endpoint", "hair endpoint");
  c_endpoint->add_option("--address", addr_text, "external address")
      ->required();
  c_endpoint->add_option("--tol", tol, "target accuracy");

  auto* c_admissible = app.add_subcommand("admissible", "g-bounded check");
  c_admissible->add_option("--address", addr_text, "external address")
      ->required();
  std::size_t adm_n = 8;
  c_admissible->add_option("--max-iter", adm_n, "inequality depth");
  c_admissible->add_option("--x-max", x_max, "witness scan bound");

  auto* c_shadow = app.add_subcommand("shadow-check", "shadowing squares");
  c_shadow->add_option("--address", addr_text, "external address")->required();
  c_shadow->add_option("--depth", depth, "levels to verify");

  auto* c_accumulate = app.add_subcommand("accumulate", "2-pi-i neighbours");
  c_accumulate->add_option("--point", point_text, "re,im")->required();
  c_accumulate->add_option("--depth", depth, "pullback length p");

  std::vector<const char*> argv;
  argv.push_back("genexp");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    RunConfig cfg = parse_config_file(config_path);
    if (mode_override == "certified") {
      cfg.mode = Mode::Certified;
    } else if (mode_override == "uncertified") {
      cfg.mode = Mode::Uncertified;
    } else if (!mode_override.empty()) {
      fail(ErrorCode::ValidationError, "mode: certified|uncertified");
    }
    if (seed_set) cfg.seed = seed_override;

    const GenExpMap map = build_map(cfg);
    const DerivedConstants& k = map.constants();

    if (app.got_subcommand(c_validate)) {
      out << "ok: map built in "
          << (map.certified() ? "certified" : "uncertified") << " mode\n";
      out << "a = " << fmt12(map.a()) << ", a_min = " << fmt12(k.a_min)
          << "\n";
      return 0;
    }

    if (app.got_subcommand(c_constants)) {
      out << "mu = " << fmt12(k.mu) << "\n";
      out << "h_min = " << fmt12(k.h_min) << "\n";
      out << "c_h = " << fmt12(k.c_h) << "\n";
      out << "L = " << fmt12(k.L) << "\n";
      out << "c = " << fmt12(k.c) << "\n";
      out << "M = " << fmt12(k.M) << "\n";
      out << "m = " << fmt12(k.m) << "\n";
      out << "a_min = " << fmt12(k.a_min) << "\n";
      out << "K = " << fmt12(k.K) << "\n";
      if (k.xi) {
        out << "xi = " << fmt12(k.xi->real()) << " " << fmt12(k.xi->imag())
            << "\n";
      } else {
        out << "xi = unavailable\n";
      }
      out << "certified = " << (map.certified() ? "yes" : "no") << "\n";
      return 0;
    }

    if (app.got_subcommand(c_classify)) {
      const Classification c =
          classify_point(map, parse_point(point_text), max_iter);
      out << verdict_text(c) << "\n";
      return 0;
    }

    if (app.got_subcommand(c_render)) {
      if (!window_text.empty()) parse_window(window_text, job);
      if (!res_text.empty()) parse_res(res_text, job);
      const auto cells = render_grid(map, job);
      const auto bytes = encode_ppm(cells, job.width, job.height,
                                    job.max_iter, !map.certified());
      write_bytes(out_path, bytes);
      if (!csv_path.empty()) write_text(csv_path, grid_csv(cells, job));
      char digest[24];
      std::snprintf(digest, sizeof digest, "%016llx",
                    static_cast<unsigned long long>(fnv1a64(bytes)));
      out << "wrote " << out_path << " (" << job.width << "x" << job.height
          << (map.certified() ? "" : ", uncertified") << ") digest=" << digest
          << "\n";
      return 0;
    }

    if (app.got_subcommand(c_address)) {
      const AddressPrefix ap =
          partial_address(map, parse_point(point_text), max_iter);
      out << "entries =";
      for (long long e : ap.entries) out << " " << e;
      out << "\n";
      if (ap.complete) {
        out << "status = all-in-tracts\n";
      } else {
        out << "status = left-tract-at " << ap.left_at << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(c_hair)) {
      const ExternalAddress addr = ExternalAddress::parse(addr_text);
      const HairTrace trace = trace_hair(map, addr, depth, t_max, samples);
      write_text(out_path, trace_csv(trace));
      out << "wrote " << out_path << " (" << trace.samples.size()
          << " samples, depth " << trace.depth << ")\n";
      out << "endpoint_estimate = " << fmt12(trace.endpoint_estimate.real())
          << " " << fmt12(trace.endpoint_estimate.imag()) << "\n";
      out << "cauchy_gap = " << fmt12(trace.cauchy_gap) << "\n";
      return 0;
    }

    if (app.got_subcommand(c_endpoint)) {
      const ExternalAddress addr = ExternalAddress::parse(addr_text);
      const EndpointResult ep = endpoint_detail(map, addr, tol);
      out << "endpoint = " << fmt12(ep.value.real()) << " "
          << fmt12(ep.value.imag()) << "\n";
      out << "error_bound = " << fmt12(ep.error_bound) << "\n";
      out << "depth = " << ep.depth << "\n";
      out << "cauchy_gap = " << fmt12(ep.cauchy_gap) << "\n";
      return 0;
    }

    if (app.got_subcommand(c_admissible)) {
      const ExternalAddress addr = ExternalAddress::parse(addr_text);
      const GBoundedness gb = is_g_bounded(map, addr, adm_n, x_max);
      switch (gb.verdict) {
        case GBoundedness::Verdict::Bounded:
          out << "bounded witness_x0 = " << fmt12(gb.witness_x0) << "\n";
          break;
        case GBoundedness::Verdict::Unbounded:
          out << "unbounded at n = " << gb.evidence_n << "\n";
          break;
        case GBoundedness::Verdict::Inconclusive:
          out << "inconclusive up to x_max = " << fmt12(x_max) << "\n";
          break;
      }
      return 0;
    }

    if (app.got_subcommand(c_shadow)) {
      const ExternalAddress addr = ExternalAddress::parse(addr_text);
      const ShadowParams params = build_shadow_params(map, addr, depth);
      out << "kappa = " << fmt12(params.kappa)
          << ", delta = " << fmt12(params.delta)
          << ", x0'' = " << fmt12(params.x0pp)
          << ", r0 = " << fmt12(params.r0) << "\n";
      const auto report = verify_shadowing(map, params, depth);
      bool all = true;
      for (std::size_t n = 0; n < report.size(); ++n) {
        const ShadowLevel& lvl = report[n];
        all = all && lvl.pullback_ok;
        out << "level " << n << ": pullback="
            << (lvl.pullback_ok ? "ok" : "FAIL")
            << " annulus=" << (lvl.annulus_ok ? "ok" : "fail")
            << (lvl.scale_free ? " (scale-free)" : "")
            << " dx=[" << fmt12(lvl.dx_min) << ", " << fmt12(lvl.dx_max)
            << "]";
        if (lvl.outside_H > 0) out << " outside_H=" << lvl.outside_H;
        out << "\n";
      }
      out << (all ? "all levels contained\n" : "containment failed\n");
      return 0;
    }

    if (app.got_subcommand(c_accumulate)) {
      const AccumulatePair pair =
          accumulate(map, parse_point(point_text), depth);
      out << "z_minus = " << fmt12(pair.z_minus.real()) << " "
          << fmt12(pair.z_minus.imag()) << "\n";
      out << "z_plus = " << fmt12(pair.z_plus.real()) << " "
          << fmt12(pair.z_plus.imag()) << "\n";
      out << "addr_minus =";
      for (long long e : pair.addr_minus) out << " " << e;
      out << "\naddr_plus =";
      for (long long e : pair.addr_plus) out << " " << e;
      out << "\nresolved = " << (pair.displacement_resolved ? "yes" : "no")
          << "\n";
      return 0;
    }

    err << "error: no subcommand dispatched\n";
    return 1;
  } catch (const Error& e) {
    err << error_code_name(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace genexp::cli
