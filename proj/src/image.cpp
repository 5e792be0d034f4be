#include "genexp/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace genexp {

std::vector<unsigned char> encode_ppm(const std::vector<Classification>& cells,
                                      std::size_t width, std::size_t height,
                                      std::size_t max_iter, bool uncertified) {
  if (cells.size() != width * height || cells.empty()) {
    fail(ErrorCode::ValidationError, "matrix does not match the resolution");
  }
  std::string header = "P6\n";
  if (uncertified) header += "# uncertified\n";
  header += std::to_string(width) + " " + std::to_string(height) + "\n255\n";

  std::vector<unsigned char> out(header.begin(), header.end());
  out.reserve(out.size() + 3 * cells.size());
  for (const Classification& c : cells) {
    unsigned char v = 0;
    if (c.attracted()) {
      v = static_cast<unsigned char>(std::lround(
          255.0 * static_cast<double>(max_iter - c.step) /
          static_cast<double>(max_iter)));
    }
    out.push_back(v);
    out.push_back(v);
    out.push_back(v);
  }
  return out;
}

void write_bytes(const std::string& path,
                 const std::vector<unsigned char>& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::IoFailure, "cannot open " + path);
  f.write(reinterpret_cast<const char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (!f) fail(ErrorCode::IoFailure, "short write to " + path);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::IoFailure, "cannot open " + path);
  f << text;
  if (!f) fail(ErrorCode::IoFailure, "short write to " + path);
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string grid_csv(const std::vector<Classification>& cells,
                     const GridJob& job) {
  if (cells.size() != job.width * job.height) {
    fail(ErrorCode::ValidationError, "matrix does not match the job");
  }
  std::string out = "i,j,x,y,verdict,step,first_entry_re\n";
  for (std::size_t j = 0; j < job.height; ++j) {
    for (std::size_t i = 0; i < job.width; ++i) {
      const Classification& c = cells[j * job.width + i];
      out += std::to_string(i) + "," + std::to_string(j) + "," +
             fmt_double(job.pixel_x(i)) + "," + fmt_double(job.pixel_y(j)) +
             "," + (c.attracted() ? "attracted" : "jcandidate") + "," +
             std::to_string(c.step) + "," + fmt_double(c.first_entry_re) +
             "\n";
    }
  }
  return out;
}

GridCsv read_grid_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::IoFailure, "cannot open " + path);
  std::string line;
  if (!std::getline(f, line) ||
      line != "i,j,x,y,verdict,step,first_entry_re") {
    fail(ErrorCode::ParseError, "bad grid csv header in " + path);
  }
  GridCsv grid;
  std::size_t line_no = 1;
  while (std::getline(f, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string tok;
    std::vector<std::string> cols;
    while (std::getline(row, tok, ',')) cols.push_back(tok);
    if (cols.size() != 7) {
      fail(ErrorCode::ParseError,
           "line " + std::to_string(line_no) + ": want 7 columns");
    }
    const std::size_t i = std::stoull(cols[0]);
    const std::size_t j = std::stoull(cols[1]);
    grid.width = std::max(grid.width, i + 1);
    grid.height = std::max(grid.height, j + 1);
    Classification c;
    if (cols[4] == "attracted") {
      c.verdict = Classification::Verdict::AttractedCertified;
    } else if (cols[4] == "jcandidate") {
      c.verdict = Classification::Verdict::JCandidate;
    } else {
      fail(ErrorCode::ParseError,
           "line " + std::to_string(line_no) + ": bad verdict " + cols[4]);
    }
    c.step = std::stoull(cols[5]);
    c.first_entry_re = std::strtod(cols[6].c_str(), nullptr);
    grid.cells.push_back(c);
  }
  if (grid.cells.size() != grid.width * grid.height) {
    fail(ErrorCode::ParseError, "grid csv is not a full matrix");
  }
  return grid;
}

std::string trace_csv(const HairTrace& trace) {
  std::string out = "t,re,im,depth_used\n";
  for (const HairSample& s : trace.samples) {
    out += fmt_double(s.t) + "," + fmt_double(s.z.real()) + "," +
           fmt_double(s.z.imag()) + "," + std::to_string(trace.depth) + "\n";
  }
  return out;
}

std::uint64_t fnv1a64(const unsigned char* data, std::size_t size) {
  std::uint64_t h = 14695981039346656037ull;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= data[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t fnv1a64(const std::vector<unsigned char>& bytes) {
  return fnv1a64(bytes.data(), bytes.size());
}

}  // namespace genexp
