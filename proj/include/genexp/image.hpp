#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "genexp/classify.hpp"
#include "genexp/pullback.hpp"

namespace genexp {

// Binary pixmap (P6, 8-bit RGB): JCandidate pixels black, attracted pixels on
// a linear gray ramp by entry step (step 0 = white). Maps run without
// certification carry an "# uncertified" comment in the header.
std::vector<unsigned char> encode_ppm(const std::vector<Classification>& cells,
                                      std::size_t width, std::size_t height,
                                      std::size_t max_iter, bool uncertified);

void write_bytes(const std::string& path,
                 const std::vector<unsigned char>& bytes);  // IoFailure

// Grid CSV: header row, then one record per pixel with %.17g doubles, so a
// rewrite is byte-identical and a parse-back reproduces the matrix.
std::string grid_csv(const std::vector<Classification>& cells,
                     const GridJob& job);

struct GridCsv {
  std::size_t width = 0, height = 0;
  std::vector<Classification> cells;
};

GridCsv read_grid_csv(const std::string& path);  // IoFailure, ParseError

// Hair trace CSV: t,re,im,depth_used.
std::string trace_csv(const HairTrace& trace);

void write_text(const std::string& path, const std::string& text);

// 64-bit FNV-1a over a byte buffer; pins golden images in tests.
std::uint64_t fnv1a64(const unsigned char* data, std::size_t size);
std::uint64_t fnv1a64(const std::vector<unsigned char>& bytes);

}  // namespace genexp
