#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "genexp/errors.hpp"

namespace genexp {

// Integer sequence s_0 s_1 ... given as a finite prefix plus a tail rule.
// Arbitrary sequences would make ordering and boundedness undecidable from
// finite data; every address used here is eventually constant or periodic.
struct ExternalAddress {
  enum class Tail { Zero, Constant, Periodic };

  std::vector<long long> prefix;
  Tail tail = Tail::Zero;
  long long constant = 0;          // Tail::Constant
  std::vector<long long> period;   // Tail::Periodic, never empty

  static ExternalAddress zero_tail(std::vector<long long> prefix = {});
  static ExternalAddress constant_tail(long long k,
                                       std::vector<long long> prefix = {});
  static ExternalAddress periodic_tail(std::vector<long long> period,
                                       std::vector<long long> prefix = {});

  long long entry(std::size_t n) const;
  long long max_abs_entry() const;  // sup |s_n|, finite by construction

  ExternalAddress shifted() const;             // drop s_0, rotate periods
  ExternalAddress prepended(long long k) const;

  // Text form: comma-joined prefix, '|', then "zero", "const:k" or
  // "per:a,b,...". Examples: "|zero", "0,1|per:0,1", "5|const:3".
  std::string format() const;
  static ExternalAddress parse(const std::string& text);  // ParseError
};

// Lexicographic three-way comparison (-1, 0, +1). Both sequences are
// eventually periodic, so agreement up to max prefix length plus the lcm of
// the tail periods decides equality.
int compare_lex(const ExternalAddress& a, const ExternalAddress& b);

}  // namespace genexp
