#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <vector>

#include "doctest.h"
#include "genexp/address.hpp"
#include "support.hpp"

using namespace genexp;
using testsupport::Rng;

TEST_CASE("entry reading across tail rules") {
  const ExternalAddress z = ExternalAddress::zero_tail({5, 3});
  CHECK(z.entry(0) == 5);
  CHECK(z.entry(1) == 3);
  CHECK(z.entry(2) == 0);
  CHECK(z.entry(100) == 0);

  const ExternalAddress c = ExternalAddress::constant_tail(2, {1});
  CHECK(c.entry(0) == 1);
  CHECK(c.entry(1) == 2);
  CHECK(c.entry(77) == 2);

  const ExternalAddress p = ExternalAddress::periodic_tail({0, 1});
  for (int n = 0; n < 20; ++n) CHECK(p.entry(n) == n % 2);

  const ExternalAddress q = ExternalAddress::periodic_tail({4, -7}, {3});
  CHECK(q.entry(0) == 3);
  CHECK(q.entry(1) == 4);
  CHECK(q.entry(2) == -7);
  CHECK(q.entry(3) == 4);
  CHECK(q.max_abs_entry() == 7);
  CHECK(z.max_abs_entry() == 5);
  CHECK(ExternalAddress::zero_tail().max_abs_entry() == 0);
}

TEST_CASE("shift and prepend") {
  const ExternalAddress p = ExternalAddress::periodic_tail({0, 1});
  const ExternalAddress s = p.shifted();
  for (int n = 0; n < 16; ++n) CHECK(s.entry(n) == p.entry(n + 1));
  CHECK(compare_lex(s, ExternalAddress::periodic_tail({1, 0})) == 0);

  const ExternalAddress z = ExternalAddress::zero_tail({5});
  CHECK(compare_lex(z.shifted(), ExternalAddress::zero_tail()) == 0);

  Rng rng(41);
  for (int i = 0; i < 500; ++i) {
    std::vector<long long> prefix;
    for (int j = rng.integer(0, 3); j > 0; --j) {
      prefix.push_back(rng.integer(-4, 4));
    }
    ExternalAddress a;
    switch (rng.integer(0, 2)) {
      case 0: a = ExternalAddress::zero_tail(prefix); break;
      case 1: a = ExternalAddress::constant_tail(rng.integer(-4, 4), prefix); break;
      default: {
        std::vector<long long> per;
        for (int j = rng.integer(1, 3); j > 0; --j) {
          per.push_back(rng.integer(-4, 4));
        }
        a = ExternalAddress::periodic_tail(per, prefix);
      }
    }
    const long long k = rng.integer(-9, 9);
    // prepending then shifting restores the sequence
    CHECK(compare_lex(a.prepended(k).shifted(), a) == 0);
    CHECK(a.prepended(k).entry(0) == k);
    for (int n = 0; n < 8; ++n) {
      CHECK(a.prepended(k).entry(n + 1) == a.entry(n));
      CHECK(a.shifted().entry(n) == a.entry(n + 1));
    }
  }
}

TEST_CASE("text format and parse") {
  CHECK(ExternalAddress::zero_tail().format() == "|zero");
  CHECK(ExternalAddress::periodic_tail({0, 1}, {0, 1}).format() ==
        "0,1|per:0,1");
  CHECK(ExternalAddress::constant_tail(3, {5}).format() == "5|const:3");

  for (const std::string text :
       {"|zero", "0,1|per:0,1", "5|const:3", "-2,7|zero", "|const:-11",
        "|per:3"}) {
    const ExternalAddress a = ExternalAddress::parse(text);
    CHECK(a.format() == text);
  }
  Rng rng(42);
  for (int i = 0; i < 500; ++i) {
    std::vector<long long> per = {rng.integer(-1000, 1000),
                                  rng.integer(-1000, 1000)};
    const ExternalAddress a =
        ExternalAddress::periodic_tail(per, {rng.integer(-1000, 1000)});
    const ExternalAddress b = ExternalAddress::parse(a.format());
    CHECK(compare_lex(a, b) == 0);
    CHECK(a.format() == b.format());
  }
}

TEST_CASE("parse rejections") {
  // incidental whitespace around tokens is tolerated and canonicalized away
  CHECK(ExternalAddress::parse(" |zero").format() == "|zero");
  CHECK(ExternalAddress::parse(" 0 , 1 |per: 0,1").format() == "0,1|per:0,1");
  for (const std::string bad :
       {"", "0,1", "|per:", "|bogus:3", "1.5|zero", "a|zero", "0,|zero",
        "|zero|zero", "|const:", "|const:x", "|per:1,"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(ExternalAddress::parse(bad), Error);
  }
  try {
    ExternalAddress::parse("|bogus:3");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
  CHECK_THROWS_AS(ExternalAddress::periodic_tail({}), Error);
}

TEST_CASE("lexicographic comparison") {
  const ExternalAddress zero = ExternalAddress::zero_tail();
  const ExternalAddress one = ExternalAddress::constant_tail(1);
  CHECK(compare_lex(zero, one) == -1);
  CHECK(compare_lex(one, zero) == 1);
  CHECK(compare_lex(zero, ExternalAddress::constant_tail(0)) == 0);
  CHECK(compare_lex(ExternalAddress::constant_tail(-1), zero) == -1);
  // same sequence written with different structure
  CHECK(compare_lex(ExternalAddress::periodic_tail({0, 1}),
                    ExternalAddress::periodic_tail({0, 1, 0, 1})) == 0);
  CHECK(compare_lex(ExternalAddress::periodic_tail({0, 1}),
                    ExternalAddress::periodic_tail({1, 0}, {0})) == 0);
  CHECK(compare_lex(ExternalAddress::zero_tail({1}),
                    ExternalAddress::zero_tail({0})) == 1);
  // differs first at entry 3
  CHECK(compare_lex(ExternalAddress::zero_tail({0, 0, 0, -1}), zero) == -1);

  Rng rng(43);
  for (int i = 0; i < 2000; ++i) {
    auto random_addr = [&rng]() {
      std::vector<long long> prefix;
      for (int j = rng.integer(0, 3); j > 0; --j) {
        prefix.push_back(rng.integer(-2, 2));
      }
      switch (rng.integer(0, 2)) {
        case 0: return ExternalAddress::zero_tail(prefix);
        case 1:
          return ExternalAddress::constant_tail(rng.integer(-2, 2), prefix);
        default: {
          std::vector<long long> per;
          for (int j = rng.integer(1, 4); j > 0; --j) {
            per.push_back(rng.integer(-2, 2));
          }
          return ExternalAddress::periodic_tail(per, prefix);
        }
      }
    };
    const ExternalAddress a = random_addr();
    const ExternalAddress b = random_addr();
    const int ab = compare_lex(a, b);
    CHECK(ab == -compare_lex(b, a));
    CHECK(compare_lex(a, a) == 0);
    // agreement with direct entry comparison on a decisive window:
    // prefixes <= 3 and periods <= 4, so 3 + lcm(1..4) + 12 entries decide
    int direct = 0;
    for (int n = 0; n < 64; ++n) {
      if (a.entry(n) != b.entry(n)) {
        direct = a.entry(n) < b.entry(n) ? -1 : 1;
        break;
      }
    }
    CHECK(ab == direct);
  }
}
