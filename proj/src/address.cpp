#include "genexp/address.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace genexp {

ExternalAddress ExternalAddress::zero_tail(std::vector<long long> prefix) {
  ExternalAddress a;
  a.prefix = std::move(prefix);
  a.tail = Tail::Zero;
  return a;
}

ExternalAddress ExternalAddress::constant_tail(long long k,
                                               std::vector<long long> prefix) {
  ExternalAddress a;
  a.prefix = std::move(prefix);
  a.tail = Tail::Constant;
  a.constant = k;
  return a;
}

ExternalAddress ExternalAddress::periodic_tail(std::vector<long long> period,
                                               std::vector<long long> prefix) {
  if (period.empty()) {
    fail(ErrorCode::MalformedSpec, "periodic tail needs a non-empty period");
  }
  ExternalAddress a;
  a.prefix = std::move(prefix);
  a.tail = Tail::Periodic;
  a.period = std::move(period);
  return a;
}

long long ExternalAddress::entry(std::size_t n) const {
  if (n < prefix.size()) return prefix[n];
  switch (tail) {
    case Tail::Zero: return 0;
    case Tail::Constant: return constant;
    case Tail::Periodic: return period[(n - prefix.size()) % period.size()];
  }
  return 0;
}

long long ExternalAddress::max_abs_entry() const {
  long long m = 0;
  for (long long s : prefix) m = std::max(m, std::llabs(s));
  switch (tail) {
    case Tail::Zero: break;
    case Tail::Constant: m = std::max(m, std::llabs(constant)); break;
    case Tail::Periodic:
      for (long long s : period) m = std::max(m, std::llabs(s));
      break;
  }
  return m;
}

ExternalAddress ExternalAddress::shifted() const {
  ExternalAddress a = *this;
  if (!a.prefix.empty()) {
    a.prefix.erase(a.prefix.begin());
  } else if (a.tail == Tail::Periodic) {
    std::rotate(a.period.begin(), a.period.begin() + 1, a.period.end());
  }
  return a;
}

ExternalAddress ExternalAddress::prepended(long long k) const {
  ExternalAddress a = *this;
  a.prefix.insert(a.prefix.begin(), k);
  return a;
}

namespace {

std::string trimmed(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

long long parse_int(const std::string& tok, const std::string& what) {
  const std::string t = trimmed(tok);
  if (t.empty()) {
    fail(ErrorCode::ParseError, "empty integer in " + what);
  }
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(t.c_str(), &end, 10);
  if (errno != 0 || end == t.c_str() || *end != '\0') {
    fail(ErrorCode::ParseError, "bad integer '" + t + "' in " + what);
  }
  return v;
}

std::vector<long long> parse_int_list(const std::string& text,
                                      const std::string& what) {
  std::vector<long long> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok =
        text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    out.push_back(parse_int(tok, what));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

std::string ExternalAddress::format() const {
  std::string out;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(prefix[i]);
  }
  out += '|';
  switch (tail) {
    case Tail::Zero:
      out += "zero";
      break;
    case Tail::Constant:
      out += "const:" + std::to_string(constant);
      break;
    case Tail::Periodic:
      out += "per:";
      for (std::size_t i = 0; i < period.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(period[i]);
      }
      break;
  }
  return out;
}

ExternalAddress ExternalAddress::parse(const std::string& text) {
  const std::size_t bar = text.find('|');
  if (bar == std::string::npos) {
    fail(ErrorCode::ParseError,
         "address '" + text + "' lacks the '|' tail separator");
  }
  if (text.find('|', bar + 1) != std::string::npos) {
    fail(ErrorCode::ParseError, "address '" + text + "' has two '|'");
  }
  const std::string head = trimmed(text.substr(0, bar));
  const std::string tail_text = trimmed(text.substr(bar + 1));

  std::vector<long long> prefix;
  if (!head.empty()) prefix = parse_int_list(head, "address prefix");

  if (tail_text == "zero") return zero_tail(std::move(prefix));
  if (tail_text.rfind("const:", 0) == 0) {
    return constant_tail(parse_int(tail_text.substr(6), "constant tail"),
                         std::move(prefix));
  }
  if (tail_text.rfind("per:", 0) == 0) {
    auto period = parse_int_list(tail_text.substr(4), "periodic tail");
    return periodic_tail(std::move(period), std::move(prefix));
  }
  fail(ErrorCode::ParseError,
       "unknown tail '" + tail_text + "' (want zero, const:k or per:a,b)");
}

int compare_lex(const ExternalAddress& a, const ExternalAddress& b) {
  const auto period_len = [](const ExternalAddress& s) -> std::size_t {
    return s.tail == ExternalAddress::Tail::Periodic ? s.period.size() : 1;
  };
  const std::size_t settle = std::max(a.prefix.size(), b.prefix.size());
  const std::size_t bound =
      settle + std::lcm(period_len(a), period_len(b));
  for (std::size_t n = 0; n < bound; ++n) {
    const long long ea = a.entry(n), eb = b.entry(n);
    if (ea < eb) return -1;
    if (ea > eb) return 1;
  }
  return 0;
}

}  // namespace genexp
