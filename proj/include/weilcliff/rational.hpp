#pragma once

#include <gmpxx.h>

#include <string>

#include "weilcliff/errors.hpp"

namespace weilcliff {

// Exact rational coefficients. mpq_class keeps values canonical under
// arithmetic; parsing goes through parse_rat so malformed input is caught
// with a ParseError instead of a GMP abort.
using Rat = mpq_class;

inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw ParseError("bad rational literal: " + s);
  bool seen_slash = false;
  for (std::size_t k = i; k < s.size(); ++k) {
    char c = s[k];
    if (c == '/') {
      if (seen_slash || k == i || k + 1 == s.size())
        throw ParseError("bad rational literal: " + s);
      seen_slash = true;
      continue;
    }
    if (c < '0' || c > '9') throw ParseError("bad rational literal: " + s);
  }
  Rat q(s);
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

// FNV-1a, used for input digests and certificate residual hashes in reports.
inline std::uint64_t fnv1a(const std::string& data, std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace weilcliff
