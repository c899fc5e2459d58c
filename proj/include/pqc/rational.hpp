#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace pqc {

/// Exact arbitrary-precision rational scalar. Every quantity in the engine
/// is a Rat; the core contains no floating point.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Strict "p/q" (or "p") parser; throws on malformed input.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  mpq_class r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: '" + s + "'");
  if (r.get_den() == 0)
    throw std::invalid_argument("zero denominator in rational literal: '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

}  // namespace pqc
