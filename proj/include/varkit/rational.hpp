#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "varkit/errors.hpp"

namespace varkit {

// Exact arbitrary-precision rational scalar. All geometry in this library is
// computed over Rat; no operation rounds.
using Rat = mpq_class;

using RatVec = std::vector<Rat>;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw ParseError("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Parses "p", "-p/q" or decimal-free integer strings. Throws on zero
// denominators and garbage.
inline Rat rat_parse(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
      throw ParseError("bad rational literal: " + s);
  }
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw ParseError("bad rational literal: " + s);
  if (q.get_den() == 0) throw ParseError("zero denominator: " + s);
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline int sgn(const Rat& q) { return mpq_sgn(q.get_mpq_t()); }

inline Rat rat_abs(const Rat& q) { return sgn(q) < 0 ? Rat(-q) : q; }

// A rational extended with +infinity; used for norms and moduli, which are
// genuinely infinite when the Aubin property fails.
struct ExtRat {
  bool infinite = false;
  Rat value;  // meaningful only when finite

  ExtRat() = default;
  explicit ExtRat(Rat v) : infinite(false), value(std::move(v)) {}
  static ExtRat inf() {
    ExtRat e;
    e.infinite = true;
    return e;
  }
  bool is_inf() const { return infinite; }

  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.value == b.value;
  }
  friend bool operator<(const ExtRat& a, const ExtRat& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.value < b.value;
  }
  friend bool operator<=(const ExtRat& a, const ExtRat& b) { return a == b || a < b; }
};

inline ExtRat ext_max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }

inline std::string ext_str(const ExtRat& e) { return e.is_inf() ? "inf" : rat_str(e.value); }

}  // namespace varkit
