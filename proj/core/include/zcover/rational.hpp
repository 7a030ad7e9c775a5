#pragma once

#include <gmpxx.h>

#include <string>

#include "zcover/errors.hpp"

namespace zcover {

using Int = mpz_class;
using Rat = mpq_class;

inline int sgn(const Rat& q) { return sgn(q.get_num()); }
inline int sgn(const Int& z) { return mpz_sgn(z.get_mpz_t()); }

inline Rat abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

// "p" or "p/q", arbitrary precision, canonicalized.
Rat parse_rat(const std::string& text);

// Canonical form: "p" when the denominator is 1, else "p/q".
std::string rat_to_string(const Rat& q);

// Nearest-ish double; fine for display and float fallbacks.
inline double to_double(const Rat& q) { return q.get_d(); }

}  // namespace zcover
