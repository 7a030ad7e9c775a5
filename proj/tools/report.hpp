#pragma once

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "zcover/field.hpp"

namespace zcover::cli {

// Decimal approximation accurate to 1e-12, derived from the exact enclosure
// so the printed digits never depend on floating-point state.
inline std::string approx12(const FieldElement& x) {
  auto [lo, hi] = x.approx(44);  // 2^-44 < 1e-13
  Rat mid = (lo + hi) * Rat(1, 2);
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, 12);
  Rat shifted = mid * Rat(scale) + Rat(1, 2);
  Int units;
  mpz_fdiv_q(units.get_mpz_t(), shifted.get_num().get_mpz_t(), shifted.get_den().get_mpz_t());
  bool neg = units < 0;
  Int mag = abs(units);
  Int whole = mag / scale, frac = mag % scale;
  std::string digits = frac.get_str();
  digits.insert(0, 12 - digits.size(), '0');
  return (neg ? "-" : "") + whole.get_str() + "." + digits;
}

// Exact literal and its 1e-12 approximation as two adjacent CSV cells.
inline std::string exact_cells(const FieldElement& x) {
  return x.to_string() + "," + approx12(x);
}

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// "# zcover <verb>" followed by the fully resolved configuration, one
// "key=value" per entry, so identical invocations are visibly identical.
inline std::string header(const std::string& verb,
                          const std::vector<std::pair<std::string, std::string>>& config) {
  std::string out = "# zcover " + verb + "\n";
  if (config.empty()) return out;
  out += "#";
  for (const auto& [k, v] : config) out += " " + k + "=" + v;
  out += "\n";
  return out;
}

}  // namespace zcover::cli
