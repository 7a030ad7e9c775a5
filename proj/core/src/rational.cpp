#include "zcover/rational.hpp"

#include <cctype>

namespace zcover {

Rat parse_rat(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  if (s.empty()) throw Error(Errc::bad_literal, "empty rational");
  mpq_t q;
  mpq_init(q);
  if (mpq_set_str(q, s.c_str(), 10) != 0 || mpz_sgn(mpq_denref(q)) == 0) {
    mpq_clear(q);
    throw Error(Errc::bad_literal, "not a rational: '" + text + "'");
  }
  mpq_canonicalize(q);
  Rat r(q);
  mpq_clear(q);
  return r;
}

std::string rat_to_string(const Rat& q) { return q.get_str(); }

}  // namespace zcover
