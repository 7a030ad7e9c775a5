#pragma once

#include <utility>
#include <vector>

#include "zcover/rational.hpp"

namespace zcover::polyq {

// Dense univariate polynomials over Q, coefficient i of x^i.  A normalized
// polynomial has no trailing zero coefficients; the zero polynomial is {}.
using Poly = std::vector<Rat>;

Poly normalized(Poly p);
int degree(const Poly& p);  // -1 for zero
bool is_zero(const Poly& p);

Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& a, const Rat& c);
Poly derivative(const Poly& p);

// Euclidean division; divisor must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);

Rat eval(const Poly& p, const Rat& x);

// Interval Horner: encloses p([lo, hi]) for lo <= hi.
std::pair<Rat, Rat> eval_interval(const Poly& p, const Rat& lo, const Rat& hi);

// Monic gcd, zero if both inputs are zero.
Poly gcd(const Poly& a, const Poly& b);

// g = gcd(a, b) together with u, v such that u*a + v*b = g.
struct ExtGcd {
  Poly g, u, v;
};
ExtGcd ext_gcd(const Poly& a, const Poly& b);

// Number of distinct real roots of a squarefree p in the open interval
// (lo, hi), by Sturm's theorem.  Endpoints must not be roots.
int count_roots(const Poly& p, const Rat& lo, const Rat& hi);

}  // namespace zcover::polyq
