#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "zcover/errors.hpp"
#include "zcover/polynomial.hpp"
#include "zcover/rational.hpp"

namespace zcover {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// A real number field Q(r) presented by a monic irreducible integer
// polynomial together with a rational interval isolating one real root r.
// Elements are coordinate vectors in the power basis 1, r, ..., r^(d-1).
//
// All arithmetic is exact.  Sign determination first checks for the symbolic
// zero, then refines the root enclosure until interval evaluation of the
// element's coordinate polynomial excludes zero; that terminates because a
// nonzero polynomial of degree < d cannot vanish at a root of an irreducible
// degree-d polynomial.
//
// Degrees up to 4 are supported; that covers every construction shipped here
// (Q, Q(sqrt 2), Q(sqrt 3), Q(golden), and the quartic cosine fields for the
// larger regular n-gon pairs).
class Field : public std::enable_shared_from_this<Field> {
 public:
  // min_poly holds integer coefficients c0..cd of a monic polynomial
  // (cd == 1).  (lo, hi) must give a strict sign change and contain exactly
  // one root.  Throws not_monic, unsupported_degree, reducible,
  // no_sign_change.
  static FieldPtr create(std::vector<Int> min_poly, Rat lo, Rat hi);

  // The shared degree-1 field Q.
  static const FieldPtr& rationals();

  int degree() const { return static_cast<int>(min_poly_.size()) - 1; }
  const std::vector<Int>& min_poly() const { return min_poly_; }
  std::pair<Rat, Rat> initial_interval() const { return {given_lo_, given_hi_}; }

  // Enclosure of the root with hi - lo <= width (width > 0).
  std::pair<Rat, Rat> refine_root(const Rat& width) const;

  // Structural identity: same minimal polynomial and the two root intervals
  // select the same root.  Distinct Field objects can satisfy this (e.g. the
  // same field parsed from two files).
  bool same_field(const Field& other) const;

  const polyq::Poly& min_poly_q() const { return min_poly_q_; }
  std::pair<Rat, Rat> cached_enclosure() const { return {lo_, hi_}; }
  int sign_at_lo() const { return sign_lo_; }

 private:
  Field() = default;

  std::vector<Int> min_poly_;
  polyq::Poly min_poly_q_;
  Rat given_lo_, given_hi_;
  Rat lo_, hi_;  // tightened at creation, immutable afterwards
  int sign_lo_ = 0;
};

class FieldElement {
 public:
  // Zero over Q.
  FieldElement();

  static FieldElement from_rational(FieldPtr f, Rat c);
  static FieldElement from_coords(FieldPtr f, std::vector<Rat> coords);
  static FieldElement generator(FieldPtr f);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rat>& coords() const { return coords_; }

  bool is_zero() const;
  bool is_rational() const;
  Rat as_rational() const;  // bad_argument if not rational

  int sign() const;
  // Enclosure with hi - lo <= 2^-bits.
  std::pair<Rat, Rat> approx(int bits) const;
  double to_double() const;

  // Literal form, e.g. "1/2 - 3*r + r^2"; parse_element inverts it exactly.
  std::string to_string() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
  friend bool operator<(const FieldElement& a, const FieldElement& b) { return (a - b).sign() < 0; }
  friend bool operator>(const FieldElement& a, const FieldElement& b) { return (a - b).sign() > 0; }
  friend bool operator<=(const FieldElement& a, const FieldElement& b) { return (a - b).sign() <= 0; }
  friend bool operator>=(const FieldElement& a, const FieldElement& b) { return (a - b).sign() >= 0; }

 private:
  FieldElement(FieldPtr f, std::vector<Rat> c) : field_(std::move(f)), coords_(std::move(c)) {}

  // Rewrites *this and o into a common field; throws field_mismatch if the
  // fields are genuinely different.  Degree-1 operands promote into the
  // other side's field (Q embeds everywhere).
  static void align(FieldElement& a, FieldElement& b);

  FieldPtr field_;
  std::vector<Rat> coords_;
};

// Mixed arithmetic with plain rationals promotes the rational side.
inline FieldElement operator+(FieldElement a, const Rat& b) { return a += FieldElement::from_rational(Field::rationals(), b); }
inline FieldElement operator+(const Rat& a, FieldElement b) { return b += FieldElement::from_rational(Field::rationals(), a); }
inline FieldElement operator-(FieldElement a, const Rat& b) { return a -= FieldElement::from_rational(Field::rationals(), b); }
inline FieldElement operator-(const Rat& a, const FieldElement& b) { return FieldElement::from_rational(Field::rationals(), a) - b; }
inline FieldElement operator*(FieldElement a, const Rat& b) { return a *= FieldElement::from_rational(Field::rationals(), b); }
inline FieldElement operator*(const Rat& a, FieldElement b) { return b *= FieldElement::from_rational(Field::rationals(), a); }
inline FieldElement operator/(FieldElement a, const Rat& b) { return a /= FieldElement::from_rational(Field::rationals(), b); }

// Parses the literal grammar emitted by FieldElement::to_string: a sum of
// terms `c`, `c*r`, `c*r^k`, `r`, `r^k` joined by + or -.  Exponents >= the
// field degree are reduced modulo the minimal polynomial.
FieldElement parse_element(const FieldPtr& f, const std::string& text);

}  // namespace zcover
