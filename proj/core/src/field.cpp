#include "zcover/field.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>

namespace zcover {

namespace {

using polyq::Poly;

Poly to_poly(const std::vector<Int>& c) {
  Poly p(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) p[i] = Rat(c[i]);
  return polyq::normalized(std::move(p));
}

std::vector<Int> divisors_with_sign(const Int& n) {
  // All d with d | n, both signs.  n != 0.
  Int a = ::abs(n);
  std::vector<Int> out;
  Int i = 1;
  for (; i * i <= a; ++i) {
    if (a % i == 0) {
      out.push_back(i);
      if (i * i != a) out.push_back(a / i);
    }
  }
  std::size_t k = out.size();
  for (std::size_t j = 0; j < k; ++j) out.push_back(-out[j]);
  return out;
}

bool has_integer_root(const Poly& p) {
  // Monic with integer coefficients, so any rational root is an integer
  // dividing the constant term.
  if (p[0] == 0) return true;
  for (const Int& r : divisors_with_sign(p[0].get_num()))
    if (polyq::eval(p, Rat(r)) == 0) return true;
  return false;
}

bool is_perfect_square(const Int& n, Int& root) {
  if (n < 0) return false;
  mpz_class s, r;
  mpz_sqrtrem(s.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
  if (r != 0) return false;
  root = s;
  return true;
}

// Does the monic integer quartic split into two monic integer quadratics?
// Rational factorizations of a monic integer polynomial have integer
// coefficients (Gauss), so searching integer (b, d) with b*d = p0 is enough.
bool quartic_has_quadratic_factor(const Poly& p) {
  const Int p3 = p[3].get_num(), p2 = p[2].get_num(), p1 = p[1].get_num(), p0 = p[0].get_num();
  std::vector<Int> bs;
  if (p0 == 0) return true;  // x divides
  bs = divisors_with_sign(p0);
  for (const Int& b : bs) {
    Int d = p0 / b;
    // (x^2+ax+b)(x^2+cx+d): a+c = p3, b+d+ac = p2, ad+bc = p1.
    if (b != d) {
      Int num = p1 - p3 * b;
      Int den = d - b;
      if (num % den != 0) continue;
      Int a = num / den;
      Int c = p3 - a;
      if (b + d + a * c == p2) return true;
    } else {
      if (b * p3 != p1) continue;
      // a+c = p3 and ac = p2 - 2b need an integer solution.
      Int disc = p3 * p3 - 4 * (p2 - 2 * b);
      Int s;
      if (is_perfect_square(disc, s) && (p3 + s) % 2 == 0) return true;
    }
  }
  return false;
}

void check_irreducible(const Poly& p) {
  const int d = polyq::degree(p);
  if (d <= 1) return;
  if (polyq::degree(polyq::gcd(p, polyq::derivative(p))) > 0)
    throw Error(Errc::reducible, "min_poly has a repeated factor");
  if (has_integer_root(p)) throw Error(Errc::reducible, "min_poly has a rational root");
  if (d == 4 && quartic_has_quadratic_factor(p))
    throw Error(Errc::reducible, "min_poly splits into two quadratics");
}

}  // namespace

FieldPtr Field::create(std::vector<Int> min_poly, Rat lo, Rat hi) {
  if (min_poly.size() < 2) throw Error(Errc::bad_argument, "min_poly must have degree >= 1");
  if (min_poly.back() != 1) throw Error(Errc::not_monic, "leading coefficient must be 1");
  const int d = static_cast<int>(min_poly.size()) - 1;
  if (d > 4)
    throw Error(Errc::unsupported_degree,
                "degree " + std::to_string(d) + " exceeds the supported ceiling of 4");
  lo.canonicalize();
  hi.canonicalize();
  if (!(lo < hi)) throw Error(Errc::no_sign_change, "root interval is empty");

  Poly p = to_poly(min_poly);
  const int slo = sgn(polyq::eval(p, lo));
  const int shi = sgn(polyq::eval(p, hi));
  if (slo == 0 || shi == 0 || slo == shi)
    throw Error(Errc::no_sign_change, "min_poly must change sign strictly across the interval");
  check_irreducible(p);
  if (polyq::count_roots(p, lo, hi) != 1)
    throw Error(Errc::no_sign_change, "interval must isolate exactly one root");

  auto f = std::shared_ptr<Field>(new Field());
  f->min_poly_ = std::move(min_poly);
  f->min_poly_q_ = std::move(p);
  f->given_lo_ = lo;
  f->given_hi_ = hi;
  f->sign_lo_ = slo;

  // Tighten once to width 2^-128; later refinements restart from here.
  Rat eps(1);
  eps /= Rat(Int(1) << 128);
  while (hi - lo > eps) {
    Rat mid = (lo + hi) / 2;
    int sm = sgn(polyq::eval(f->min_poly_q_, mid));
    if (sm == 0) {
      // Rational root: only possible at degree 1; pin the enclosure.
      lo = hi = mid;
      break;
    }
    (sm == slo ? lo : hi) = mid;
  }
  f->lo_ = lo;
  f->hi_ = hi;
  return f;
}

const FieldPtr& Field::rationals() {
  static const FieldPtr q = create({Int(0), Int(1)}, Rat(-1), Rat(1));
  return q;
}

std::pair<Rat, Rat> Field::refine_root(const Rat& width) const {
  Rat lo = lo_, hi = hi_;
  while (hi - lo > width) {
    Rat mid = (lo + hi) / 2;
    int sm = sgn(polyq::eval(min_poly_q_, mid));
    if (sm == 0) return {mid, mid};
    (sm == sign_lo_ ? lo : hi) = mid;
  }
  return {lo, hi};
}

bool Field::same_field(const Field& other) const {
  if (this == &other) return true;
  if (min_poly_ != other.min_poly_) return false;
  if (degree() == 1) return true;  // unique root
  Rat ilo = std::max(lo_, other.lo_);
  Rat ihi = std::min(hi_, other.hi_);
  if (!(ilo < ihi)) return false;
  return polyq::count_roots(min_poly_q_, ilo, ihi) == 1;
}

FieldElement::FieldElement() : field_(Field::rationals()), coords_(1, Rat(0)) {}

FieldElement FieldElement::from_rational(FieldPtr f, Rat c) {
  if (!f) throw Error(Errc::bad_argument, "null field");
  std::vector<Rat> v(f->degree(), Rat(0));
  c.canonicalize();
  v[0] = std::move(c);
  return FieldElement(std::move(f), std::move(v));
}

FieldElement FieldElement::from_coords(FieldPtr f, std::vector<Rat> coords) {
  if (!f) throw Error(Errc::bad_argument, "null field");
  if (static_cast<int>(coords.size()) != f->degree())
    throw Error(Errc::bad_argument, "coordinate count must equal the field degree");
  for (auto& c : coords) c.canonicalize();
  return FieldElement(std::move(f), std::move(coords));
}

FieldElement FieldElement::generator(FieldPtr f) {
  if (!f) throw Error(Errc::bad_argument, "null field");
  if (f->degree() == 1) {
    // r is the rational root itself.
    Rat root = -Rat(f->min_poly()[0]);
    return from_rational(std::move(f), root);
  }
  std::vector<Rat> v(f->degree(), Rat(0));
  v[1] = 1;
  return FieldElement(std::move(f), std::move(v));
}

bool FieldElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rat& c) { return c == 0; });
}

bool FieldElement::is_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

Rat FieldElement::as_rational() const {
  if (!is_rational()) throw Error(Errc::bad_argument, "element is irrational");
  return coords_[0];
}

void FieldElement::align(FieldElement& a, FieldElement& b) {
  if (a.field_ == b.field_) return;
  if (a.field_->same_field(*b.field_)) {
    b.field_ = a.field_;
    return;
  }
  if (b.field_->degree() == 1) {
    b = from_rational(a.field_, b.coords_[0]);
    return;
  }
  if (a.field_->degree() == 1) {
    a = from_rational(b.field_, a.coords_[0]);
    return;
  }
  throw Error(Errc::field_mismatch, "operands live in different number fields");
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  FieldElement rhs = o;
  align(*this, rhs);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  FieldElement rhs = o;
  align(*this, rhs);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  FieldElement rhs = o;
  align(*this, rhs);
  if (rhs.is_rational()) {
    for (auto& c : coords_) c *= rhs.coords_[0];
    return *this;
  }
  if (is_rational()) {
    Rat c0 = coords_[0];
    coords_ = rhs.coords_;
    for (auto& c : coords_) c *= c0;
    return *this;
  }
  polyq::Poly prod = polyq::mul(polyq::normalized(coords_), polyq::normalized(rhs.coords_));
  polyq::Poly rem = polyq::divmod(prod, field_->min_poly_q()).second;
  rem.resize(coords_.size(), Rat(0));
  coords_ = std::move(rem);
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
  FieldElement rhs = o;
  align(*this, rhs);
  if (rhs.is_zero()) throw Error(Errc::division_by_zero, "division by zero");
  if (rhs.is_rational()) {
    for (auto& c : coords_) c /= rhs.coords_[0];
    return *this;
  }
  // Invert modulo the minimal polynomial: u*g + v*m = 1 gives g^-1 = u.
  auto eg = polyq::ext_gcd(polyq::normalized(rhs.coords_), field_->min_poly_q());
  check(polyq::degree(eg.g) == 0 && eg.g[0] == 1, "inverse mod an irreducible polynomial");
  polyq::Poly inv = polyq::divmod(eg.u, field_->min_poly_q()).second;
  inv.resize(coords_.size(), Rat(0));
  return *this *= FieldElement(field_, std::move(inv));
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  FieldElement x = a, y = b;
  FieldElement::align(x, y);
  return x.coords_ == y.coords_;
}

int FieldElement::sign() const {
  if (is_rational()) return sgn(coords_[0]);
  polyq::Poly e = polyq::normalized(coords_);
  auto [lo, hi] = field_->cached_enclosure();
  const int slo = field_->sign_at_lo();
  for (int iter = 0; iter < 100000; ++iter) {
    auto [elo, ehi] = polyq::eval_interval(e, lo, hi);
    if (sgn(elo) > 0) return 1;
    if (sgn(ehi) < 0) return -1;
    Rat mid = (lo + hi) / 2;
    int sm = sgn(polyq::eval(field_->min_poly_q(), mid));
    assert(sm != 0);  // irreducible of degree >= 2 has no rational root
    (sm == slo ? lo : hi) = mid;
  }
  throw Error(Errc::bad_argument, "sign refinement did not converge");
}

std::pair<Rat, Rat> FieldElement::approx(int bits) const {
  if (bits < 0) bits = 0;
  if (is_rational()) return {coords_[0], coords_[0]};
  Rat target(1);
  mpz_class denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), 2, static_cast<unsigned long>(bits));
  target /= Rat(denom);
  polyq::Poly e = polyq::normalized(coords_);
  auto [lo, hi] = field_->cached_enclosure();
  const int slo = field_->sign_at_lo();
  for (;;) {
    auto [elo, ehi] = polyq::eval_interval(e, lo, hi);
    if (ehi - elo <= target) return {elo, ehi};
    Rat mid = (lo + hi) / 2;
    int sm = sgn(polyq::eval(field_->min_poly_q(), mid));
    assert(sm != 0);
    (sm == slo ? lo : hi) = mid;
  }
}

double FieldElement::to_double() const {
  auto [lo, hi] = approx(80);
  Rat mid = (lo + hi) / 2;
  return mid.get_d();
}

std::string FieldElement::to_string() const {
  std::string s;
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    const Rat& c = coords_[k];
    if (c == 0) continue;
    const bool neg = c < 0;
    const Rat a = neg ? Rat(-c) : c;
    std::string term;
    if (k == 0) {
      term = rat_to_string(a);
    } else {
      if (a != 1) term = rat_to_string(a) + "*";
      term += "r";
      if (k >= 2) term += "^" + std::to_string(k);
    }
    if (s.empty())
      s = (neg ? "-" : "") + term;
    else
      s += (neg ? " - " : " + ") + term;
  }
  return s.empty() ? "0" : s;
}

FieldElement parse_element(const FieldPtr& f, const std::string& text) {
  if (!f) throw Error(Errc::bad_argument, "null field");
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error(Errc::bad_literal, "empty element literal");

  polyq::Poly acc;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    if (j == i) throw Error(Errc::bad_literal, "dangling sign in '" + text + "'");
    std::string term = s.substr(i, j - i);
    i = j;

    Rat coeff(1);
    std::size_t exp = 0;
    auto rpos = term.find('r');
    if (rpos == std::string::npos) {
      coeff = parse_rat(term);
    } else {
      std::string head = term.substr(0, rpos);
      if (!head.empty() && head.back() == '*') head.pop_back();
      if (!head.empty()) coeff = parse_rat(head);
      std::string tail = term.substr(rpos + 1);
      if (tail.empty()) {
        exp = 1;
      } else if (tail[0] == '^') {
        std::string digits = tail.substr(1);
        if (digits.empty() ||
            !std::all_of(digits.begin(), digits.end(),
                         [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
          throw Error(Errc::bad_literal, "bad exponent in '" + text + "'");
        exp = std::stoul(digits);
        if (exp > 64) throw Error(Errc::bad_literal, "exponent too large in '" + text + "'");
      } else {
        throw Error(Errc::bad_literal, "bad term '" + term + "'");
      }
    }
    if (acc.size() < exp + 1) acc.resize(exp + 1, Rat(0));
    acc[exp] += sign < 0 ? Rat(-coeff) : coeff;
  }

  polyq::Poly rem = polyq::divmod(polyq::normalized(std::move(acc)), f->min_poly_q()).second;
  rem.resize(f->degree(), Rat(0));
  return FieldElement::from_coords(f, std::move(rem));
}

}  // namespace zcover
