#include "zcover/field.hpp"

#include <vector>

#include "doctest.h"

using namespace zcover;

namespace {

FieldPtr sqrt2_field() { return Field::create({Int(-2), Int(0), Int(1)}, Rat(1), Rat(2)); }
FieldPtr golden_field() { return Field::create({Int(-1), Int(-1), Int(1)}, Rat(1), Rat(2)); }
// 2*cos(pi/10), generator of the real field of the regular decagon pair.
// x^4-5x^2+5 also vanishes at 2*cos(3pi/10) ~ 1.176, so the interval must
// stay right of 3/2.
FieldPtr deca_field() { return Field::create({Int(5), Int(0), Int(-5), Int(0), Int(1)}, Rat(3, 2), Rat(2)); }
// 2*cos(pi/12)
FieldPtr dodeca_field() { return Field::create({Int(1), Int(0), Int(-4), Int(0), Int(1)}, Rat(1), Rat(2)); }

FieldElement fe(const FieldPtr& f, long num, long den = 1) {
  return FieldElement::from_rational(f, Rat(num, den));
}

// Tiny split-mix style generator so the property tests stay deterministic.
struct TestRng {
  unsigned long long s = 0x9e3779b97f4a7c15ull;
  unsigned long long next() {
    s += 0x9e3779b97f4a7c15ull;
    unsigned long long z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  Rat rat() {
    long num = static_cast<long>(next() % 11) - 5;
    long den = 1 + static_cast<long>(next() % 4);
    return Rat(num, den);
  }
  FieldElement elem(const FieldPtr& f) {
    std::vector<Rat> c(f->degree());
    for (auto& x : c) x = rat();
    return FieldElement::from_coords(f, c);
  }
};

}  // namespace

TEST_CASE("inverse of 1+sqrt2 is -1+sqrt2") {
  auto f = sqrt2_field();
  auto r = FieldElement::generator(f);
  auto inv = fe(f, 1) / (fe(f, 1) + r);
  CHECK(inv == r - Rat(1));
  CHECK((fe(f, 1) + r) * inv == fe(f, 1));
}

TEST_CASE("golden ratio inverse and square") {
  auto f = golden_field();
  auto phi = FieldElement::generator(f);
  CHECK(phi * phi == phi + Rat(1));
  CHECK(fe(f, 1) / phi == phi - Rat(1));
}

TEST_CASE("decagon field: 2r^2-5 is sqrt5") {
  auto f = deca_field();
  auto r = FieldElement::generator(f);
  auto s5 = Rat(2) * r * r - Rat(5);
  CHECK(s5.sign() > 0);
  CHECK(s5 * s5 == fe(f, 5));
  // sin(pi/10) related quantity r^2-3 = 2*sin(3pi/10)... must be positive
  CHECK((r * r - Rat(3)).sign() > 0);
}

TEST_CASE("dodecagon field: r^2-2 is sqrt3") {
  auto f = dodeca_field();
  auto r = FieldElement::generator(f);
  auto s3 = r * r - Rat(2);
  CHECK(s3.sign() > 0);
  CHECK(s3 * s3 == fe(f, 3));
}

TEST_CASE("sign splits tight rational bounds around sqrt2") {
  auto f = sqrt2_field();
  auto r = FieldElement::generator(f);
  // sqrt2 = 1.41421356237...
  CHECK((r - Rat(141421356, 100000000)).sign() == 1);
  CHECK((r - Rat(14142135624, 10000000000)).sign() == -1);
  CHECK((r * r - Rat(2)).sign() == 0);
}

TEST_CASE("approx encloses the root and nests") {
  auto f = sqrt2_field();
  auto r = FieldElement::generator(f);
  auto [lo20, hi20] = r.approx(20);
  auto [lo60, hi60] = r.approx(60);
  CHECK(lo20 * lo20 < 2);
  CHECK(hi20 * hi20 > 2);
  CHECK(hi20 - lo20 <= Rat(1, 1 << 20));
  CHECK(lo60 >= lo20);
  CHECK(hi60 <= hi20);
  CHECK(hi60 - lo60 <= Rat(Int(1), Int(1) << 60));
}

TEST_CASE("field creation rejects bad input") {
  CHECK_THROWS_AS(Field::create({Int(2), Int(0), Int(3)}, Rat(0), Rat(2)), Error);
  try {
    Field::create({Int(2), Int(0), Int(3)}, Rat(0), Rat(2));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_monic);
  }

  try {
    Field::create({Int(-1), Int(0), Int(1)}, Rat(0), Rat(2));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::reducible);
  }

  // (x^2-2)(x^2-3), no rational root but splits into quadratics
  try {
    Field::create({Int(6), Int(0), Int(-5), Int(0), Int(1)}, Rat(1), Rat(3, 2));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::reducible);
  }

  try {
    Field::create({Int(-2), Int(0), Int(1)}, Rat(2), Rat(3));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::no_sign_change);
  }

  // interval straddling both roots of x^2-2
  try {
    Field::create({Int(-2), Int(0), Int(1)}, Rat(-2), Rat(17, 12));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::no_sign_change);
  }

  try {
    Field::create({Int(-2), Int(0), Int(0), Int(0), Int(0), Int(1)}, Rat(1), Rat(2));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unsupported_degree);
  }
}

TEST_CASE("mixing distinct extensions fails, rationals promote") {
  auto a = FieldElement::generator(sqrt2_field());
  auto b = FieldElement::generator(golden_field());
  CHECK_THROWS_AS(a + b, Error);
  try {
    a* b;
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::field_mismatch);
  }

  FieldElement half = FieldElement::from_rational(Field::rationals(), Rat(1, 2));
  CHECK((a + half) - a == half);

  // same field parsed twice: structurally identical, ops allowed
  auto f1 = sqrt2_field();
  auto f2 = Field::create({Int(-2), Int(0), Int(1)}, Rat(0), Rat(3));
  CHECK(f1->same_field(*f2));
  CHECK(FieldElement::generator(f1) == FieldElement::generator(f2));

  // conjugate root is a different field
  auto fneg = Field::create({Int(-2), Int(0), Int(1)}, Rat(-2), Rat(0));
  CHECK_FALSE(f1->same_field(*fneg));
  CHECK_THROWS_AS(FieldElement::generator(f1) + FieldElement::generator(fneg), Error);
}

TEST_CASE("division by zero throws") {
  auto f = sqrt2_field();
  try {
    FieldElement::generator(f) / fe(f, 0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::division_by_zero);
  }
}

TEST_CASE("degree-1 fields behave like plain rationals") {
  auto q = Field::rationals();
  CHECK(q->degree() == 1);
  CHECK(FieldElement::generator(q).is_zero());

  auto f3 = Field::create({Int(-3), Int(1)}, Rat(2), Rat(4));
  CHECK(FieldElement::generator(f3).as_rational() == 3);

  auto x = FieldElement::from_rational(q, Rat(7, 3));
  CHECK((x * x).as_rational() == Rat(49, 9));
}

TEST_CASE("element literals round-trip") {
  for (const auto& f : {sqrt2_field(), golden_field(), deca_field(), dodeca_field()}) {
    TestRng rng;
    for (int i = 0; i < 25; ++i) {
      auto e = rng.elem(f);
      CHECK(parse_element(f, e.to_string()) == e);
    }
  }
  auto f = deca_field();
  auto e = parse_element(f, "1/2 - 3*r + r^3");
  CHECK(e.coords() == std::vector<Rat>{Rat(1, 2), Rat(-3), Rat(0), Rat(1)});
  CHECK(parse_element(f, "  1/2-3*r+r^3 ") == e);
  CHECK(parse_element(f, "0").is_zero());
  CHECK(parse_element(f, "-r^3") == -parse_element(f, "r^3"));

  // exponents reduce modulo the minimal polynomial
  auto s = sqrt2_field();
  CHECK(parse_element(s, "r^2") == fe(s, 2));
  CHECK(parse_element(s, "r^3") == Rat(2) * FieldElement::generator(s));

  CHECK_THROWS_AS(parse_element(s, ""), Error);
  CHECK_THROWS_AS(parse_element(s, "1 + + 2"), Error);
  CHECK_THROWS_AS(parse_element(s, "q"), Error);
  CHECK_THROWS_AS(parse_element(s, "r^"), Error);
}

TEST_CASE("field axioms on random elements") {
  for (const auto& f : {sqrt2_field(), golden_field(), deca_field()}) {
    TestRng rng;
    for (int i = 0; i < 40; ++i) {
      auto a = rng.elem(f), b = rng.elem(f), c = rng.elem(f);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK((a - a).is_zero());
      CHECK(a.sign() * b.sign() == (a * b).sign());
      CHECK(a.sign() == -(-a).sign());
      if (!b.is_zero()) CHECK((a / b) * b == a);
      if (!a.is_zero()) CHECK(a * (fe(f, 1) / a) == fe(f, 1));
    }
  }
}
