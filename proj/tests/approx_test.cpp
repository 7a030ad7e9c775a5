#include "zcover/approx.hpp"

#include <cmath>

#include "doctest.h"
#include "test_support.hpp"

namespace zcover {
namespace {

FieldElement fe(const FieldPtr& f, const Rat& q) { return FieldElement::from_rational(f, q); }

LiftClass make_strip(long long k, const Vec& v, const FieldElement& area) {
  LiftClass c;
  c.kind = k == 0 ? LiftKind::closed_cylinder : LiftKind::strip;
  c.k = k;
  c.v = v;
  c.area = area;
  return c;
}

struct TwoSquareCover {
  SurfacePtr s;
  CoverSpec cover;
};

// Marked seam, cycle = bottom of the first square minus bottom of the
// second: the vertical columns lift to strips with shifts +1 and -1.
TwoSquareCover marked_two_square() {
  TwoSquareCover out;
  out.s = ztest::two_square_torus(true);
  RelativeCycle w;
  w.weights[out.s->edge_class_of({0, 0})] = 1;
  w.weights[out.s->edge_class_of({1, 0})] = -1;
  out.cover = make_cover(out.s, w);
  return out;
}

// Unmarked seam, cycle = the seam class alone (a closed loop since both of
// its endpoints sit on the same regular vertex class): the single
// horizontal cylinder lifts to a strip.
TwoSquareCover seam_two_square() {
  TwoSquareCover out;
  out.s = ztest::two_square_torus(false);
  RelativeCycle w;
  w.weights[out.s->edge_class_of({0, 1})] = 1;
  out.cover = make_cover(out.s, w);
  return out;
}

// Square torus with side `side`, cycle = the vertical edge class, so the
// horizontal cylinder is a strip with |v| = side and area side^2.
TwoSquareCover scaled_torus(const Rat& side) {
  TwoSquareCover out;
  Surface::BuildData d;
  d.field = Field::rationals();
  d.polygons.push_back(Polygon({ztest::vq(0, 0), ztest::vq(side, 0),
                                ztest::vq(side, side), ztest::vq(0, side)}));
  d.gluings = {{{0, 0}, {0, 2}}, {{0, 1}, {0, 3}}};
  d.marks = {{0, 0}};
  out.s = Surface::build(std::move(d));
  RelativeCycle w;
  w.weights[out.s->edge_class_of({0, 1})] = 1;
  out.cover = make_cover(out.s, w);
  return out;
}

}  // namespace

TEST_CASE("stage constants come out exact") {
  FieldPtr f = Field::rationals();
  LiftClass strip = make_strip(1, ztest::vq(2, 0), fe(f, 1));
  StageData st = stage_quantities(strip, fe(f, Rat(1, 2)), 3);

  CHECK(st.n == 3);
  CHECK(st.eps == fe(f, Rat(1, 2)));
  CHECK(st.area == fe(f, 1));
  CHECK(st.v_norm_sq == fe(f, 4));
  CHECK(st.h_sq == fe(f, Rat(1, 16)));
  CHECK(st.eta_sq == fe(f, Rat(1, 4096)));
  CHECK(st.c == fe(f, Rat(3, 2)));

  // (2h ||v||)^2 = A^2 and (8 eta ||v||)^2 = eps^4, whatever the strip.
  LiftClass other = make_strip(-2, ztest::vq(1, 1), fe(f, Rat(1, 2)));
  StageData so = stage_quantities(other, fe(f, Rat(3, 10)));
  CHECK(Rat(4) * so.h_sq * so.v_norm_sq == so.area * so.area);
  CHECK(Rat(64) * so.eta_sq * so.v_norm_sq == so.eps * so.eps * so.eps * so.eps);
  CHECK(so.n == 0);

  try {
    stage_quantities(strip, fe(f, 1));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bad_eps);
  }
  CHECK_THROWS_AS(stage_quantities(strip, fe(f, 0)), Error);
  LiftClass closed = make_strip(0, ztest::vq(2, 0), fe(f, 1));
  try {
    stage_quantities(closed, fe(f, Rat(1, 2)));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_a_strip);
  }
}

TEST_CASE("band fits under the half-rectangle exactly when eps is at most the area") {
  FieldPtr f = Field::rationals();
  LiftClass strip = make_strip(1, ztest::vq(1, 1), fe(f, Rat(1, 2)));
  for (int k = 1; k <= 9; ++k) {
    FieldElement eps = fe(f, Rat(k, 10));
    StageData st = stage_quantities(strip, eps);
    // 2 eta <= (eps/2) h, squared: 16 eta^2 <= eps^2 h_sq.
    FieldElement lhs = Rat(16) * st.eta_sq;
    FieldElement rhs = eps * eps * st.h_sq;
    bool band_fits = (lhs - rhs).sign() <= 0;
    bool eps_small = (eps - st.area).sign() <= 0;
    CHECK(band_fits == eps_small);
  }
}

TEST_CASE("stage rectangles fit while the clearance beats the tilt") {
  auto st = marked_two_square();
  const FieldPtr& f = st.s->field();
  auto dec = decompose(*st.s, Vec{fe(f, 0), fe(f, 1)}, Rat(3));
  REQUIRE(dec.complete);
  REQUIRE(dec.cylinders.size() == 2);
  LiftClass l0 = classify_cylinder_lift(st.cover, dec.cylinders[0]);
  REQUIRE(l0.kind == LiftKind::strip);
  REQUIRE(l0.k == 1);
  REQUIRE(l0.v == Vec{fe(f, 0), fe(f, 1)});

  FieldElement half = fe(f, Rat(1, 2));
  Vec up{fe(f, 0), fe(f, 1)};
  Vec tilted{fe(f, 1), fe(f, 8)};

  // Parallel to the core: no tilt, any interior point of the column works.
  CHECK(admits_rectangle(st.cover, dec, 0, {0, ztest::vq(Rat(1, 2), Rat(1, 3))}, up, half));
  // On the cut itself the clearance is zero.
  CHECK(!admits_rectangle(st.cover, dec, 0, {0, ztest::vq(0, Rat(1, 3))}, up, half));

  // Tilted by 1/8: the half-extent is E = 8/65, inflated to 12/65, so the
  // rectangle fits at clearance 1/2 but not at clearance 1/10.
  CHECK(admits_rectangle(st.cover, dec, 0, {0, ztest::vq(Rat(1, 2), Rat(1, 3))}, tilted, half));
  CHECK(
      !admits_rectangle(st.cover, dec, 0, {0, ztest::vq(Rat(1, 10), Rat(1, 3))}, tilted, half));
  // A fatter inflation (eps = 9/10 gives c = 11/2) pushes 8/65 past 1/2.
  CHECK(!admits_rectangle(st.cover, dec, 0, {0, ztest::vq(Rat(1, 2), Rat(1, 3))}, tilted,
                          fe(f, Rat(9, 10))));

  // The point must lie in the cylinder that was asked about.
  CHECK(!admits_rectangle(st.cover, dec, 0, {1, ztest::vq(Rat(3, 2), Rat(1, 3))}, up, half));
  CHECK(admits_rectangle(st.cover, dec, 1, {1, ztest::vq(Rat(3, 2), Rat(1, 3))}, up, half));

  try {
    admits_rectangle(st.cover, dec, 0, {0, ztest::vq(0, 0)}, up, half);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bad_argument);
  }
  CHECK_THROWS_AS(admits_rectangle(st.cover, dec, 0, {0, ztest::vq(1, 0)}, up, half), Error);
  CHECK_THROWS_AS(
      admits_rectangle(st.cover, dec, 0, {0, ztest::vq(Rat(1, 2), Rat(1, 3))}, up, fe(f, 1)),
      Error);
  CHECK_THROWS_AS(admits_rectangle(st.cover, dec, 0, {0, ztest::vq(Rat(1, 2), Rat(1, 3))},
                                   Vec{fe(f, 0), fe(f, 0)}, half),
                  Error);
  CHECK_THROWS_AS(
      admits_rectangle(st.cover, dec, 5, {0, ztest::vq(Rat(1, 2), Rat(1, 3))}, up, half),
      Error);
  CHECK_THROWS_AS(admits_rectangle(st.cover, dec, 0, {0, ztest::vq(5, 5)}, up, half), Error);
}

TEST_CASE("horizontal strip over the seam cycle admits by height") {
  auto st = seam_two_square();
  const FieldPtr& f = st.s->field();
  auto dec = decompose(*st.s, Vec{fe(f, 1), fe(f, 0)}, Rat(3));
  REQUIRE(dec.complete);
  REQUIRE(dec.cylinders.size() == 1);
  LiftClass lift = classify_cylinder_lift(st.cover, dec.cylinders[0]);
  REQUIRE(lift.kind == LiftKind::strip);
  REQUIRE(std::abs(lift.k) == 1);
  REQUIRE(lift.v == Vec{fe(f, 2), fe(f, 0)});

  FieldElement half = fe(f, Rat(1, 2));
  Vec tilted{fe(f, 8), fe(f, 1)};
  // E = 16/65 inflates to 24/65: between the clearances 1/5 and 1/2.
  CHECK(admits_rectangle(st.cover, dec, 0, {0, ztest::vq(Rat(1, 2), Rat(1, 2))}, tilted, half));
  CHECK(
      !admits_rectangle(st.cover, dec, 0, {0, ztest::vq(Rat(1, 2), Rat(1, 5))}, tilted, half));

  // The seam corner is a regular unmarked vertex: a legal center, but its
  // clearance is zero.
  CHECK(!admits_rectangle(st.cover, dec, 0, {0, ztest::vq(1, 0)}, tilted, half));

  // The vertical cylinder never crosses the seam, so its lift stays closed.
  auto vert = decompose(*st.s, Vec{fe(f, 0), fe(f, 1)}, Rat(3));
  REQUIRE(vert.complete);
  REQUIRE(vert.cylinders.size() == 1);
  REQUIRE(classify_cylinder_lift(st.cover, vert.cylinders[0]).k == 0);
  try {
    admits_rectangle(st.cover, vert, 0, {0, ztest::vq(Rat(1, 2), Rat(1, 2))}, tilted, half);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_a_strip);
  }
}

TEST_CASE("band measure estimate lands on eps squared over four") {
  auto st = scaled_torus(Rat(1, 2));
  const FieldPtr& f = st.s->field();
  auto dec = decompose(*st.s, Vec{fe(f, 1), fe(f, 0)}, Rat(1));
  REQUIRE(dec.complete);
  REQUIRE(dec.cylinders.size() == 1);
  LiftClass lift = classify_cylinder_lift(st.cover, dec.cylinders[0]);
  REQUIRE(lift.kind == LiftKind::strip);
  REQUIRE(std::abs(lift.k) == 1);

  // eta = 1/16, so the band is a quarter of the surface: measure
  // eps^2 / 4 = 1/16 out of a total area of 1/4.
  SigmaPrimeEstimate est =
      sigma_prime_measure(st.cover, dec, 0, fe(f, Rat(1, 2)), 4000, 42);
  CHECK(est.samples == 4000);
  CHECK(est.total_area == fe(f, Rat(1, 4)));
  CHECK(est.hits > 800);
  CHECK(est.hits < 1200);
  CHECK(std::fabs(est.estimate - 0.0625) < 0.006);
  CHECK(est.radius > 0.0005);
  CHECK(est.radius < 0.01);

  SigmaPrimeEstimate again =
      sigma_prime_measure(st.cover, dec, 0, fe(f, Rat(1, 2)), 4000, 42);
  CHECK(again.hits == est.hits);
  CHECK(again.estimate == est.estimate);
  SigmaPrimeEstimate other =
      sigma_prime_measure(st.cover, dec, 0, fe(f, Rat(1, 2)), 4000, 7);
  CHECK(std::fabs(other.estimate - 0.0625) < 0.006);

  // Once 2 eta outgrows the cylinder height the band saturates: every
  // sample hits and the estimate is the full area, exactly.
  auto tiny = scaled_torus(Rat(1, 4));
  auto tdec = decompose(*tiny.s, Vec{fe(f, 1), fe(f, 0)}, Rat(1));
  REQUIRE(tdec.complete);
  SigmaPrimeEstimate sat =
      sigma_prime_measure(tiny.cover, tdec, 0, fe(f, Rat(3, 5)), 500, 9);
  CHECK(sat.hits == 500);
  CHECK(sat.estimate == 0.0625);
  CHECK(sat.radius == 0.0);

  CHECK_THROWS_AS(sigma_prime_measure(st.cover, dec, 0, fe(f, Rat(1, 2)), 50, 42), Error);
  CHECK_THROWS_AS(sigma_prime_measure(st.cover, dec, 0, fe(f, 1), 4000, 42), Error);
  CHECK_THROWS_AS(sigma_prime_measure(st.cover, dec, 0, fe(f, 0), 4000, 42), Error);
  CHECK_THROWS_AS(sigma_prime_measure(st.cover, dec, 3, fe(f, Rat(1, 2)), 4000, 42), Error);
  auto vert = decompose(*st.s, Vec{fe(f, 0), fe(f, 1)}, Rat(1));
  REQUIRE(vert.complete);
  try {
    sigma_prime_measure(st.cover, vert, 0, fe(f, Rat(1, 2)), 4000, 42);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_a_strip);
  }
}

}  // namespace zcover
