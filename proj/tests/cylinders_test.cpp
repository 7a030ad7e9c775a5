#include "zcover/cylinders.hpp"

#include <algorithm>
#include <vector>

#include "doctest.h"
#include "test_support.hpp"

using namespace zcover;
namespace {

FieldElement fe(const FieldPtr& f, const Rat& q) {
  return FieldElement::from_rational(f, q);
}

Vec vdir(const SurfacePtr& s, int x, int y) {
  return {fe(s->field(), x), fe(s->field(), y)};
}

bool has_slope(const std::vector<Vec>& dirs, const Vec& d) {
  for (const Vec& v : dirs)
    if (cross(v, d).is_zero() && dot(v, d).sign() > 0) return true;
  return false;
}

void check_area_conservation(const SurfacePtr& s, const CylinderDecomposition& dec) {
  REQUIRE(dec.complete);
  FieldElement total = fe(s->field(), 0);
  for (const Cylinder& c : dec.cylinders) {
    CHECK((c.area - c.t_total * c.tau_width).is_zero());
    CHECK(c.tau_width.sign() > 0);
    CHECK(c.t_total.sign() > 0);
    total += c.area;
  }
  CHECK((total - s->area()).is_zero());
}

}  // namespace

TEST_CASE("square torus horizontal cylinder") {
  auto s = ztest::square_torus(true);
  Vec d = vdir(s, 1, 0);
  auto dec = decompose(*s, d, Rat(3));

  REQUIRE(dec.complete);
  CHECK(dec.unresolved == 0);
  REQUIRE(dec.connections.size() == 1);
  const SaddleConnection& con = dec.connections[0];
  CHECK(con.start == CornerRef{0, 0});
  CHECK((con.t_len - fe(s->field(), 1)).is_zero());
  CHECK(con.word.empty());

  REQUIRE(dec.cylinders.size() == 1);
  const Cylinder& cyl = dec.cylinders[0];
  CHECK((cyl.area - fe(s->field(), 1)).is_zero());
  CHECK((cyl.t_total - fe(s->field(), 1)).is_zero());
  CHECK((cyl.tau_width - fe(s->field(), 1)).is_zero());
  CHECK((cyl.circumference_sq - fe(s->field(), 1)).is_zero());
  CHECK((cyl.height_sq - fe(s->field(), 1)).is_zero());
  CHECK((cyl.modulus - fe(s->field(), 1)).is_zero());

  int vertical = s->edge_class_of({0, 1});
  REQUIRE(cyl.core_word.size() == 1);
  CHECK(cyl.core_word[0] == Crossing{vertical, -1});
  CHECK(cyl.bottom == std::vector<int>{0});
  CHECK(cyl.top == std::vector<int>{0});
  check_area_conservation(s, dec);
}

TEST_CASE("square torus diagonal cylinder") {
  auto s = ztest::square_torus(true);
  Vec d = vdir(s, 1, 1);
  auto dec = decompose(*s, d, Rat(2));

  REQUIRE(dec.complete);
  REQUIRE(dec.connections.size() == 1);
  CHECK((dec.connections[0].t_len - fe(s->field(), 1)).is_zero());
  CHECK(dec.connections[0].word.empty());

  REQUIRE(dec.cylinders.size() == 1);
  const Cylinder& cyl = dec.cylinders[0];
  CHECK((cyl.area - fe(s->field(), 1)).is_zero());
  CHECK((cyl.t_total - fe(s->field(), 1)).is_zero());
  CHECK((cyl.tau_width - fe(s->field(), 1)).is_zero());
  CHECK((cyl.circumference_sq - fe(s->field(), 2)).is_zero());
  CHECK((cyl.height_sq - fe(s->field(), Rat(1, 2))).is_zero());
  CHECK((cyl.modulus - fe(s->field(), Rat(1, 2))).is_zero());

  int horizontal = s->edge_class_of({0, 0});
  int vertical = s->edge_class_of({0, 1});
  REQUIRE(cyl.core_word.size() == 2);
  CHECK(cyl.core_word[0] == Crossing{vertical, -1});
  CHECK(cyl.core_word[1] == Crossing{horizontal, 1});
  check_area_conservation(s, dec);
}

TEST_CASE("two square torus horizontal: seam vertex is flowed through") {
  auto s = ztest::two_square_torus();
  Vec d = vdir(s, 1, 0);
  auto dec = decompose(*s, d, Rat(5));

  REQUIRE(dec.complete);
  REQUIRE(dec.connections.size() == 1);
  // One connection through the regular seam vertex, covering both bottoms;
  // grazing the seam contributes one crossing of its class.
  CHECK((dec.connections[0].t_len - fe(s->field(), 2)).is_zero());
  CHECK(dec.connections[0].segments.size() == 2);
  REQUIRE(dec.connections[0].word.size() == 1);
  CHECK(dec.connections[0].word[0] == Crossing{s->edge_class_of({0, 1}), -1});

  REQUIRE(dec.cylinders.size() == 1);
  const Cylinder& cyl = dec.cylinders[0];
  CHECK((cyl.area - fe(s->field(), 2)).is_zero());
  CHECK((cyl.t_total - fe(s->field(), 2)).is_zero());
  CHECK((cyl.tau_width - fe(s->field(), 1)).is_zero());
  CHECK((cyl.circumference_sq - fe(s->field(), 4)).is_zero());
  CHECK((cyl.height_sq - fe(s->field(), 1)).is_zero());
  CHECK(cyl.core_word.size() == 2);
  check_area_conservation(s, dec);
}

TEST_CASE("two square torus diagonal closes through the seam") {
  auto s = ztest::two_square_torus();
  Vec d = vdir(s, 1, 1);
  auto dec = decompose(*s, d, Rat(5));

  REQUIRE(dec.complete);
  REQUIRE(dec.connections.size() == 1);
  CHECK((dec.connections[0].t_len - fe(s->field(), 2)).is_zero());
  CHECK(dec.connections[0].segments.size() == 2);

  REQUIRE(dec.cylinders.size() == 1);
  const Cylinder& cyl = dec.cylinders[0];
  CHECK((cyl.area - fe(s->field(), 2)).is_zero());
  CHECK((cyl.t_total - fe(s->field(), 2)).is_zero());
  CHECK((cyl.tau_width - fe(s->field(), 1)).is_zero());
  CHECK((cyl.circumference_sq - fe(s->field(), 8)).is_zero());
  CHECK((cyl.height_sq - fe(s->field(), Rat(1, 2))).is_zero());
  CHECK((cyl.modulus - fe(s->field(), Rat(1, 4))).is_zero());
  CHECK(cyl.core_word.size() == 4);
  check_area_conservation(s, dec);
}

TEST_CASE("octagon horizontal decomposition: two cylinders with moduli ratio 2") {
  auto s = ztest::octagon_opposite();
  const FieldPtr& f = s->field();
  FieldElement r = FieldElement::generator(f);  // sqrt 2
  Vec d = vdir(s, 1, 0);
  auto dec = decompose(*s, d, Rat(8));

  REQUIRE(dec.complete);
  CHECK(dec.unresolved == 0);
  REQUIRE(dec.connections.size() == 3);
  // Scan order: corners ascending, so the two interior chords come first.
  CHECK(dec.connections[0].start == CornerRef{0, 5});
  CHECK(dec.connections[1].start == CornerRef{0, 6});
  CHECK(dec.connections[2].start == CornerRef{0, 7});
  FieldElement two_plus_2r = fe(f, 2) + r + r;
  CHECK((dec.connections[0].t_len - two_plus_2r).is_zero());
  CHECK((dec.connections[1].t_len - two_plus_2r).is_zero());
  CHECK((dec.connections[2].t_len - fe(f, 2)).is_zero());
  for (const auto& con : dec.connections) CHECK(con.word.empty());

  REQUIRE(dec.cylinders.size() == 2);
  // The component containing the bottom cell of the polygon comes first.
  const Cylinder& big = dec.cylinders[0];
  const Cylinder& mid = dec.cylinders[1];

  FieldElement four_plus_4r = fe(f, 4) + fe(f, 4) * r;
  CHECK((big.area - four_plus_4r).is_zero());
  CHECK((mid.area - four_plus_4r).is_zero());
  CHECK((big.tau_width - r).is_zero());
  CHECK((mid.tau_width - fe(f, 2)).is_zero());
  CHECK((big.t_total - (fe(f, 4) + fe(f, 2) * r)).is_zero());
  CHECK((mid.t_total - two_plus_2r).is_zero());
  CHECK((big.circumference_sq - (fe(f, 24) + fe(f, 16) * r)).is_zero());
  CHECK((mid.circumference_sq - (fe(f, 12) + fe(f, 8) * r)).is_zero());
  CHECK((big.height_sq - fe(f, 2)).is_zero());
  CHECK((mid.height_sq - fe(f, 4)).is_zero());

  // Moduli (sqrt2 - 1)/2 and sqrt2 - 1: exact ratio 2 drives the parabolic.
  CHECK((big.modulus - (r - fe(f, 1)) / fe(f, 2)).is_zero());
  CHECK((mid.modulus - (r - fe(f, 1))).is_zero());
  CHECK((mid.modulus - fe(f, 2) * big.modulus).is_zero());

  CHECK(big.bottom == std::vector<int>{0, 2});
  CHECK(big.top == std::vector<int>{1, 2});
  CHECK(mid.bottom == std::vector<int>{1});
  CHECK(mid.top == std::vector<int>{0});
  check_area_conservation(s, dec);
}

TEST_CASE("octagon scan depth too small leaves the verdict open") {
  auto s = ztest::octagon_opposite();
  Vec d = vdir(s, 1, 0);

  auto dec = decompose(*s, d, Rat(3));
  CHECK_FALSE(dec.complete);
  CHECK(dec.unresolved == 2);
  CHECK(dec.cylinders.empty());

  auto scan = separatrices(*s, d, Rat(3));
  CHECK(scan.unresolved == 2);
  REQUIRE(scan.connections.size() == 1);
  CHECK((scan.connections[0].t_len - fe(s->field(), 2)).is_zero());
}

TEST_CASE("separatrix length filter is exact") {
  auto s = ztest::square_torus(true);
  Vec d = vdir(s, 1, 1);
  // Diagonal length is sqrt(2): bound 2 keeps it, bound 1 drops it.
  auto keep = separatrices(*s, d, Rat(2));
  REQUIRE(keep.connections.size() == 1);
  auto drop = separatrices(*s, d, Rat(1));
  CHECK(drop.connections.empty());
}

TEST_CASE("locate reports cylinder and normalized transverse coordinate") {
  auto s = ztest::square_torus(true);
  Vec d = vdir(s, 1, 0);
  auto dec = decompose(*s, d, Rat(3));

  auto hit = locate(*s, dec, {0, {fe(s->field(), Rat(1, 2)), fe(s->field(), Rat(1, 4))}});
  REQUIRE(hit.has_value());
  CHECK(hit->first == 0);
  CHECK((hit->second - fe(s->field(), Rat(1, 4))).is_zero());

  auto oct = ztest::octagon_opposite();
  const FieldPtr& f = oct->field();
  FieldElement r = FieldElement::generator(f);
  auto odec = decompose(*oct, vdir(oct, 1, 0), Rat(8));
  // (0, 2) sits in the middle rectangle, between levels sqrt2 and 2 + sqrt2.
  auto ohit = locate(*oct, odec, {0, {fe(f, 0), fe(f, 2)}});
  REQUIRE(ohit.has_value());
  CHECK(ohit->first == 1);
  CHECK((ohit->second - (fe(f, 2) - r)).is_zero());

  CHECK_THROWS_AS(locate(*s, dec, {7, {fe(s->field(), 0), fe(s->field(), 0)}}), Error);
}

TEST_CASE("incomplete decomposition locates nothing") {
  auto s = ztest::octagon_opposite();
  auto dec = decompose(*s, vdir(s, 1, 0), Rat(3));
  REQUIRE_FALSE(dec.complete);
  auto hit = locate(*s, dec, {0, {fe(s->field(), 0), fe(s->field(), 1)}});
  CHECK_FALSE(hit.has_value());
}

TEST_CASE("torus direction candidates match the primitive lattice") {
  auto s = ztest::square_torus(true);
  auto cands = direction_candidates(*s, Rat(3));
  CHECK(cands.size() == 8);
  CHECK(has_slope(cands, vdir(s, 1, 0)));
  CHECK(has_slope(cands, vdir(s, 0, 1)));
  CHECK(has_slope(cands, vdir(s, 1, 1)));
  CHECK(has_slope(cands, vdir(s, -1, 1)));
  CHECK(has_slope(cands, vdir(s, 2, 1)));
  CHECK(has_slope(cands, vdir(s, 1, 2)));
  CHECK(has_slope(cands, vdir(s, -2, 1)));
  CHECK(has_slope(cands, vdir(s, -1, 2)));

  auto dirs = periodic_directions(*s, Rat(3));
  CHECK(dirs.size() == 8);  // every rational slope closes up on the torus
}

TEST_CASE("octagon short candidates are the edge directions") {
  auto s = ztest::octagon_opposite();
  auto cands = direction_candidates(*s, Rat(2));
  CHECK(cands.size() == 4);
  CHECK(has_slope(cands, vdir(s, 1, 0)));
  CHECK(has_slope(cands, vdir(s, 0, 1)));
  CHECK(has_slope(cands, vdir(s, 1, 1)));
  CHECK(has_slope(cands, vdir(s, -1, 1)));
}

TEST_CASE("octagon periodic directions include all edge slopes with exact areas") {
  auto s = ztest::octagon_opposite();
  auto dirs = periodic_directions(*s, Rat(6));
  CHECK(has_slope(dirs, vdir(s, 1, 0)));
  CHECK(has_slope(dirs, vdir(s, 0, 1)));
  CHECK(has_slope(dirs, vdir(s, 1, 1)));
  CHECK(has_slope(dirs, vdir(s, -1, 1)));
  for (const Vec& d : dirs) check_area_conservation(s, decompose(*s, d, Rat(6)));
}

TEST_CASE("two square torus periodic directions conserve area") {
  auto s = ztest::two_square_torus();
  auto dirs = periodic_directions(*s, Rat(3));
  CHECK(has_slope(dirs, vdir(s, 1, 0)));
  CHECK(has_slope(dirs, vdir(s, 0, 1)));
  CHECK(has_slope(dirs, vdir(s, 1, 1)));
  for (const Vec& d : dirs) check_area_conservation(s, decompose(*s, d, Rat(3)));
}

TEST_CASE("cylinder scan argument validation") {
  auto s = ztest::square_torus(true);
  Vec zero = Vec::zero(s->field());
  CHECK_THROWS_AS(decompose(*s, zero, Rat(1)), Error);
  CHECK_THROWS_AS(decompose(*s, vdir(s, 1, 0), Rat(0)), Error);
  CHECK_THROWS_AS(separatrices(*s, vdir(s, 1, 0), Rat(-2)), Error);
}
