#include "zcover/examples.hpp"

#include <utility>
#include <vector>

#include "zcover/cover.hpp"
#include "zcover/cylinders.hpp"
#include "zcover/errors.hpp"

namespace zcover {

namespace {

FieldElement fe(const FieldPtr& f, const Rat& q) {
  return FieldElement::from_rational(f, q);
}

// Difference of two horizontal edge pairs, both oriented rightward: +1 on
// the class of `plus`, -1 on the class of `minus`, flipped wherever the
// class's canonical side happens to point leftward.  Crossing the plus pair
// upward then raises the cover level by one.
RelativeCycle horizontal_difference(const Surface& s, EdgeRef plus, EdgeRef minus) {
  int cp = s.edge_class_of(plus);
  int cm = s.edge_class_of(minus);
  check(s.class_vector(cp).x.sign() != 0 && s.class_vector(cm).x.sign() != 0,
        "horizontal_difference wants classes with a horizontal component");
  RelativeCycle w;
  w.weights[cp] = s.class_vector(cp).x.sign();
  w.weights[cm] = -s.class_vector(cm).x.sign();
  return w;
}

// Regular n-gon of side 2 walked counterclockwise from the origin: edge k
// points at angle theta0 + k * 2pi/n, with e = 2*(cos theta0, sin theta0)
// and the exact rotation (cos_a, sin_a) applied repeatedly.
Polygon regular_ngon(const FieldPtr& f, int n, const FieldElement& cos_a,
                     const FieldElement& sin_a, Vec e) {
  std::vector<Vec> verts;
  Vec v = Vec::zero(f);
  for (int k = 0; k < n; ++k) {
    verts.push_back(v);
    v += e;
    e = Vec{cos_a * e.x - sin_a * e.y, sin_a * e.x + cos_a * e.y};
  }
  return Polygon(std::move(verts));
}

// True when some cylinder of the decomposition lifts to a strip of the
// given absolute degree (any nonzero degree when want_abs_k == 0).
bool has_strip(const CoverSpec& cover, const CylinderDecomposition& dec, long long want_abs_k) {
  for (const auto& cyl : dec.cylinders) {
    auto lift = classify_cylinder_lift(cover, cyl);
    if (lift.kind != LiftKind::strip) continue;
    if (want_abs_k == 0 || lift.k == want_abs_k || lift.k == -want_abs_k) return true;
  }
  return false;
}

// The parabolic [[1, c], [0, 1]] with the smallest c > 0 that twists every
// horizontal cylinder by a whole number of turns: c = L / mu_0 with L the
// least common multiple of the denominators of mu_i / mu_0.
// Parabolic shear fixing direction v.  When every modulus in the direction-v
// decomposition is a rational multiple of the first, the smallest c > 0 with
// c * mu_i a whole number of turns for every cylinder is the derivative of a
// simultaneous Dehn twist, conjugated into place by the rotation taking
// (1, 0) to u = v / |v| (which the caller supplies exactly).
GroupElement twist_element(const Surface& s, const Vec& v, const Vec& u, const Rat& lmax) {
  const FieldPtr& f = s.field();
  check(cross(v, u).is_zero() && dot(v, u).sign() > 0 &&
            (norm_sq(u) - fe(f, 1)).is_zero(),
        "twist axis hint is not the unit vector of the direction");
  auto dec = decompose(s, v, lmax);
  check(dec.complete && !dec.cylinders.empty(),
        "twist decomposition did not certify at the requested bound");
  const FieldElement mu0 = dec.cylinders[0].modulus;
  Int l(1);
  for (const auto& cyl : dec.cylinders) {
    FieldElement q = cyl.modulus / mu0;
    check(q.is_rational(), "moduli are not commensurable in the twist direction");
    Rat ratio = q.as_rational();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), ratio.get_den().get_mpz_t());
  }
  FieldElement c = fe(f, Rat(l)) / mu0;
  for (const auto& cyl : dec.cylinders) {
    FieldElement turns = c * cyl.modulus;
    check(turns.is_rational() && turns.as_rational().get_den() == 1 && turns.sign() > 0,
          "twist entry does not give whole turns");
  }
  GroupElement shear = make_element(fe(f, 1), c, fe(f, 0), fe(f, 1));
  if (u.x == fe(f, 1)) return shear;
  GroupElement rot = rotation_element(u.x, u.y);
  return mul(mul(rot, shear), inverse(rot));
}

GroupElement horizontal_twist(const Surface& s) {
  const FieldPtr& f = s.field();
  return twist_element(s, {fe(f, 1), fe(f, 0)}, {fe(f, 1), fe(f, 0)}, Rat(20));
}

}  // namespace

ExampleBundle staircase() {
  // Golden field, so probes along slope phi start from exact data.
  auto f = Field::create({Int(-1), Int(-1), Int(1)}, Rat(1), Rat(2));
  FieldElement z = fe(f, 0), one = fe(f, 1), two = fe(f, 2);

  Surface::BuildData data;
  data.field = f;
  data.polygons = {Polygon({{z, z}, {one, z}, {one, one}, {z, one}}),
                   Polygon({{one, z}, {two, z}, {two, one}, {one, one}})};
  data.polygon_names = {"left", "right"};
  // Vertical pairs close up the 2x1 torus; the horizontal pairs are glued
  // with a one-square shift, which is what winds the staircase.
  data.gluings = {{{0, 1}, {1, 3}}, {{0, 3}, {1, 1}}, {{0, 0}, {1, 2}}, {{0, 2}, {1, 0}}};
  // Both vertex classes are regular, but the level cycle's boundary sits on
  // them, so both are marked.
  data.marks = {{0, 0}, {0, 3}};
  auto s = Surface::build(std::move(data));

  RelativeCycle w = horizontal_difference(*s, {0, 0}, {0, 2});
  check(s->holonomy(w).is_zero(), "staircase level cycle must have zero holonomy");
  auto cover = make_cover(s, w);
  check(cover.recurrent, "staircase cover must be recurrent");

  auto diag = decompose(*s, {one, one}, Rat(3));
  check(diag.complete, "staircase slope-1 decomposition did not certify");
  check(has_strip(cover, diag, 1), "staircase slope-1 direction must give a degree-1 strip");

  ExampleBundle b;
  b.surface = s;
  b.cycles["w"] = w;
  b.notes = {
      "quotient of the infinite staircase by its step translation: two unit "
      "squares with the horizontal pairs glued one square out of phase",
      "cycle w = bottom pair minus top pair, oriented rightward; its crossing "
      "count is the staircase level",
      "slope +-1 splits into two corridors of degree +1 and -1; the axis "
      "directions close up",
  };
  return b;
}

ExampleBundle double_octagon_hw() {
  auto f = Field::create({Int(-2), Int(0), Int(1)}, Rat(1), Rat(2));
  FieldElement r = FieldElement::generator(f);
  FieldElement half = fe(f, Rat(1, 2));

  Polygon oct = regular_ngon(f, 8, r * half, r * half, {r, r});
  Surface::BuildData data;
  data.field = f;
  data.polygons = {oct, oct};
  data.polygon_names = {"oct0", "oct1"};
  // Each octagon closes its own 45-degree diagonal pairs; everything else is
  // glued across the two copies.
  data.gluings = {{{0, 0}, {0, 4}}, {{0, 2}, {0, 6}}, {{1, 0}, {1, 4}}, {{1, 2}, {1, 6}},
                  {{0, 5}, {1, 1}}, {{0, 7}, {1, 3}}, {{0, 3}, {1, 7}}, {{0, 1}, {1, 5}}};
  auto s = Surface::build(std::move(data));

  RelativeCycle w0 = horizontal_difference(*s, {0, 7}, {0, 3});
  check(s->holonomy(w0).is_zero(), "octagon cycle w0 must have zero holonomy");
  auto cover = make_cover(s, w0);
  check(cover.recurrent, "octagon cover must be recurrent");

  auto diag = decompose(*s, {fe(f, 1), fe(f, 1)}, Rat(24));
  check(diag.complete, "octagon slope-1 decomposition did not certify");
  check(has_strip(cover, diag, 0), "octagon slope-1 direction must give a strip");

  ExampleBundle b;
  b.surface = s;
  b.cycles["w0"] = w0;
  b.notes = {
      "two regular octagons of side 2; the 45-degree diagonal pairs close "
      "within each copy, horizontals and the other diagonals cross over",
      "cycle w0 = difference of the two crossing horizontal pairs, oriented "
      "rightward",
      "the slope-1 cylinder through one horizontal pair misses the other, so "
      "that direction is a strip",
  };
  return b;
}

ExampleBundle double_ngon(int n) {
  FieldPtr f;
  FieldElement ca, sa;  // exact cos, sin of 2pi/n
  Vec e0;               // first side, length 2

  switch (n) {
    case 8: {
      f = Field::create({Int(-2), Int(0), Int(1)}, Rat(1), Rat(2));
      FieldElement y = FieldElement::generator(f);  // 2cos(45)
      ca = y * Rat(1, 2);
      sa = ca;
      e0 = {y, y};
      break;
    }
    case 10:
    case 20: {
      f = Field::create({Int(5), Int(0), Int(-5), Int(0), Int(1)}, Rat(19, 10), Rat(2));
      FieldElement y = FieldElement::generator(f);  // 2cos(18)
      FieldElement c18 = y * Rat(1, 2);
      FieldElement s18 = (y * y - fe(f, 3)) * Rat(1, 2);
      if (n == 20) {
        ca = c18;
        sa = s18;
      } else {
        ca = fe(f, 2) * c18 * c18 - fe(f, 1);
        sa = fe(f, 2) * s18 * c18;
      }
      // First side at 18 degrees either way: the decagon's sides sit half a
      // step off the 36-degree grid.
      e0 = {y, y * y - fe(f, 3)};
      break;
    }
    case 12: {
      f = Field::create({Int(-3), Int(0), Int(1)}, Rat(3, 2), Rat(2));
      FieldElement y = FieldElement::generator(f);  // 2cos(30)
      ca = y * Rat(1, 2);
      sa = fe(f, Rat(1, 2));
      e0 = {y, fe(f, 1)};
      break;
    }
    case 16: {
      f = Field::create({Int(2), Int(0), Int(-4), Int(0), Int(1)}, Rat(9, 5), Rat(19, 10));
      FieldElement y = FieldElement::generator(f);  // 2cos(22.5)
      ca = y * Rat(1, 2);
      sa = (y * y * y - fe(f, 3) * y) * Rat(1, 2);  // 2cos(67.5) = y^3 - 3y
      e0 = {y, y * y * y - fe(f, 3) * y};
      break;
    }
    case 24: {
      f = Field::create({Int(1), Int(0), Int(-4), Int(0), Int(1)}, Rat(19, 10), Rat(2));
      FieldElement y = FieldElement::generator(f);  // 2cos(15)
      ca = y * Rat(1, 2);
      sa = (fe(f, 4) * y - y * y * y) * Rat(1, 2);  // 2sin(15) = 4y - y^3
      e0 = {y, fe(f, 4) * y - y * y * y};
      break;
    }
    default:
      throw Error(Errc::unsupported_n,
                  "double_ngon supports n in {8, 10, 12, 16, 20, 24}; larger n "
                  "needs field degree above 4");
  }
  check((ca * ca + sa * sa - fe(f, 1)).is_zero(), "cos/sin table broken");

  Polygon gon = regular_ngon(f, n, ca, sa, e0);
  Surface::BuildData data;
  data.field = f;
  data.polygons = {gon, gon};
  data.polygon_names = {"ngon0", "ngon1"};
  for (int k = 0; k < n; ++k) data.gluings.push_back({{0, k}, {1, (k + n / 2) % n}});
  auto s = Surface::build(std::move(data));

  // Alternate sides of the first copy, oriented along its boundary walk;
  // opposite sides are antiparallel, so the holonomy cancels in pairs (in
  // five 72-degree steps for the decagon).
  RelativeCycle w;
  for (int k = 1; k < n; k += 2)
    w.weights[s->edge_class_of({0, k})] = s->class_orientation({0, k});
  check(s->holonomy(w).is_zero(), "odd-sides cycle must have zero holonomy");
  auto cover = make_cover(s, w);
  check(cover.recurrent, "n-gon pair cover must be recurrent");

  ExampleBundle b;
  b.surface = s;
  b.cycles["w"] = w;
  b.notes = {
      "Veech pair of regular " + std::to_string(n) +
          "-gons of side 2, each side glued to the opposite side of the "
          "other copy",
      "cycle w = alternating sides of the first copy, oriented along its "
      "boundary walk",
  };

  if (n % 4 == 0) {
    b.veech_generators.push_back(rotation_element(ca, sa));
    b.veech_generators.push_back(horizontal_twist(*s));
    b.notes.push_back(
        "generators: the one-step rotation and the horizontal twist fixing "
        "every horizontal cylinder, whose moduli agree");
    if (n == 8) {
      FieldElement y = FieldElement::generator(f);
      auto dec = decompose(*s, {fe(f, 1), y - fe(f, 1)}, Rat(24));
      check(dec.complete, "octagon-pair short-diagonal decomposition did not certify");
      check(has_strip(cover, dec, 1), "octagon pair must have a degree-1 strip at slope sqrt2-1");
    }
  } else {
    b.notes.push_back(
        "here the roles swap: the horizontal direction carries the strip, "
        "while the 18-degree side direction is periodic with closed lifts");
  }
  return b;
}

ExampleBundle wollmilchsau() {
  const FieldPtr& f = Field::rationals();
  auto corner = [&](int bx, int by) {
    return Vec{fe(f, 2 * bx), fe(f, 2 * by)};
  };
  auto block = [&](int bx, int by) {
    Vec v0 = corner(bx, by);
    Vec dx{fe(f, 2), fe(f, 0)}, dy{fe(f, 0), fe(f, 2)};
    return Polygon({v0, v0 + dx, v0 + dx + dy, v0 + dy});
  };

  Surface::BuildData data;
  data.field = f;
  // Two staggered rows of four 2x2 blocks.
  for (int i = 0; i < 4; ++i) data.polygons.push_back(block(i, 0));
  for (int i = 0; i < 4; ++i) data.polygons.push_back(block(3 + i, 1));
  data.polygon_names = {"b1", "b2", "b3", "b4", "b5", "b6", "b7", "b8"};
  data.gluings = {
      // each row chains left to right, and the first row's last top feeds
      // the second row's first bottom
      {{0, 1}, {1, 3}},
      {{1, 1}, {2, 3}},
      {{2, 1}, {3, 3}},
      {{3, 2}, {4, 0}},
      {{4, 1}, {5, 3}},
      {{5, 1}, {6, 3}},
      {{6, 1}, {7, 3}},
      // wrap-around of the rows
      {{0, 3}, {3, 1}},
      {{4, 3}, {7, 1}},
      // remaining tops and bottoms, cyclically shifted between the rows
      {{2, 2}, {5, 0}},
      {{1, 2}, {6, 0}},
      {{0, 2}, {7, 0}},
      {{0, 0}, {5, 2}},
      {{1, 0}, {4, 2}},
      {{2, 0}, {7, 2}},
      {{3, 0}, {6, 2}},
  };
  auto s = Surface::build(std::move(data));

  RelativeCycle w1 = horizontal_difference(*s, {2, 2}, {0, 2});
  check(s->holonomy(w1).is_zero(), "cycle w1 must have zero holonomy");
  auto cover = make_cover(s, w1);
  check(cover.recurrent, "cover over w1 must be recurrent");

  // Every axis cylinder lifts closed; this surface never produces strips.
  for (auto d : {Vec{fe(f, 1), fe(f, 0)}, Vec{fe(f, 0), fe(f, 1)}}) {
    auto dec = decompose(*s, d, Rat(10));
    check(dec.complete, "axis decomposition did not certify");
    for (const auto& cyl : dec.cylinders)
      check(classify_cylinder_lift(cover, cyl).k == 0, "axis cylinders must lift closed");
  }

  ExampleBundle b;
  b.surface = s;
  b.cycles["w1"] = w1;
  b.notes = {
      "square-tiled surface of eight 2x2 blocks in two staggered rows, outer "
      "horizontal edges identified with a cyclic shift",
      "cycle w1 = difference of two top-edge pairs, oriented rightward",
      "every cylinder lifts to closed cylinders: the cover is recurrent but "
      "has no strips in any periodic direction",
  };
  return b;
}

std::vector<std::string> example_names() {
  return {"staircase", "double-octagon", "reg8",  "reg10",       "reg12",
          "reg16",     "reg20",          "reg24", "wollmilchsau"};
}

ExampleBundle build_example(const std::string& name) {
  if (name == "staircase") return staircase();
  if (name == "double-octagon") return double_octagon_hw();
  if (name == "reg8") return double_ngon(8);
  if (name == "reg10") return double_ngon(10);
  if (name == "reg12") return double_ngon(12);
  if (name == "reg16") return double_ngon(16);
  if (name == "reg20") return double_ngon(20);
  if (name == "reg24") return double_ngon(24);
  if (name == "wollmilchsau") return wollmilchsau();
  throw Error(Errc::bad_argument, "unknown example \"" + name + "\"");
}

}  // namespace zcover
