#include "zcover/flow.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "test_support.hpp"
#include "zcover/parallel.hpp"

namespace {

using namespace zcover;

FieldElement fe(const FieldPtr& f, const Rat& q) { return FieldElement::from_rational(f, q); }

Vec vdir(const SurfacePtr& s, const Rat& x, const Rat& y) {
  return {fe(s->field(), x), fe(s->field(), y)};
}

// 2x1 torus over the rationals with both vertex classes marked, and the
// recurrent cycle "first bottom minus second bottom".
struct Staircaseish {
  SurfacePtr s;
  int a, b, seam, wrap;
  CoverSpec cover;
};

Staircaseish marked_two_square() {
  Staircaseish out;
  out.s = ztest::two_square_torus(true);
  out.a = out.s->edge_class_of({0, 0});
  out.b = out.s->edge_class_of({1, 0});
  out.seam = out.s->edge_class_of({0, 1});
  out.wrap = out.s->edge_class_of({0, 3});
  RelativeCycle w;
  w.weights[out.a] = 1;
  w.weights[out.b] = -1;
  out.cover = make_cover(out.s, w);
  return out;
}

// Unit-square torus over Q(golden), so directions of golden slope exist.
SurfacePtr golden_square_torus() {
  auto f = ztest::golden_field();
  auto p = [&](const Rat& x, const Rat& y) { return Vec{fe(f, x), fe(f, y)}; };
  Surface::BuildData d;
  d.field = f;
  d.polygons.push_back(Polygon({p(0, 0), p(1, 0), p(1, 1), p(0, 1)}));
  d.gluings = {{{0, 0}, {0, 2}}, {{0, 1}, {0, 3}}};
  d.marks = {{0, 0}};
  return Surface::build(std::move(d));
}

// The 2x1 torus again, over Q(golden), both classes marked.
Staircaseish golden_two_square() {
  auto f = ztest::golden_field();
  auto p = [&](const Rat& x, const Rat& y) { return Vec{fe(f, x), fe(f, y)}; };
  Surface::BuildData d;
  d.field = f;
  d.polygons.push_back(Polygon({p(0, 0), p(1, 0), p(1, 1), p(0, 1)}));
  d.polygons.push_back(Polygon({p(1, 0), p(2, 0), p(2, 1), p(1, 1)}));
  d.gluings = {{{0, 0}, {0, 2}}, {{1, 0}, {1, 2}}, {{0, 1}, {1, 3}}, {{1, 1}, {0, 3}}};
  d.marks = {{0, 0}, {0, 1}};
  Staircaseish out;
  out.s = Surface::build(std::move(d));
  out.a = out.s->edge_class_of({0, 0});
  out.b = out.s->edge_class_of({1, 0});
  out.seam = out.s->edge_class_of({0, 1});
  out.wrap = out.s->edge_class_of({0, 3});
  RelativeCycle w;
  w.weights[out.a] = 1;
  w.weights[out.b] = -1;
  out.cover = make_cover(out.s, w);
  return out;
}

// Fractional part of an exact field element, located by a double estimate
// and confirmed with exact comparisons.
FieldElement frac(const FieldElement& v) {
  long long k = static_cast<long long>(std::floor(v.to_double()));
  auto lift = [&](long long n) { return fe(v.field(), Rat(static_cast<long>(n))); };
  while (v < lift(k)) --k;
  while (v >= lift(k + 1)) ++k;
  return v - lift(k);
}

// Interval index under the left-closed convention matching the return map's
// right continuity.
int interval_of(const IETData& d, const FieldElement& s) {
  int n = static_cast<int>(d.intervals.size());
  for (int j = n - 1; j >= 0; --j)
    if (s >= d.cuts[j]) return j;
  return 0;
}

struct IetWalk {
  FieldElement s;
  long long disp = 0;
  FieldElement t;

  explicit IetWalk(const IETData& d, FieldElement s0)
      : s(std::move(s0)), t(fe(s.field(), Rat(0))), data(&d) {}
  void step() {
    int j = interval_of(*data, s);
    s = s + data->translations[j];
    disp += data->displacements[j];
    t = t + data->return_times[j];
  }
  const IETData* data;
};

}  // namespace

TEST_CASE("flow trace records segments, word, and the exact return") {
  auto s = ztest::square_torus(true);
  int h = s->edge_class_of({0, 0});
  FlowBudget b;
  b.t_max = ztest::fq(1);
  Trajectory tr = trace_flow(*s, {0, ztest::vq(Rat(1, 2), Rat(1, 2))}, ztest::vq(0, 1), b);

  CHECK(tr.end == Trajectory::End::budget_time);
  CHECK(tr.elapsed == ztest::fq(1));
  REQUIRE(tr.segments.size() == 2);
  CHECK(tr.segments[0].polygon == 0);
  CHECK(tr.segments[0].entry == ztest::vq(Rat(1, 2), Rat(1, 2)));
  CHECK(tr.segments[0].exit == ztest::vq(Rat(1, 2), 1));
  CHECK(tr.segments[0].t_exit == ztest::fq(Rat(1, 2)));
  CHECK(tr.segments[0].crossing == Crossing{h, 1});
  CHECK(tr.segments[0].crossed_edge == EdgeRef{0, 2});
  CHECK(tr.segments[1].entry == ztest::vq(Rat(1, 2), 0));
  CHECK(tr.segments[1].exit == ztest::vq(Rat(1, 2), Rat(1, 2)));
  CHECK(tr.segments[1].crossing.sign == 0);
  CHECK(tr.word == CrossingWord{{h, 1}});
  CHECK(tr.final_point.polygon == 0);
  CHECK(tr.final_point.pos == ztest::vq(Rat(1, 2), Rat(1, 2)));
  CHECK(tr.final_level == 0);
  validate(*s, RelativeCycle{}, tr);

  SUBCASE("a corrupted level is caught by the checker") {
    Trajectory bad = tr;
    bad.segments[1].level += 1;
    CHECK_THROWS_AS(validate(*s, RelativeCycle{}, bad), Error);
  }
}

TEST_CASE("time budget stops mid-segment without a crossing") {
  auto s = ztest::square_torus(true);
  FlowBudget b;
  b.t_max = ztest::fq(Rat(1, 3));
  Trajectory tr = trace_flow(*s, {0, ztest::vq(Rat(1, 2), Rat(1, 2))}, ztest::vq(0, 1), b);
  REQUIRE(tr.segments.size() == 1);
  CHECK(tr.word.empty());
  CHECK(tr.segments[0].exit == ztest::vq(Rat(1, 2), Rat(5, 6)));
  CHECK(tr.elapsed == ztest::fq(Rat(1, 3)));
  validate(*s, RelativeCycle{}, tr);
}

TEST_CASE("levels along a strip direction grow monotonically") {
  auto st = marked_two_square();
  FlowBudget b;
  b.max_crossings = 20;
  Trajectory tr = trace_flow(st.cover, {{0, ztest::vq(Rat(1, 4), Rat(1, 8))}, 0},
                             ztest::vq(0, 1), b);

  CHECK(tr.end == Trajectory::End::budget_crossings);
  REQUIRE(tr.word.size() == 20);
  for (const Crossing& c : tr.word) CHECK(c == Crossing{st.a, 1});
  REQUIRE(tr.segments.size() == 20);
  for (int i = 0; i < 20; ++i) CHECK(tr.segments[i].level == i);
  CHECK(tr.final_level == 20);
  CHECK(tr.elapsed == ztest::fq(Rat(159, 8)));
  CHECK(tr.final_point.polygon == 0);
  CHECK(tr.final_point.pos == ztest::vq(Rat(1, 4), 0));
  validate(*st.s, st.cover.w, tr);
}

TEST_CASE("degenerate starts are rejected") {
  auto st = marked_two_square();
  FlowBudget b;
  b.t_max = fe(st.s->field(), Rat(1));
  try {
    trace_flow(st.cover, {{0, ztest::vq(1, 0)}, 0}, ztest::vq(0, 1), b);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::degenerate_start);
  }
  CHECK_THROWS_AS(trace_flow(*st.s, {0, ztest::vq(Rat(1, 2), Rat(1, 2))}, ztest::vq(0, 0), b),
                  Error);
}

TEST_CASE("trajectory reversal returns exactly to the start") {
  auto s = ztest::octagon_opposite();
  auto f = s->field();
  FieldElement r = FieldElement::generator(f);  // sqrt 2
  Vec d{fe(f, 1), r};
  Vec start{fe(f, -1), fe(f, 1)};
  int cls = s->edge_class_of({0, 2});
  FlowBudget b;
  b.t_max = fe(f, Rat(7, 3));

  Trajectory fwd = trace_flow(*s, {0, start}, d, b);
  CHECK(fwd.end == Trajectory::End::budget_time);
  CHECK(fwd.word == CrossingWord{{cls, -1}});
  CHECK(fwd.final_point.polygon == 0);
  CHECK(fwd.final_point.pos == Vec{fe(f, Rat(-2, 3)) - r, (Rat(4) * r - Rat(3)) / Rat(3)});
  validate(*s, RelativeCycle{}, fwd);

  Trajectory rev = trace_flow(*s, fwd.final_point, -d, b);
  CHECK(rev.end == Trajectory::End::budget_time);
  CHECK(rev.word == CrossingWord{{cls, 1}});
  CHECK(rev.final_point.polygon == 0);
  CHECK(rev.final_point.pos == start);
  CHECK(rev.elapsed == fwd.elapsed);
  validate(*s, RelativeCycle{}, rev);
}

TEST_CASE("passing a regular vertex grazes the edges on its right") {
  auto t2 = ztest::two_square_torus(false);
  int bb = t2->edge_class_of({1, 0});
  int seam = t2->edge_class_of({0, 1});
  int wrap = t2->edge_class_of({0, 3});
  RelativeCycle w;
  w.weights[seam] = 1;
  w.weights[wrap] = 1;
  CoverSpec cover = make_cover(t2, w);
  FlowBudget b;
  b.t_max = ztest::fq(2);

  Trajectory tr = trace_flow(cover, {{0, ztest::vq(Rat(1, 2), Rat(1, 2))}, 0},
                             ztest::vq(1, 1), b);
  CHECK(tr.end == Trajectory::End::singular);
  CHECK(tr.elapsed == ztest::fq(Rat(3, 2)));
  CHECK(tr.hit_vertex_class == t2->vertex_class_of({0, 0}));
  CHECK(tr.word == CrossingWord{{bb, 1}, {seam, -1}});

  REQUIRE(tr.segments.size() == 4);
  CHECK(tr.segments[0].exit == ztest::vq(1, 1));
  CHECK(tr.segments[0].crossing.sign == 0);
  CHECK(tr.segments[1].polygon == 1);
  CHECK(tr.segments[1].entry == ztest::vq(1, 0));
  CHECK(tr.segments[1].exit == ztest::vq(1, 0));
  CHECK(tr.segments[1].crossing == Crossing{bb, 1});
  CHECK(tr.segments[1].crossed_edge == EdgeRef{1, 0});
  CHECK(tr.segments[2].polygon == 1);
  CHECK(tr.segments[2].entry == ztest::vq(1, 1));
  CHECK(tr.segments[2].crossing == Crossing{seam, -1});
  CHECK(tr.segments[2].crossed_edge == EdgeRef{1, 3});
  CHECK(tr.segments[3].entry == ztest::vq(1, 0));
  CHECK(tr.segments[3].exit == ztest::vq(2, 1));
  CHECK(tr.segments[3].level == -1);
  CHECK(tr.final_level == -1);
  CHECK(tr.final_level - tr.start_level == Surface::intersection(w, tr.word));
  validate(*t2, w, tr);
}

TEST_CASE("torus first return realizes the golden rotation") {
  auto s = golden_square_torus();
  auto f = s->field();
  FieldElement phi = FieldElement::generator(f);
  FieldElement one = fe(f, 1);
  int h = s->edge_class_of({0, 0});
  RelativeCycle w;
  w.weights[h] = 1;
  CoverSpec cover = make_cover(s, w);

  Transversal tv{0, {fe(f, 0), fe(f, Rat(1, 2))}, {one, fe(f, Rat(1, 2))}};
  Vec theta{one, phi};
  IETData iet = first_return_iet(cover, tv, theta);

  REQUIRE(iet.intervals.size() == 3);
  CHECK(iet.cuts[1] == Rat(2) - phi);
  CHECK(iet.cuts[2] == (Rat(3) - phi) / Rat(2));
  CHECK(iet.intervals[0] == Rat(2) - phi);
  CHECK(iet.intervals[1] == (phi - Rat(1)) / Rat(2));
  CHECK(iet.intervals[2] == (phi - Rat(1)) / Rat(2));
  CHECK(iet.permutation == std::vector<int>{2, 0, 1});
  CHECK(iet.translations[0] == phi - Rat(1));
  CHECK(iet.translations[1] == phi - Rat(2));
  CHECK(iet.translations[2] == phi - Rat(2));
  CHECK(iet.displacements == std::vector<long long>{1, 1, 1});
  for (const FieldElement& t : iet.return_times) CHECK(t == phi - Rat(1));
  FieldElement total = fe(f, 0);
  for (const FieldElement& l : iet.intervals) total = total + l;
  CHECK(total == one);

  SUBCASE("the exchange is rotation by the fractional slope") {
    FieldElement alpha = phi - Rat(1);
    IetWalk walk(iet, fe(f, Rat(1, 10)));
    for (int n = 1; n <= 30; ++n) {
      walk.step();
      CHECK(walk.s == frac(fe(f, Rat(1, 10)) + Rat(n) * alpha));
    }
  }

  SUBCASE("discontinuity orbits stay disjoint") {
    std::vector<FieldElement> seen;
    for (int c = 1; c <= 2; ++c) {
      IetWalk walk(iet, iet.cuts[c]);
      seen.push_back(walk.s);
      for (int n = 0; n < 30; ++n) {
        walk.step();
        seen.push_back(walk.s);
      }
    }
    for (size_t i = 0; i < seen.size(); ++i)
      for (size_t j = i + 1; j < seen.size(); ++j) CHECK(seen[i] != seen[j]);
  }

  SUBCASE("displacements agree with the cocycle of the return segment") {
    for (int j = 0; j < 3; ++j) {
      FieldElement mid = (iet.cuts[j] + iet.cuts[j + 1]) / Rat(2);
      Vec p = tv.a + mid * (tv.b - tv.a);
      CocycleResult c = cocycle(cover, {0, p}, theta, iet.return_times[j]);
      CHECK(c.value == iet.displacements[j]);
    }
  }
}

TEST_CASE("vertical return to the horizontal circle is one full twist") {
  auto s = golden_square_torus();
  auto f = s->field();
  FieldElement one = fe(f, 1);
  RelativeCycle w;
  w.weights[s->edge_class_of({0, 0})] = 1;
  CoverSpec cover = make_cover(s, w);

  Transversal tv{0, {fe(f, 0), fe(f, Rat(1, 2))}, {one, fe(f, Rat(1, 2))}};
  IETData iet = first_return_iet(cover, tv, Vec{fe(f, 0), one});
  REQUIRE(iet.intervals.size() == 1);
  CHECK(iet.intervals[0] == one);
  CHECK(iet.permutation == std::vector<int>{0});
  CHECK(iet.translations[0] == fe(f, 0));
  CHECK(iet.displacements == std::vector<long long>{1});
  CHECK(iet.return_times[0] == one);
}

TEST_CASE("return orbits match the iterated exchange") {
  auto s = golden_square_torus();
  auto f = s->field();
  FieldElement phi = FieldElement::generator(f);
  RelativeCycle w;
  w.weights[s->edge_class_of({0, 0})] = 1;
  CoverSpec cover = make_cover(s, w);
  Transversal tv{0, {fe(f, 0), fe(f, Rat(1, 2))}, {fe(f, 1), fe(f, Rat(1, 2))}};
  Vec theta{fe(f, 1), phi};

  IETData iet = first_return_iet(cover, tv, theta);
  auto orbit = return_orbit(cover, tv, fe(f, Rat(1, 7)), theta, 50);
  REQUIRE(orbit.size() == 50);
  IetWalk walk(iet, fe(f, Rat(1, 7)));
  for (int k = 0; k < 50; ++k) {
    walk.step();
    CHECK(orbit[k].s == walk.s);
    CHECK(orbit[k].displacement == walk.disp);
    CHECK(orbit[k].t == walk.t);
  }
}

TEST_CASE("rational-slope returns on the marked two-square stay consistent") {
  auto st = marked_two_square();
  auto f = st.s->field();
  Transversal tv{0, ztest::vq(Rat(1, 8), Rat(1, 2)), ztest::vq(Rat(7, 8), Rat(1, 2))};
  Vec theta = ztest::vq(1, 3);

  IETData iet = first_return_iet(st.cover, tv, theta);
  FieldElement total = fe(f, 0);
  for (const FieldElement& l : iet.intervals) {
    CHECK(l.sign() > 0);
    total = total + l;
  }
  CHECK(total == fe(f, 1));
  std::vector<int> perm = iet.permutation;
  std::sort(perm.begin(), perm.end());
  for (int j = 0; j < static_cast<int>(perm.size()); ++j) CHECK(perm[j] == j);

  auto orbit = return_orbit(st.cover, tv, fe(f, Rat(1, 3)), theta, 50);
  IetWalk walk(iet, fe(f, Rat(1, 3)));
  for (int k = 0; k < 50; ++k) {
    walk.step();
    CHECK(orbit[k].s == walk.s);
    CHECK(orbit[k].displacement == walk.disp);
  }
}

TEST_CASE("first_return_iet rejects bad input") {
  auto s = golden_square_torus();
  auto f = s->field();
  FieldElement one = fe(f, 1);
  RelativeCycle w;
  w.weights[s->edge_class_of({0, 0})] = 1;
  CoverSpec cover = make_cover(s, w);
  Transversal tv{0, {fe(f, 0), fe(f, Rat(1, 2))}, {one, fe(f, Rat(1, 2))}};

  try {
    first_return_iet(cover, tv, Vec{one, fe(f, 0)});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::transversal_parallel);
  }
  try {
    Transversal at_vertex{0, {fe(f, 0), fe(f, 0)}, {one, fe(f, Rat(1, 2))}};
    first_return_iet(cover, at_vertex, Vec{one, FieldElement::generator(f)});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bad_argument);
  }
  try {
    Transversal on_edge{0, {fe(f, Rat(1, 4)), fe(f, 0)}, {fe(f, Rat(3, 4)), fe(f, 0)}};
    first_return_iet(cover, on_edge, Vec{one, FieldElement::generator(f)});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bad_argument);
  }
  try {
    first_return_iet(cover, tv, Vec{one, FieldElement::generator(f)}, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::no_return_at_budget);
  }
}

TEST_CASE("boundedness probe grows linearly along a strip") {
  auto st = marked_two_square();
  BoundednessProfile p = boundedness_probe(st.cover, {0, ztest::vq(Rat(1, 4), Rat(1, 8))},
                                           ztest::vq(0, 1), ztest::fq(10), 5);
  REQUIRE(p.times.size() == 5);
  for (int k = 0; k < 5; ++k) {
    CHECK(p.times[k] == ztest::fq(2 * (k + 1)));
    CHECK(p.max_abs_level[k] == 2 * (k + 1));
  }
}

TEST_CASE("probe stays flat when the flow never crosses the cycle") {
  auto s = ztest::square_torus(true);
  RelativeCycle w;
  w.weights[s->edge_class_of({0, 0})] = 1;
  CoverSpec cover = make_cover(s, w);
  BoundednessProfile p = boundedness_probe(cover, {0, ztest::vq(Rat(1, 2), Rat(1, 2))},
                                           ztest::vq(1, 0), ztest::fq(10), 4);
  REQUIRE(p.max_abs_level.size() == 4);
  for (long long m : p.max_abs_level) CHECK(m == 0);
}

TEST_CASE("probe passes singular hits through") {
  auto s = ztest::square_torus(true);
  RelativeCycle w;
  w.weights[s->edge_class_of({0, 0})] = 1;
  CoverSpec cover = make_cover(s, w);
  try {
    boundedness_probe(cover, {0, ztest::vq(Rat(1, 2), Rat(1, 2))}, ztest::vq(1, 1),
                      ztest::fq(10), 4);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::singular_hit);
    CHECK(std::string(e.what()).find("1/2") != std::string::npos);
  }
}

TEST_CASE("probe reports an exhausted crossing budget") {
  auto st = marked_two_square();
  try {
    boundedness_probe(st.cover, {0, ztest::vq(Rat(1, 4), Rat(1, 8))}, ztest::vq(0, 1),
                      ztest::fq(10), 5, 3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::no_return_at_budget);
  }
}

TEST_CASE("golden-slope level discrepancy reaches five") {
  auto st = golden_two_square();
  auto f = st.s->field();
  Vec theta{fe(f, 1), FieldElement::generator(f)};
  SurfacePoint x{0, {fe(f, Rat(1, 3)), fe(f, Rat(1, 7))}};
  FieldElement horizon = fe(f, 20000);

  BoundednessProfile p = boundedness_probe(st.cover, x, theta, horizon, 8);
  for (size_t k = 1; k < p.max_abs_level.size(); ++k)
    CHECK(p.max_abs_level[k] >= p.max_abs_level[k - 1]);
  CHECK(p.max_abs_level.back() >= 5);

  BoundednessProfile again = boundedness_probe(st.cover, x, theta, horizon, 8);
  CHECK(again.max_abs_level == p.max_abs_level);
}

TEST_CASE("float tracer follows the torus flow") {
  auto s = ztest::square_torus(true);
  FloatChart ch = make_float_chart(*s);
  int h = s->edge_class_of({0, 0});

  FloatTrace ft = trace_float(ch, 0, 0.5, 0.5, 0.0, 1.0, 10.0);
  CHECK(ft.approximate);
  CHECK(ft.end == Trajectory::End::budget_time);
  REQUIRE(ft.word.size() == 10);
  for (const Crossing& c : ft.word) CHECK(c == Crossing{h, 1});
  CHECK(ft.polygon == 0);
  CHECK(std::abs(ft.x - 0.5) < 1e-9);
  CHECK(std::abs(ft.y - 0.5) < 1e-9);
  CHECK(std::abs(ft.elapsed - 10.0) < 1e-12);

  FloatTrace diag = trace_float(ch, 0, 0.5, 0.5, 1.0, 1.0, 10.0);
  CHECK(diag.end == Trajectory::End::singular);
  CHECK(std::abs(diag.elapsed - 0.5) < 1e-9);
}

TEST_CASE("float tracer agrees with the exact tracer away from separatrices") {
  auto s = ztest::octagon_opposite();
  auto f = s->field();
  FlowBudget b;
  b.t_max = fe(f, 5);
  Vec start{fe(f, -1), fe(f, 1)};
  Trajectory exact = trace_flow(*s, {0, start}, Vec{fe(f, 1), fe(f, Rat(1, 3))}, b);
  CHECK(exact.end == Trajectory::End::budget_time);

  FloatChart ch = make_float_chart(*s);
  FloatTrace ft = trace_float(ch, 0, -1.0, 1.0, 1.0, 1.0 / 3.0, 5.0);
  CHECK(ft.end == Trajectory::End::budget_time);
  CHECK(ft.word == exact.word);
  CHECK(ft.polygon == exact.final_point.polygon);
  CHECK(std::abs(ft.x - exact.final_point.pos.x.to_double()) < 1e-6);
  CHECK(std::abs(ft.y - exact.final_point.pos.y.to_double()) < 1e-6);
}

TEST_CASE("parallel probes match serial probes") {
  auto st = marked_two_square();
  const int n = 12;
  std::vector<std::vector<long long>> serial(n), parallel(n);
  auto run = [&](int i) {
    Vec theta = ztest::vq(1, Rat(2 * i + 1));
    BoundednessProfile p = boundedness_probe(st.cover, {0, ztest::vq(Rat(1, 4), Rat(1, 8))},
                                             theta, ztest::fq(7), 3);
    return p.max_abs_level;
  };
  for (int i = 0; i < n; ++i) serial[i] = run(i);
  parallel_for(n, 4, [&](int i) { parallel[i] = run(i); });
  CHECK(parallel == serial);

  CHECK_THROWS_AS(parallel_for(n, 3,
                               [&](int i) {
                                 if (i == 7) throw Error(Errc::bad_argument, "boom");
                                 parallel[i] = run(i);
                               }),
                  Error);
}
