#include "zcover/flow.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

namespace zcover {

namespace {

FieldElement fe0(const FieldPtr& f) { return FieldElement::from_rational(f, Rat(0)); }
FieldElement fe1(const FieldPtr& f) { return FieldElement::from_rational(f, Rat(1)); }

long long crossing_increment(const RelativeCycle& w, const Crossing& c) {
  return c.sign * w.weight(c.edge_class);
}

// Closed-start angular sector of a corner, the same predicate
// trace_from_corner accepts: [outgoing edge ray, ray toward the previous
// vertex).
bool in_corner_sector(const Polygon& poly, int i, const Vec& d) {
  Vec a = poly.edge_vector(i);
  Vec b = -poly.edge_vector(poly.wrap(i - 1));
  return same_ray(d, a) || (cross(a, d).sign() > 0 && cross(d, b).sign() > 0);
}

// Turns a raw trace into a Trajectory: copies the chart segments, rebuilds
// the zero-length graze segments at every pass through a regular vertex from
// the vertex class geometry, and tracks the cover level across all of it.
// The graze reconstruction must reproduce the tracer's word entries exactly,
// which doubles as a consistency check between the two code paths.
Trajectory repackage(const Surface& s, const RelativeCycle& w, const SurfacePoint& start,
                     long long start_level, const Vec& theta, TraceResult raw) {
  Trajectory tr;
  tr.start = start;
  tr.theta = theta;
  tr.start_level = start_level;
  tr.word = std::move(raw.word);
  tr.final_point = raw.final_point;
  tr.elapsed = raw.t_final;
  switch (raw.end) {
    case TraceResult::End::budget_time: tr.end = Trajectory::End::budget_time; break;
    case TraceResult::End::budget_crossings: tr.end = Trajectory::End::budget_crossings; break;
    case TraceResult::End::vertex:
      tr.end = Trajectory::End::singular;
      tr.hit_vertex_class = raw.vertex_class;
      break;
  }

  long long level = start_level;
  std::size_t k = 0;
  const std::size_t nseg = raw.segments.size();
  tr.segments.reserve(nseg);
  for (std::size_t i = 0; i < nseg; ++i) {
    const TraceSegment& rs = raw.segments[i];
    tr.segments.push_back({rs.polygon, rs.entry, rs.exit, rs.t_entry, rs.t_exit,
                           rs.exit_crossing, rs.exit_edge, level});
    if (rs.exit_crossing.sign != 0) {
      check(k < tr.word.size() && tr.word[k] == rs.exit_crossing,
            "segment crossings line up with the word");
      ++k;
      level += crossing_increment(w, rs.exit_crossing);
      continue;
    }
    // A sign-0 close followed by more trace is a pass through a regular
    // vertex; the word entries it pushed are the sides grazed on the right,
    // in vertex-class corner order.
    if (i + 1 >= nseg && k >= tr.word.size()) continue;
    const Polygon& poly = s.polygon(rs.polygon);
    auto vi = poly.vertex_at(rs.exit);
    check(vi.has_value(), "pass-through happens at a vertex");
    int vc = s.vertex_class_of({rs.polygon, *vi});
    for (const CornerRef& cr : s.vertex_class(vc).corners) {
      const Polygon& cp = s.polygon(cr.polygon);
      if (cross(theta, cp.edge_vector(cr.vertex)).sign() >= 0) continue;
      EdgeRef side{cr.polygon, cr.vertex};
      Crossing g{s.edge_class_of(side), s.class_orientation(side)};
      check(k < tr.word.size() && tr.word[k] == g, "graze crossings line up with the word");
      const Vec& corner_pos = cp.vertex(cr.vertex);
      tr.segments.push_back({cr.polygon, corner_pos, corner_pos, rs.t_exit, rs.t_exit, g, side,
                             level});
      ++k;
      level += crossing_increment(w, g);
    }
  }
  check(k == tr.word.size(), "every word entry belongs to a segment");
  tr.final_level = level;
  check(tr.final_level - tr.start_level == Surface::intersection(w, tr.word),
        "level change equals the crossing pairing");
  return tr;
}

// Transversal geometry shared by the return-map routines: the direction
// along the arc and the (nonzero) area form against the flow direction.
struct TransversalFrame {
  Vec delta;
  FieldElement den;  // cross(dir, delta)
};

TransversalFrame check_transversal(const Surface& s, const Transversal& tv, const Vec& theta) {
  if (theta.is_zero()) throw Error(Errc::degenerate_start, "zero direction");
  if (tv.polygon < 0 || tv.polygon >= s.num_polygons())
    throw Error(Errc::bad_argument, "transversal polygon out of range");
  const Polygon& poly = s.polygon(tv.polygon);
  if (tv.a == tv.b) throw Error(Errc::bad_argument, "transversal endpoints coincide");
  if (!poly.contains(tv.a) || !poly.contains(tv.b))
    throw Error(Errc::bad_argument, "transversal endpoint outside its polygon");
  if (poly.vertex_at(tv.a) || poly.vertex_at(tv.b))
    throw Error(Errc::bad_argument, "transversal endpoint at a vertex");
  Vec delta = tv.b - tv.a;
  FieldElement den = cross(theta, delta);
  if (den.is_zero())
    throw Error(Errc::transversal_parallel, "flow direction is parallel to the transversal");
  Vec mid = tv.a + FieldElement::from_rational(s.field(), Rat(1, 2)) * delta;
  if (!poly.strictly_contains(mid))
    throw Error(Errc::bad_argument, "transversal lies along an edge");
  return {delta, den};
}

struct HitInfo {
  FieldElement s, t;
  std::size_t index = 0;
};

// First crossing of the transversal along a list of chart segments moving in
// direction dir, with strictly positive time.  Parameters at 0 or 1 (the
// endpoints) are reported like any other hit; callers decide what an
// endpoint hit means.  A chart segment meets the transversal line at most
// once since dir is transverse to it, so scanning in order finds the first
// hit in time.
template <typename Seg>
std::optional<HitInfo> scan_hit(const std::vector<Seg>& segments, const Transversal& tv,
                                const Vec& dir, const TransversalFrame& fr) {
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const Seg& g = segments[i];
    if (g.polygon != tv.polygon) continue;
    Vec r = tv.a - g.entry;
    FieldElement tau = cross(r, fr.delta) / fr.den;
    if (tau.sign() < 0) continue;
    if (tau > g.t_exit - g.t_entry) continue;
    FieldElement t = g.t_entry + tau;
    if (t.sign() <= 0) continue;
    FieldElement sv = cross(r, dir) / fr.den;
    if (sv.sign() < 0 || (sv - Rat(1)).sign() > 0) continue;
    return HitInfo{std::move(sv), std::move(t), i};
  }
  return std::nullopt;
}

// Runs one auxiliary orbit under geometrically growing crossing budgets
// until it crosses the transversal or resolves at a vertex.  A budget of B
// materializes the segments after the first B-1 crossings, so the last
// attempt uses max_crossings + 1 to expose a hit just past the nominal
// budget.
template <typename RunFn>
std::optional<FieldElement> orbit_first_hit(const RunFn& run, const Transversal& tv,
                                            const Vec& dir, const TransversalFrame& fr,
                                            long long max_crossings, const std::string& what) {
  long long budget = 512;
  for (;;) {
    if (budget > max_crossings) budget = max_crossings + 1;
    TraceLimits lim;
    lim.max_crossings = budget;
    TraceResult raw = run(lim);
    if (auto h = scan_hit(raw.segments, tv, dir, fr)) return std::move(h->s);
    if (raw.end == TraceResult::End::vertex) return std::nullopt;
    check(raw.end == TraceResult::End::budget_crossings, "hitless orbit runs out of crossings");
    if (budget > max_crossings)
      throw Error(Errc::no_return_at_budget,
                  what + " still running after " + std::to_string(max_crossings) + " crossings");
    budget *= 8;
  }
}

struct ReturnOutcome {
  enum class Kind { interior, endpoint, vertex } kind = Kind::interior;
  FieldElement s, t;
  long long displacement = 0;
};

// First return of the flow from parameter s_in, with the sheet displacement
// read off the level of the hit segment.
ReturnOutcome next_return(const CoverSpec& cover, const Transversal& tv, const Vec& theta,
                          const TransversalFrame& fr, const FieldElement& s_in,
                          long long max_crossings, const std::string& what) {
  Vec p = tv.a + s_in * fr.delta;
  long long budget = 512;
  for (;;) {
    if (budget > max_crossings) budget = max_crossings + 1;
    FlowBudget fb;
    fb.max_crossings = budget;
    Trajectory tr = trace_flow(cover, {{tv.polygon, p}, 0}, theta, fb);
    if (auto h = scan_hit(tr.segments, tv, theta, fr)) {
      ReturnOutcome out;
      bool endpoint = h->s.is_zero() || (h->s - Rat(1)).is_zero();
      out.kind = endpoint ? ReturnOutcome::Kind::endpoint : ReturnOutcome::Kind::interior;
      out.displacement = tr.segments[h->index].level;
      out.s = std::move(h->s);
      out.t = std::move(h->t);
      return out;
    }
    if (tr.end == Trajectory::End::singular) {
      ReturnOutcome out;
      out.kind = ReturnOutcome::Kind::vertex;
      out.s = s_in;
      out.t = tr.elapsed;
      return out;
    }
    check(tr.end == Trajectory::End::budget_crossings, "hitless orbit runs out of crossings");
    if (budget > max_crossings)
      throw Error(Errc::no_return_at_budget,
                  what + " still running after " + std::to_string(max_crossings) + " crossings");
    budget *= 8;
  }
}

}  // namespace

Trajectory trace_flow(const Surface& s, SurfacePoint start, const Vec& theta,
                      const FlowBudget& budget) {
  SurfacePoint canon = canonicalize_start(s, start, theta);
  TraceLimits lim{budget.t_max, budget.max_crossings};
  return repackage(s, RelativeCycle{}, canon, 0, theta,
                   trace(s, canon, theta, lim, false, true));
}

Trajectory trace_flow(const CoverSpec& cover, const CoverPoint& start, const Vec& theta,
                      const FlowBudget& budget) {
  const Surface& s = *cover.base;
  SurfacePoint canon = canonicalize_start(s, start.base, theta);
  TraceLimits lim{budget.t_max, budget.max_crossings};
  return repackage(s, cover.w, canon, start.level, theta,
                   trace(s, canon, theta, lim, false, true));
}

void validate(const Surface& s, const RelativeCycle& w, const Trajectory& tr) {
  check(!tr.theta.is_zero(), "trajectory direction is nonzero");
  if (tr.segments.empty()) {
    check(tr.word.empty(), "empty trajectory has an empty word");
    check(tr.final_level == tr.start_level, "empty trajectory keeps its level");
    return;
  }
  long long level = tr.start_level;
  std::size_t k = 0;
  for (std::size_t i = 0; i < tr.segments.size(); ++i) {
    const FlowSegment& g = tr.segments[i];
    check(g.polygon >= 0 && g.polygon < s.num_polygons(), "segment polygon exists");
    const Polygon& poly = s.polygon(g.polygon);
    check(poly.contains(g.entry) && poly.contains(g.exit), "segment stays in its chart");
    check((g.t_exit - g.t_entry).sign() >= 0, "segment time span is nonnegative");
    check(g.exit - g.entry == (g.t_exit - g.t_entry) * tr.theta, "segment moves along theta");
    check(g.level == level, "segment level telescopes");
    if (i == 0) {
      check(g.t_entry.is_zero(), "first segment starts at time zero");
      check(g.polygon == tr.start.polygon && g.entry == tr.start.pos,
            "first segment starts at the start point");
    } else {
      check(g.t_entry == tr.segments[i - 1].t_exit, "segments chain in time");
    }
    if (g.crossing.sign != 0) {
      check(k < tr.word.size() && tr.word[k] == g.crossing,
            "word lists the segment crossings in order");
      ++k;
      check(g.crossing.sign == cross(s.class_vector(g.crossing.edge_class), tr.theta).sign(),
            "crossing sign matches the side of the class vector");
      check(g.crossed_edge.polygon == g.polygon, "crossed edge lives in the segment's chart");
      check(s.edge_class_of(g.crossed_edge) == g.crossing.edge_class,
            "crossed edge belongs to the crossing's class");
      if (g.entry == g.exit) {
        // Graze: pinned at the base corner of the grazed side, on the right
        // of the direction of travel.
        check(g.t_entry == g.t_exit, "graze takes no time");
        auto vi = poly.vertex_at(g.entry);
        check(vi.has_value() && *vi == g.crossed_edge.edge, "graze sits at the corner of its side");
        check(cross(tr.theta, poly.edge_vector(g.crossed_edge.edge)).sign() < 0,
              "grazed side leaves to the right of the direction");
      } else {
        Vec ev = poly.edge_vector(g.crossed_edge.edge);
        check(cross(g.exit - poly.vertex(g.crossed_edge.edge), ev).is_zero(),
              "exit lies on the crossed edge");
        if (i + 1 < tr.segments.size()) {
          const FlowSegment& nx = tr.segments[i + 1];
          check(nx.polygon == s.partner(g.crossed_edge).polygon,
                "crossing lands in the partner chart");
          check(nx.entry == g.exit + s.gluing_translation(g.crossed_edge),
                "crossing translates by the gluing");
        }
      }
      level += crossing_increment(w, g.crossing);
    } else if (i + 1 < tr.segments.size()) {
      check(poly.vertex_at(g.exit).has_value(), "mid-trajectory stop happens at a vertex");
    }
  }
  check(k == tr.word.size(), "every crossing in the word appears on a segment");
  check(tr.final_level == level, "final level telescopes");
  const FlowSegment& last = tr.segments.back();
  check(tr.elapsed == last.t_exit, "elapsed time is the last segment's end");
  if (tr.end != Trajectory::End::budget_crossings) {
    check(tr.final_point.polygon == last.polygon && tr.final_point.pos == last.exit,
          "final point closes the last segment");
  } else if (last.entry != last.exit) {
    // Crossing-budget stop right after a transverse crossing: the final
    // point is the landing in the partner chart.
    check(tr.final_point.polygon == s.partner(last.crossed_edge).polygon &&
              tr.final_point.pos == last.exit + s.gluing_translation(last.crossed_edge),
          "final point lands across the last crossing");
  } else {
    // Crossing-budget stop inside a graze batch: the final point is the
    // continuation corner of the same vertex class.
    auto vi = s.polygon(tr.final_point.polygon).vertex_at(tr.final_point.pos);
    check(vi.has_value() &&
              s.vertex_class_of({tr.final_point.polygon, *vi}) ==
                  s.vertex_class_of({last.polygon, last.crossed_edge.edge}),
          "final point stays at the grazed vertex");
  }
}

IETData first_return_iet(const CoverSpec& cover, const Transversal& tv, const Vec& theta,
                         long long max_crossings) {
  const Surface& s = *cover.base;
  const FieldPtr& f = s.field();
  TransversalFrame fwd = check_transversal(s, tv, theta);
  const Vec back = -theta;
  const TransversalFrame bwd{fwd.delta, cross(back, fwd.delta)};

  // The return map can only be discontinuous at parameters whose forward
  // orbit dies before coming back: on a backward orbit of a singular or
  // marked corner, or of a transversal endpoint.  Collect the first
  // backward hits of all of them as cut candidates; orbits that resolve at
  // a vertex or an endpoint first contribute nothing.
  std::vector<FieldElement> cuts{fe0(f), fe1(f)};
  auto add_cut = [&cuts](std::optional<FieldElement> hit) {
    if (hit && hit->sign() > 0 && (*hit - Rat(1)).sign() < 0) cuts.push_back(std::move(*hit));
  };
  for (int vc = 0; vc < s.num_vertex_classes(); ++vc) {
    if (!s.in_p(vc)) continue;
    for (const CornerRef& cr : s.vertex_class(vc).corners) {
      if (!in_corner_sector(s.polygon(cr.polygon), cr.vertex, back)) continue;
      add_cut(orbit_first_hit(
          [&](const TraceLimits& lim) { return trace_from_corner(s, cr, back, lim, false, true); },
          tv, back, bwd, max_crossings,
          "backward orbit of corner " + std::to_string(cr.vertex) + " of " +
              s.polygon_name(cr.polygon)));
    }
  }
  for (const Vec* end : {&tv.a, &tv.b}) {
    add_cut(orbit_first_hit(
        [&](const TraceLimits& lim) {
          return trace(s, {tv.polygon, *end}, back, lim, false, true);
        },
        tv, back, bwd, max_crossings, "backward orbit of a transversal endpoint"));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const int n = static_cast<int>(cuts.size()) - 1;
  IETData out;
  out.cuts = cuts;
  out.intervals.reserve(n);
  out.translations.reserve(n);
  out.displacements.reserve(n);
  out.return_times.reserve(n);
  for (int j = 0; j < n; ++j) {
    FieldElement len = cuts[j + 1] - cuts[j];
    check(len.sign() > 0, "interval lengths are positive");
    // Between consecutive cuts the return map is a single translation with
    // one crossing word, so three interior samples agreeing on translation,
    // displacement, and return time certify the whole interval.
    FieldElement q = len / Rat(4);
    const std::string what = "first return on interval " + std::to_string(j);
    ReturnOutcome r1 = next_return(cover, tv, theta, fwd, cuts[j] + q, max_crossings, what);
    ReturnOutcome r2 = next_return(cover, tv, theta, fwd, cuts[j] + q + q, max_crossings, what);
    ReturnOutcome r3 = next_return(cover, tv, theta, fwd, cuts[j] + q + q + q, max_crossings, what);
    check(r1.kind == ReturnOutcome::Kind::interior && r2.kind == ReturnOutcome::Kind::interior &&
              r3.kind == ReturnOutcome::Kind::interior,
          "interval samples return to the transversal interior");
    FieldElement c1 = r1.s - (cuts[j] + q);
    FieldElement c2 = r2.s - (cuts[j] + q + q);
    FieldElement c3 = r3.s - (cuts[j] + q + q + q);
    check(c1 == c2 && c2 == c3, "interval samples agree on the translation");
    check(r1.t == r2.t && r2.t == r3.t, "interval samples agree on the return time");
    check(r1.displacement == r2.displacement && r2.displacement == r3.displacement,
          "interval samples agree on the displacement");
    out.intervals.push_back(std::move(len));
    out.translations.push_back(std::move(c1));
    out.displacements.push_back(r1.displacement);
    out.return_times.push_back(std::move(r1.t));
  }

  // The translated intervals must tile (0,1) again; their order along the
  // image is the permutation.
  std::vector<FieldElement> image;
  image.reserve(n);
  for (int j = 0; j < n; ++j) image.push_back(cuts[j] + out.translations[j]);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return image[x] < image[y]; });
  out.permutation.assign(n, -1);
  FieldElement run = fe0(f);
  for (int rank = 0; rank < n; ++rank) {
    int j = order[rank];
    check(image[j] == run, "interval images tile the transversal");
    run = run + out.intervals[j];
    out.permutation[j] = rank;
  }
  check(run == fe1(f), "interval images cover the whole transversal");
  return out;
}

std::vector<ReturnHit> return_orbit(const CoverSpec& cover, const Transversal& tv,
                                    const FieldElement& s0, const Vec& theta, int n,
                                    long long max_crossings) {
  const Surface& s = *cover.base;
  TransversalFrame fr = check_transversal(s, tv, theta);
  if (n < 0) throw Error(Errc::bad_argument, "negative return count");
  if (s0.sign() <= 0 || (s0 - Rat(1)).sign() >= 0)
    throw Error(Errc::bad_argument, "start parameter must lie strictly between 0 and 1");
  std::vector<ReturnHit> out;
  out.reserve(n);
  FieldElement cur = s0;
  FieldElement t_total = fe0(s.field());
  long long displacement = 0;
  for (int k = 0; k < n; ++k) {
    ReturnOutcome r = next_return(cover, tv, theta, fr, cur, max_crossings,
                                  "return " + std::to_string(k + 1));
    if (r.kind == ReturnOutcome::Kind::vertex)
      throw Error(Errc::singular_hit,
                  "orbit hit a singular point at time " + (t_total + r.t).to_string());
    if (r.kind == ReturnOutcome::Kind::endpoint)
      throw Error(Errc::singular_hit,
                  "orbit hit a transversal endpoint at time " + (t_total + r.t).to_string());
    displacement += r.displacement;
    t_total = t_total + r.t;
    out.push_back({r.s, displacement, t_total});
    cur = std::move(r.s);
  }
  return out;
}

BoundednessProfile boundedness_probe(const CoverSpec& cover, SurfacePoint x, const Vec& theta,
                                     const FieldElement& T, int checkpoints,
                                     long long max_crossings) {
  const Surface& s = *cover.base;
  if (checkpoints < 1) throw Error(Errc::bad_argument, "need at least one checkpoint");
  if (T.sign() <= 0) throw Error(Errc::bad_argument, "time horizon must be positive");
  SurfacePoint cur = canonicalize_start(s, x, theta);
  const FieldElement chunk = T / Rat(checkpoints);

  BoundednessProfile out;
  out.times.reserve(checkpoints);
  out.max_abs_level.reserve(checkpoints);
  FieldElement done = fe0(s.field());
  long long level = 0, max_abs = 0, used = 0;
  // One bounded trace per checkpoint, restarted from the previous endpoint,
  // keeps the memory at one chunk's crossing word instead of the whole
  // trajectory.
  for (int k = 0; k < checkpoints; ++k) {
    TraceLimits lim;
    lim.t_max = chunk;
    lim.max_crossings = max_crossings - used;
    TraceResult raw = trace(s, cur, theta, lim, false, false);
    for (const Crossing& c : raw.word) {
      level += crossing_increment(cover.w, c);
      max_abs = std::max(max_abs, level < 0 ? -level : level);
    }
    used += static_cast<long long>(raw.word.size());
    if (raw.end == TraceResult::End::vertex)
      throw Error(Errc::singular_hit,
                  "flow hit a singular point at time " + (done + raw.t_final).to_string());
    if (raw.end == TraceResult::End::budget_crossings)
      throw Error(Errc::no_return_at_budget,
                  "crossing budget of " + std::to_string(max_crossings) + " exhausted at time " +
                      (done + raw.t_final).to_string());
    done = done + chunk;
    out.times.push_back(done);
    out.max_abs_level.push_back(max_abs);
    cur = raw.final_point;
  }
  return out;
}

FloatChart make_float_chart(const Surface& s) {
  FloatChart ch;
  ch.surface = &s;
  ch.verts.resize(s.num_polygons());
  ch.edges.resize(s.num_polygons());
  for (int p = 0; p < s.num_polygons(); ++p) {
    const Polygon& poly = s.polygon(p);
    for (int i = 0; i < poly.size(); ++i) {
      const Vec& v = poly.vertex(i);
      ch.verts[p].push_back({v.x.to_double(), v.y.to_double()});
      EdgeRef e{p, i};
      EdgeRef q = s.partner(e);
      const Vec& t = s.gluing_translation(e);
      ch.edges[p].push_back({q.polygon, q.edge, s.edge_class_of(e), t.x.to_double(),
                             t.y.to_double()});
    }
  }
  ch.class_vec.reserve(s.num_edge_classes());
  for (int c = 0; c < s.num_edge_classes(); ++c) {
    Vec v = s.class_vector(c);
    ch.class_vec.push_back({v.x.to_double(), v.y.to_double()});
  }
  return ch;
}

FloatTrace trace_float(const FloatChart& chart, int polygon, double x, double y, double dx,
                       double dy, double t_max, long long max_crossings) {
  if (dx == 0 && dy == 0) throw Error(Errc::degenerate_start, "zero direction");
  if (polygon < 0 || polygon >= static_cast<int>(chart.verts.size()))
    throw Error(Errc::degenerate_start, "start polygon out of range");
  FloatTrace out;
  out.polygon = polygon;
  out.x = x;
  out.y = y;
  double t = 0;
  int entered_by = -1;  // edge of the current chart the orbit came in through
  for (;;) {
    if (static_cast<long long>(out.word.size()) >= max_crossings) {
      out.end = Trajectory::End::budget_crossings;
      out.elapsed = t;
      return out;
    }
    const auto& vs = chart.verts[out.polygon];
    const int n = static_cast<int>(vs.size());
    double best_tau = std::numeric_limits<double>::infinity();
    int best_edge = -1;
    for (int i = 0; i < n; ++i) {
      if (i == entered_by) continue;
      const auto& v0 = vs[i];
      const auto& v1 = vs[(i + 1) % n];
      const double ex = v1.first - v0.first, ey = v1.second - v0.second;
      const double den = dx * ey - dy * ex;
      if (den <= 0) continue;  // the direction does not leave through this side
      const double wx = v0.first - out.x, wy = v0.second - out.y;
      const double tau = (wx * ey - wy * ex) / den;
      if (tau < 0 || tau >= best_tau) continue;
      best_tau = tau;
      best_edge = i;
    }
    if (best_edge < 0) {
      // Rounding left no forward exit; only the exact tracer can untangle a
      // boundary-pinned orbit.
      out.end = Trajectory::End::singular;
      out.elapsed = t;
      return out;
    }
    if (t + best_tau >= t_max) {
      const double rem = t_max - t;
      out.x += rem * dx;
      out.y += rem * dy;
      out.elapsed = t_max;
      out.end = Trajectory::End::budget_time;
      return out;
    }
    // Edge parameter of the crossing in extended precision; ties against a
    // vertex are beyond what rounded charts can decide.
    const auto& v0 = vs[best_edge];
    const auto& v1 = vs[(best_edge + 1) % n];
    const long double ex = static_cast<long double>(v1.first) - v0.first;
    const long double ey = static_cast<long double>(v1.second) - v0.second;
    const long double wx = static_cast<long double>(v0.first) - out.x;
    const long double wy = static_cast<long double>(v0.second) - out.y;
    const long double den = static_cast<long double>(dx) * ey - static_cast<long double>(dy) * ex;
    const long double u = (wx * static_cast<long double>(dy) - wy * static_cast<long double>(dx)) / den;
    if (u < kFloatCrossingTol || u > 1.0L - kFloatCrossingTol) {
      out.x += best_tau * dx;
      out.y += best_tau * dy;
      out.elapsed = t + best_tau;
      out.end = Trajectory::End::singular;
      return out;
    }
    const FloatChart::Edge& ed = chart.edges[out.polygon][best_edge];
    const auto& cv = chart.class_vec[ed.edge_class];
    const int sign = cv.first * dy - cv.second * dx > 0 ? 1 : -1;
    out.word.push_back({ed.edge_class, sign});
    out.x += best_tau * dx + ed.tx;
    out.y += best_tau * dy + ed.ty;
    t += best_tau;
    out.polygon = ed.partner_polygon;
    entered_by = ed.partner_edge;
  }
}

}  // namespace zcover
