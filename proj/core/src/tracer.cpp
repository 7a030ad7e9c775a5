#include "zcover/tracer.hpp"

namespace zcover {

namespace {

FieldElement fe0(const FieldPtr& f) { return FieldElement::from_rational(f, Rat(0)); }

// Parameter t with t*d == delta, for delta parallel to d.
FieldElement parallel_param(const Vec& d, const Vec& delta) {
  if (!d.x.is_zero()) return delta.x / d.x;
  return delta.y / d.y;
}

struct StepEvent {
  enum Kind { exit_edge, hit_vertex, reached_budget } kind;
  FieldElement t;  // relative to the step's start
  // exit_edge:
  EdgeRef edge;
  Vec exit_point;
  // hit_vertex:
  CornerRef corner;
  // reached_budget:
  Vec stop_point;
};

// One straight hop inside a polygon.  Preconditions: x lies in the closed
// polygon; if x is a vertex then d points along an adjacent edge or strictly
// into the corner's sector; if x is on an edge interior then d is parallel
// to the edge or points strictly inward.
StepEvent step(const Surface& s, const SurfacePoint& x, const Vec& d,
               const FieldElement* t_cap) {
  const Polygon& poly = s.polygon(x.polygon);
  const int n = poly.size();

  // Walking along an edge is the one case the generic edge scan cannot
  // express (the crossing denominators vanish), so catch it first.
  std::optional<int> walk_target;  // vertex index we walk toward
  if (auto vi = poly.vertex_at(x.pos)) {
    Vec a = poly.edge_vector(*vi);
    Vec b = -poly.edge_vector(poly.wrap(*vi - 1));
    if (same_ray(d, a))
      walk_target = poly.wrap(*vi + 1);
    else if (same_ray(d, b))
      walk_target = poly.wrap(*vi - 1);
  } else if (auto ei = poly.boundary_edge(x.pos)) {
    Vec e = poly.edge_vector(*ei);
    if (cross(d, e).is_zero()) walk_target = dot(d, e).sign() > 0 ? poly.wrap(*ei + 1) : *ei;
  }
  if (walk_target) {
    FieldElement t = parallel_param(d, poly.vertex(*walk_target) - x.pos);
    check(t.sign() > 0, "edge walk moves forward");
    if (t_cap && !(*t_cap > t)) {
      if (*t_cap == t) return {StepEvent::hit_vertex, t, {}, {}, {x.polygon, *walk_target}, {}};
      return {StepEvent::reached_budget, *t_cap, {}, {}, {}, x.pos + *t_cap * d};
    }
    return {StepEvent::hit_vertex, t, {}, {}, {x.polygon, *walk_target}, {}};
  }

  // Generic exit scan: x + t*d == v_i + s*e_i with t > 0, s in [0,1].
  std::optional<FieldElement> best_t;
  int best_edge = -1;
  FieldElement best_s;
  for (int i = 0; i < n; ++i) {
    Vec e = poly.edge_vector(i);
    FieldElement den = cross(d, e);
    if (den.is_zero()) continue;
    Vec w = poly.vertex(i) - x.pos;
    FieldElement t = cross(w, e) / den;
    if (t.sign() <= 0) continue;
    FieldElement sv = cross(w, d) / den;
    int ss = sv.sign(), s1 = (sv - Rat(1)).sign();
    if (ss < 0 || s1 > 0) continue;
    if (!best_t || t < *best_t) {
      best_t = t;
      best_edge = i;
      best_s = sv;
    }
  }
  check(best_t.has_value(), "forward exit exists in a convex polygon");

  if (t_cap && *t_cap < *best_t)
    return {StepEvent::reached_budget, *t_cap, {}, {}, {}, x.pos + *t_cap * d};

  if (best_s.is_zero()) return {StepEvent::hit_vertex, *best_t, {}, {}, {x.polygon, best_edge}, {}};
  if (best_s == FieldElement::from_rational(best_s.field(), Rat(1)))
    return {StepEvent::hit_vertex, *best_t, {}, {}, {x.polygon, poly.wrap(best_edge + 1)}, {}};

  return {StepEvent::exit_edge, *best_t, EdgeRef{x.polygon, best_edge}, x.pos + *best_t * d, {}, {}};
}

TraceResult trace_impl(const Surface& s, SurfacePoint x, const Vec& d, const TraceLimits& lim,
                       bool stop_at_any_vertex, bool collect_segments) {
  TraceResult res;
  const FieldPtr& f = s.field();
  FieldElement t_acc = fe0(f);
  Vec seg_entry = x.pos;
  FieldElement seg_t = t_acc;

  auto close_segment = [&](const Vec& exit, const FieldElement& t_exit, Crossing c, EdgeRef e) {
    if (collect_segments)
      res.segments.push_back({x.polygon, seg_entry, exit, seg_t, t_exit, c, e});
  };

  for (;;) {
    if (static_cast<long long>(res.word.size()) >= lim.max_crossings) {
      res.end = TraceResult::End::budget_crossings;
      res.final_point = x;
      res.t_final = t_acc;
      return res;
    }
    std::optional<FieldElement> remaining;
    if (lim.t_max) remaining = *lim.t_max - t_acc;
    StepEvent ev = step(s, x, d, remaining ? &*remaining : nullptr);
    FieldElement t_evt = t_acc + ev.t;

    switch (ev.kind) {
      case StepEvent::reached_budget: {
        close_segment(ev.stop_point, t_evt, {-1, 0}, {-1, -1});
        res.end = TraceResult::End::budget_time;
        res.final_point = {x.polygon, ev.stop_point};
        res.t_final = t_evt;
        return res;
      }
      case StepEvent::hit_vertex: {
        int vc = s.vertex_class_of(ev.corner);
        const Vec vpos = s.polygon(ev.corner.polygon).vertex(ev.corner.vertex);
        if (stop_at_any_vertex || s.in_p(vc)) {
          close_segment(vpos, t_evt, {-1, 0}, {-1, -1});
          res.end = TraceResult::End::vertex;
          res.final_point = {ev.corner.polygon, vpos};
          res.t_final = t_evt;
          res.vertex_class = vc;
          res.vertex_corner = ev.corner;
          return res;
        }
        // Regular unmarked point: flow straight through.  The chart may
        // change, so re-resolve the sector on the far side.
        CornerRef c = resolve_sector(s, vc, d);
        close_segment(vpos, t_evt, {-1, 0}, {-1, -1});
        // A path through the vertex crosses every edge end emanating on its
        // right; record those so the word stays the crossing word of a
        // slightly displaced path.  The sign of each grazed side reduces to
        // its class orientation.
        for (const CornerRef& cr : s.vertex_class(vc).corners) {
          Vec ray = s.polygon(cr.polygon).edge_vector(cr.vertex);
          EdgeRef side{cr.polygon, cr.vertex};
          if (cross(d, ray).sign() < 0)
            res.word.push_back({s.edge_class_of(side), s.class_orientation(side)});
        }
        x = {c.polygon, s.polygon(c.polygon).vertex(c.vertex)};
        t_acc = t_evt;
        seg_entry = x.pos;
        seg_t = t_acc;
        break;
      }
      case StepEvent::exit_edge: {
        int cls = s.edge_class_of(ev.edge);
        int sign = cross(s.class_vector(cls), d).sign();
        check(sign != 0, "transverse crossing has a side");
        Crossing c{cls, sign};
        close_segment(ev.exit_point, t_evt, c, ev.edge);
        res.word.push_back(c);
        EdgeRef q = s.partner(ev.edge);
        x = {q.polygon, ev.exit_point + s.gluing_translation(ev.edge)};
        t_acc = t_evt;
        seg_entry = x.pos;
        seg_t = t_acc;
        break;
      }
    }
  }
}

}  // namespace

CornerRef resolve_sector(const Surface& s, int vclass, const Vec& d) {
  const auto& vc = s.vertex_class(vclass);
  check(vc.angle_multiple == 1, "sector resolution needs a cone angle of exactly 2*pi");
  for (CornerRef c : vc.corners) {
    const Polygon& poly = s.polygon(c.polygon);
    Vec a = poly.edge_vector(c.vertex);
    Vec b = -poly.edge_vector(poly.wrap(c.vertex - 1));
    if (same_ray(d, a)) return c;
    if (cross(a, d).sign() > 0 && cross(d, b).sign() > 0) return c;
  }
  throw Error(Errc::internal, "direction escaped every sector of a 2*pi vertex");
}

SurfacePoint canonicalize_start(const Surface& s, SurfacePoint x, const Vec& d) {
  if (d.is_zero()) throw Error(Errc::degenerate_start, "zero direction");
  if (x.polygon < 0 || x.polygon >= s.num_polygons())
    throw Error(Errc::degenerate_start, "start polygon out of range");
  const Polygon& poly = s.polygon(x.polygon);
  if (!poly.contains(x.pos)) throw Error(Errc::degenerate_start, "start point outside its polygon");

  if (auto vi = poly.vertex_at(x.pos)) {
    int vc = s.vertex_class_of({x.polygon, *vi});
    if (s.in_p(vc))
      throw Error(Errc::degenerate_start, "flow is undefined from a singular or marked point");
    CornerRef c = resolve_sector(s, vc, d);
    return {c.polygon, s.polygon(c.polygon).vertex(c.vertex)};
  }
  if (auto ei = poly.boundary_edge(x.pos)) {
    // Outward-pointing starts live in the partner chart.
    if (cross(poly.edge_vector(*ei), d).sign() < 0) {
      EdgeRef e{x.polygon, *ei};
      EdgeRef q = s.partner(e);
      return {q.polygon, x.pos + s.gluing_translation(e)};
    }
  }
  return x;
}

TraceResult trace(const Surface& s, SurfacePoint start, const Vec& d, const TraceLimits& lim,
                  bool stop_at_any_vertex, bool collect_segments) {
  SurfacePoint x = canonicalize_start(s, start, d);
  return trace_impl(s, x, d, lim, stop_at_any_vertex, collect_segments);
}

TraceResult trace_from_corner(const Surface& s, CornerRef corner, const Vec& d,
                              const TraceLimits& lim, bool stop_at_any_vertex,
                              bool collect_segments) {
  if (d.is_zero()) throw Error(Errc::degenerate_start, "zero direction");
  const Polygon& poly = s.polygon(corner.polygon);
  Vec a = poly.edge_vector(corner.vertex);
  Vec b = -poly.edge_vector(poly.wrap(corner.vertex - 1));
  bool ok = same_ray(d, a) || (cross(a, d).sign() > 0 && cross(d, b).sign() > 0);
  if (!ok)
    throw Error(Errc::degenerate_start, "direction is not in the corner's angular sector");
  SurfacePoint x{corner.polygon, poly.vertex(corner.vertex)};
  return trace_impl(s, x, d, lim, stop_at_any_vertex, collect_segments);
}

}  // namespace zcover
