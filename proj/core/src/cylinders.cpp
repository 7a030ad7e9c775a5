#include "zcover/cylinders.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "zcover/errors.hpp"

namespace zcover {

namespace {

FieldElement fe(const Surface& s, const Rat& q) { return FieldElement::from_rational(s.field(), q); }

// Rational upper bound on lmax / |d|, the trace-time budget matching a
// holonomy length of lmax.  Overshooting slightly is harmless, so a double
// square root with a downward nudge on the denominator is enough.
Rat time_cap(const Surface& s, const Vec& d, const Rat& lmax) {
  FieldElement nsq = norm_sq(d);
  check(nsq.sign() > 0, "direction has positive length");
  Rat lo;
  for (int bits = 64;; bits *= 2) {
    lo = nsq.approx(bits).first;
    if (sgn(lo) > 0) break;
    check(bits <= (1 << 20), "norm enclosure refines to a positive lower bound");
  }
  double root = std::sqrt(to_double(lo)) * (1.0 - 1e-9);
  check(root > 0.0, "usable lower bound on the direction length");
  return lmax * Rat(1000001, 1000000) / Rat(root);
}

bool in_start_sector(const Polygon& poly, int i, const Vec& d) {
  Vec a = poly.edge_vector(i);
  Vec b = -poly.edge_vector(poly.wrap(i - 1));
  return same_ray(d, a) || (cross(a, d).sign() > 0 && cross(d, b).sign() > 0);
}

struct ScanAll {
  std::vector<SaddleConnection> conns;
  int unresolved = 0;
};

// Traces every separatrix out to the scan budget.  Connections slightly
// longer than lmax (inside the budget slack) are kept; callers filter.
ScanAll scan_all(const Surface& s, const Vec& d, const Rat& lmax) {
  if (d.is_zero()) throw Error(Errc::bad_argument, "direction must be nonzero");
  if (sgn(lmax) <= 0) throw Error(Errc::bad_argument, "length bound must be positive");
  TraceLimits lim;
  lim.t_max = fe(s, time_cap(s, d, lmax));
  lim.max_crossings = 4'000'000;

  ScanAll out;
  for (int p = 0; p < s.num_polygons(); ++p) {
    const Polygon& poly = s.polygon(p);
    for (int i = 0; i < poly.size(); ++i) {
      if (!s.in_p(s.vertex_class_of({p, i}))) continue;
      if (!in_start_sector(poly, i, d)) continue;
      TraceResult res = trace_from_corner(s, {p, i}, d, lim, false, true);
      if (res.end != TraceResult::End::vertex) {
        ++out.unresolved;
        continue;
      }
      check(s.in_p(res.vertex_class), "separatrix stops only on the distinguished point set");
      SaddleConnection c;
      c.start = {p, i};
      c.end = res.vertex_corner;
      c.direction = d;
      c.t_len = res.t_final;
      c.word = std::move(res.word);
      c.segments = std::move(res.segments);
      out.conns.push_back(std::move(c));
    }
  }
  return out;
}

FieldElement loop_area(const std::vector<Vec>& v) {
  FieldElement twice = cross(v.back(), v.front());
  for (size_t i = 0; i + 1 < v.size(); ++i) twice += cross(v[i], v[i + 1]);
  return twice * Rat(1, 2);
}

void dedupe_loop(std::vector<Vec>& v) {
  std::vector<Vec> out;
  for (const Vec& p : v)
    if (out.empty() || !(out.back() == p)) out.push_back(p);
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  v = std::move(out);
}

}  // namespace

SeparatrixScan separatrices(const Surface& s, const Vec& d, const Rat& lmax) {
  ScanAll all = scan_all(s, d, lmax);
  SeparatrixScan out;
  out.unresolved = all.unresolved;
  FieldElement bound = fe(s, lmax * lmax);
  FieldElement nsq = norm_sq(d);
  for (auto& c : all.conns)
    if ((c.t_len * c.t_len * nsq - bound).sign() <= 0) out.connections.push_back(std::move(c));
  return out;
}

CylinderDecomposition decompose(const Surface& s, const Vec& d, const Rat& lmax) {
  CylinderDecomposition dec;
  dec.direction = d;
  dec.lmax = lmax;

  ScanAll scan = scan_all(s, d, lmax);
  dec.unresolved = scan.unresolved;
  dec.connections = std::move(scan.conns);
  if (dec.unresolved > 0) return dec;  // not certified periodic at this depth
  dec.complete = true;

  const int np = s.num_polygons();
  const FieldElement zero = fe(s, Rat(0));
  auto tau = [&](const Vec& v) { return cross(d, v); };

  // A connection along an edge severs the whole class; everything else cuts
  // polygon chords at a fixed transverse level.
  struct Chord {
    Vec a, b;  // dot(d, b - a) > 0
    int conn;
    FieldElement level;
  };
  std::map<int, int> severed;  // edge class -> connection
  std::vector<std::vector<Chord>> chords(np);
  std::vector<std::vector<std::vector<Vec>>> splits(np);
  for (int p = 0; p < np; ++p) splits[p].resize(s.polygon(p).size());

  for (int ci = 0; ci < static_cast<int>(dec.connections.size()); ++ci) {
    for (const TraceSegment& seg : dec.connections[ci].segments) {
      const Polygon& poly = s.polygon(seg.polygon);
      if (seg.entry == seg.exit) continue;
      auto iu = poly.vertex_at(seg.entry);
      auto iw = poly.vertex_at(seg.exit);
      int along = -1;
      if (iu && iw) {
        if (poly.wrap(*iu + 1) == *iw) along = *iu;
        else if (poly.wrap(*iw + 1) == *iu) along = *iw;
      }
      if (along >= 0) {
        int cls = s.edge_class_of({seg.polygon, along});
        auto [it, fresh] = severed.emplace(cls, ci);
        check(fresh || it->second == ci, "one connection covers a flow-parallel edge");
        continue;
      }
      Chord ch;
      ch.conn = ci;
      ch.level = tau(seg.entry);
      check((ch.level - tau(seg.exit)).is_zero(), "chord endpoints share a transverse level");
      if (dot(d, seg.exit - seg.entry).sign() > 0) {
        ch.a = seg.entry;
        ch.b = seg.exit;
      } else {
        ch.a = seg.exit;
        ch.b = seg.entry;
      }
      chords[seg.polygon].push_back(std::move(ch));

      // Crossing exits subdivide the glued edge on both sides.
      if (seg.exit_edge.polygon >= 0) {
        EdgeRef e = seg.exit_edge;
        auto add_split = [&](EdgeRef at, const Vec& pt) {
          for (const Vec& q : splits[at.polygon][at.edge])
            if (q == pt) return;
          splits[at.polygon][at.edge].push_back(pt);
        };
        add_split(e, seg.exit);
        add_split(s.partner(e), seg.exit + s.gluing_translation(e));
      }
    }
  }

  // Sanity: chord levels stay strictly inside their polygon's transverse
  // range, so every level line cuts clean through.
  for (int p = 0; p < np; ++p) {
    if (chords[p].empty()) continue;
    const Polygon& poly = s.polygon(p);
    FieldElement lo = tau(poly.vertex(0)), hi = lo;
    for (const Vec& v : poly.vertices()) {
      FieldElement t = tau(v);
      if (t < lo) lo = t;
      if (t > hi) hi = t;
    }
    for (const Chord& ch : chords[p])
      check(ch.level > lo && ch.level < hi, "cut chord crosses the polygon interior");
  }

  // Base loop per polygon: original vertices plus the edge split points.
  struct CellBuild {
    int polygon;
    std::vector<Vec> v;
  };
  std::vector<CellBuild> cells;

  for (int p = 0; p < np; ++p) {
    const Polygon& poly = s.polygon(p);
    std::vector<Vec> base;
    for (int e = 0; e < poly.size(); ++e) {
      base.push_back(poly.vertex(e));
      Vec ev = poly.edge_vector(e);
      FieldElement len = norm_sq(ev);
      std::vector<std::pair<FieldElement, Vec>> pts;
      for (const Vec& pt : splits[p][e]) {
        FieldElement par = dot(pt - poly.vertex(e), ev);
        check(par.sign() > 0 && par < len, "edge split point is interior to its edge");
        pts.emplace_back(std::move(par), pt);
      }
      std::sort(pts.begin(), pts.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      for (auto& [par, pt] : pts) base.push_back(pt);
    }

    std::vector<FieldElement> levels;
    for (const Chord& ch : chords[p]) {
      bool seen = false;
      for (const FieldElement& l : levels)
        if ((l - ch.level).is_zero()) {
          seen = true;
          break;
        }
      if (!seen) levels.push_back(ch.level);
    }
    std::sort(levels.begin(), levels.end(), [](const FieldElement& a, const FieldElement& b) { return a < b; });

    auto insert_line_points = [&](std::vector<Vec>& loop, const FieldElement& level) {
      int n = static_cast<int>(loop.size());
      int at = -1;
      for (int i = 0; i < n; ++i) {
        if ((tau(loop[i]) - level).is_zero() && (tau(loop[(i + 1) % n]) - level).is_zero()) {
          check(at < 0, "one boundary edge lies on the level line");
          at = i;
        }
      }
      check(at >= 0, "level line leaves a boundary edge on the cell");
      Vec a = loop[at], b = loop[(at + 1) % n];
      Vec dir = b - a;
      std::vector<std::pair<FieldElement, Vec>> ins;
      auto consider = [&](const Vec& pt) {
        if (pt == a || pt == b) return;
        for (const auto& [par, q] : ins)
          if (q == pt) return;
        FieldElement par = dot(pt - a, dir);
        check(par.sign() > 0 && par < norm_sq(dir), "chord endpoint lands on the level edge");
        ins.emplace_back(std::move(par), pt);
      };
      for (const Chord& ch : chords[p])
        if ((ch.level - level).is_zero()) {
          consider(ch.a);
          consider(ch.b);
        }
      std::sort(ins.begin(), ins.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      std::vector<Vec> out;
      for (int i = 0; i < n; ++i) {
        out.push_back(loop[i]);
        if (i == at)
          for (auto& [par, pt] : ins) out.push_back(pt);
      }
      loop = std::move(out);
    };

    std::vector<Vec> cur = std::move(base);
    for (const FieldElement& level : levels) {
      std::vector<Vec> lower, upper;
      int n = static_cast<int>(cur.size());
      std::vector<int> side(n);
      for (int i = 0; i < n; ++i) side[i] = (tau(cur[i]) - level).sign();
      for (int i = 0; i < n; ++i) {
        const Vec& u = cur[i];
        const Vec& w = cur[(i + 1) % n];
        int su = side[i], sw = side[(i + 1) % n];
        if (su <= 0) lower.push_back(u);
        if (su >= 0) upper.push_back(u);
        if ((su < 0 && sw > 0) || (su > 0 && sw < 0)) {
          FieldElement tu = tau(u), tw = tau(w);
          FieldElement t = (level - tu) / (tw - tu);
          Vec x = u + t * (w - u);
          lower.push_back(x);
          upper.push_back(x);
        }
      }
      dedupe_loop(lower);
      dedupe_loop(upper);
      check(lower.size() >= 3 && upper.size() >= 3, "level line cuts through the cell");
      insert_line_points(lower, level);
      insert_line_points(upper, level);
      cells.push_back({p, std::move(lower)});
      cur = std::move(upper);
    }
    cells.push_back({p, std::move(cur)});
  }

  // Match every cell boundary piece with its counterpart: the other side of
  // a glued edge, or the neighboring cell across a level line.  Matched
  // pieces either glue (same cylinder interior) or sit on a connection.
  struct Claim {
    int cell;
    Vec u, w;
    bool external;
    EdgeRef er;
  };
  std::map<std::string, std::vector<Claim>> groups;

  for (int ci = 0; ci < static_cast<int>(cells.size()); ++ci) {
    const CellBuild& cell = cells[ci];
    const Polygon& poly = s.polygon(cell.polygon);
    int n = static_cast<int>(cell.v.size());
    for (int i = 0; i < n; ++i) {
      const Vec& u = cell.v[i];
      const Vec& w = cell.v[(i + 1) % n];
      std::optional<EdgeRef> onedge;
      for (int e = 0; e < poly.size(); ++e) {
        Vec ve = poly.vertex(e);
        Vec ev = poly.edge_vector(e);
        if (!cross(u - ve, ev).is_zero() || !cross(w - ve, ev).is_zero()) continue;
        FieldElement pu = dot(u - ve, ev), pw = dot(w - ve, ev);
        FieldElement len = norm_sq(ev);
        if (pu.sign() < 0 || pw.sign() < 0 || pu > len || pw > len) continue;
        check(pu < pw, "cell boundary follows the polygon orientation on its edges");
        onedge = EdgeRef{cell.polygon, e};
        break;
      }
      std::string key;
      Claim cl{ci, u, w, onedge.has_value(), onedge.value_or(EdgeRef{})};
      if (onedge) {
        int cls = s.edge_class_of(*onedge);
        Vec ku = u, kw = w;
        if (s.class_orientation(*onedge) < 0) {
          const Vec& tr = s.gluing_translation(*onedge);
          ku += tr;
          kw += tr;
        }
        std::string sa = ku.to_string(), sb = kw.to_string();
        if (sb < sa) std::swap(sa, sb);
        key = "E" + std::to_string(cls) + "|" + sa + "|" + sb;
      } else {
        check(cross(d, w - u).is_zero(), "interior cell boundary runs along the flow direction");
        std::string sa = u.to_string(), sb = w.to_string();
        if (sb < sa) std::swap(sa, sb);
        key = "I" + std::to_string(cell.polygon) + "|" + sa + "|" + sb;
      }
      groups[key].push_back(std::move(cl));
    }
  }

  struct CutRec {
    int cell;
    int conn;
    Vec at;
  };
  std::vector<CutRec> cuts;
  std::vector<std::vector<std::pair<int, Vec>>> adj(cells.size());  // (other cell, chart shift)

  for (auto& [key, claims] : groups) {
    check(claims.size() == 2, "every cell boundary piece is shared by exactly two cells");
    Claim& c0 = claims[0];
    Claim& c1 = claims[1];
    if (c0.external) {
      check(s.partner(c0.er) == c1.er, "matched cell pieces sit on glued edge sides");
      int cls = s.edge_class_of(c0.er);
      auto it = severed.find(cls);
      if (it != severed.end()) {
        cuts.push_back({c0.cell, it->second, c0.u});
        cuts.push_back({c1.cell, it->second, c1.u});
      } else {
        const Vec& tr = s.gluing_translation(c0.er);
        adj[c0.cell].push_back({c1.cell, tr});
        adj[c1.cell].push_back({c0.cell, -tr});
      }
    } else {
      int p = cells[c0.cell].polygon;
      FieldElement level = tau(c0.u);
      Vec mid = Rat(1, 2) * (c0.u + c0.w);
      int conn = -1;
      for (const Chord& ch : chords[p]) {
        if (!(ch.level - level).is_zero()) continue;
        if (dot(mid - ch.a, ch.b - ch.a).sign() >= 0 && dot(ch.b - mid, ch.b - ch.a).sign() >= 0) {
          conn = ch.conn;
          break;
        }
      }
      if (conn >= 0) {
        cuts.push_back({c0.cell, conn, c0.u});
        cuts.push_back({c1.cell, conn, c1.u});
      } else {
        Vec none = Vec::zero(s.field());
        adj[c0.cell].push_back({c1.cell, none});
        adj[c1.cell].push_back({c0.cell, none});
      }
    }
  }

  // Components of the cut complex, with a transverse offset per cell so
  // tau is a single coordinate on each component.
  int nc = static_cast<int>(cells.size());
  std::vector<int> comp(nc, -1);
  std::vector<FieldElement> off(nc, zero);
  int ncomp = 0;
  for (int seed = 0; seed < nc; ++seed) {
    if (comp[seed] >= 0) continue;
    comp[seed] = ncomp;
    off[seed] = zero;
    std::deque<int> q{seed};
    while (!q.empty()) {
      int cur = q.front();
      q.pop_front();
      for (const auto& [nb, tr] : adj[cur]) {
        FieldElement want = off[cur] - cross(d, tr);
        if (comp[nb] < 0) {
          comp[nb] = ncomp;
          off[nb] = want;
          q.push_back(nb);
        } else {
          check(comp[nb] == ncomp && (off[nb] - want).is_zero(),
                "transverse offsets are consistent around the component");
        }
      }
    }
    ++ncomp;
  }

  FieldElement nsq = norm_sq(d);
  std::vector<FieldElement> width(ncomp, zero);
  dec.cylinders.resize(ncomp);

  for (int k = 0; k < ncomp; ++k) {
    Cylinder& cyl = dec.cylinders[k];
    cyl.direction = d;
    std::vector<int> mine;
    for (int c = 0; c < nc; ++c)
      if (comp[c] == k) mine.push_back(c);
    check(!mine.empty(), "component owns at least one cell");

    std::optional<FieldElement> lo, hi;
    for (int c : mine)
      for (const Vec& v : cells[c].v) {
        FieldElement t = tau(v) + off[c];
        if (!lo || t < *lo) lo = t;
        if (!hi || t > *hi) hi = t;
      }
    width[k] = *hi - *lo;
    check(width[k].sign() > 0, "cylinder has positive transverse width");
    for (int c : mine) off[c] -= *lo;

    FieldElement area = fe(s, Rat(0));
    for (int c : mine) {
      FieldElement a = loop_area(cells[c].v);
      check(a.sign() > 0, "cells keep positive area");
      area += a;
    }
    cyl.tau_width = width[k];
    cyl.area = area;
    cyl.t_total = area / width[k];
    cyl.circumference_sq = cyl.t_total * cyl.t_total * nsq;
    cyl.height_sq = width[k] * width[k] / nsq;
    cyl.modulus = width[k] / (cyl.t_total * nsq);
    cyl.core_hol = cyl.t_total * d;
    cyl.cells = mine;
  }

  // Trace the core of each cylinder for one period and insist it closes up
  // exactly; its crossing word is the cylinder's class in the cut complex.
  for (int k = 0; k < ncomp; ++k) {
    Cylinder& cyl = dec.cylinders[k];
    int c0 = cyl.cells.front();
    std::optional<FieldElement> clo, chi;
    for (const Vec& v : cells[c0].v) {
      FieldElement t = tau(v) + off[c0];
      if (!clo || t < *clo) clo = t;
      if (!chi || t > *chi) chi = t;
    }
    FieldElement level = (*clo + *chi) * Rat(1, 2) - off[c0];  // back to chart coordinates
    std::vector<Vec> hits;
    const std::vector<Vec>& loop = cells[c0].v;
    int n = static_cast<int>(loop.size());
    for (int i = 0; i < n; ++i) {
      const Vec& u = loop[i];
      const Vec& w = loop[(i + 1) % n];
      int su = (tau(u) - level).sign(), sw = (tau(w) - level).sign();
      auto push = [&](const Vec& pt) {
        for (const Vec& q : hits)
          if (q == pt) return;
        hits.push_back(pt);
      };
      if (su == 0) push(u);
      if ((su < 0 && sw > 0) || (su > 0 && sw < 0)) {
        FieldElement t = (level - tau(u)) / (tau(w) - tau(u));
        push(u + t * (w - u));
      }
    }
    check(hits.size() == 2, "mid level meets the cell boundary twice");
    SurfacePoint start{cells[c0].polygon, Rat(1, 2) * (hits[0] + hits[1])};

    TraceLimits lim;
    lim.t_max = cyl.t_total;
    lim.max_crossings = 4'000'000;
    TraceResult res = trace(s, start, d, lim, false, false);
    check(res.end == TraceResult::End::budget_time, "core geodesic runs a full period");
    check(res.final_point.polygon == start.polygon && res.final_point.pos == start.pos,
          "core geodesic closes up exactly");
    cyl.core_word = std::move(res.word);
  }

  // Every cut must lie on the boundary of the cylinders it touches.
  std::vector<std::set<int>> bot(ncomp), top(ncomp);
  std::set<int> used;
  for (const CutRec& rec : cuts) {
    int k = comp[rec.cell];
    FieldElement level = tau(rec.at) + off[rec.cell];
    if (level.is_zero())
      bot[k].insert(rec.conn);
    else if ((level - width[k]).is_zero())
      top[k].insert(rec.conn);
    else
      check(false, "saddle connection lies on a cylinder boundary");
    used.insert(rec.conn);
  }
  check(used.size() == dec.connections.size(), "every saddle connection bounds a cylinder");
  for (int k = 0; k < ncomp; ++k) {
    dec.cylinders[k].bottom.assign(bot[k].begin(), bot[k].end());
    dec.cylinders[k].top.assign(top[k].begin(), top[k].end());
    check(!dec.cylinders[k].bottom.empty() && !dec.cylinders[k].top.empty(),
          "cylinder is bounded by connections on both sides");
  }

  FieldElement total = fe(s, Rat(0));
  for (const Cylinder& cyl : dec.cylinders) total += cyl.area;
  check((total - s.area()).is_zero(), "cylinder areas sum to the surface area");

  dec.cells.reserve(cells.size());
  for (int c = 0; c < nc; ++c) {
    CutCell out;
    out.polygon = cells[c].polygon;
    out.verts = std::move(cells[c].v);
    out.offset = off[c];
    out.cylinder = comp[c];
    dec.cells.push_back(std::move(out));
  }
  return dec;
}

std::optional<std::pair<int, FieldElement>> locate(const Surface& s,
                                                   const CylinderDecomposition& dec,
                                                   SurfacePoint x) {
  if (x.polygon < 0 || x.polygon >= s.num_polygons())
    throw Error(Errc::bad_argument, "polygon index out of range");
  if (!dec.complete) return std::nullopt;
  for (const CutCell& cell : dec.cells) {
    if (cell.polygon != x.polygon) continue;
    int n = static_cast<int>(cell.verts.size());
    bool inside = true;
    for (int i = 0; i < n && inside; ++i) {
      const Vec& u = cell.verts[i];
      const Vec& w = cell.verts[(i + 1) % n];
      if (cross(w - u, x.pos - u).sign() < 0) inside = false;
    }
    if (inside) return std::make_pair(cell.cylinder, cross(dec.direction, x.pos) + cell.offset);
  }
  throw Error(Errc::bad_argument, "point lies outside its polygon");
}

std::vector<Vec> direction_candidates(const Surface& s, const Rat& lmax) {
  if (sgn(lmax) <= 0) throw Error(Errc::bad_argument, "length bound must be positive");
  const FieldElement l2 = fe(s, lmax * lmax);
  const double dl = to_double(lmax);
  const double reach = dl * (1.0 + 1e-9) + 1e-9;

  auto dbl = [](const Vec& v) { return std::pair<double, double>(v.x.to_double(), v.y.to_double()); };
  auto seg_near = [&](const Vec& x0, const Vec& a, const Vec& b) {
    auto [px, py] = dbl(x0);
    auto [ax, ay] = dbl(a);
    auto [bx, by] = dbl(b);
    double ex = bx - ax, ey = by - ay;
    double len2 = ex * ex + ey * ey;
    double t = len2 > 0 ? ((px - ax) * ex + (py - ay) * ey) / len2 : 0.0;
    t = std::min(1.0, std::max(0.0, t));
    double qx = ax + t * ex - px, qy = ay + t * ey - py;
    return std::sqrt(qx * qx + qy * qy) <= reach;
  };

  // Closed cone [lo, hi], spanning less than a half turn (degenerate single
  // rays allowed).  Cones narrow along each unfolding branch.
  auto cone_empty = [](const Vec& lo, const Vec& hi) {
    int c = cross(lo, hi).sign();
    if (c > 0) return false;
    return !(c == 0 && dot(lo, hi).sign() > 0);
  };
  auto in_cone = [](const Vec& lo, const Vec& hi, const Vec& v) {
    if (cross(lo, v).sign() < 0 || cross(v, hi).sign() < 0) return false;
    if (cross(lo, hi).is_zero()) return dot(lo, v).sign() > 0;
    return true;
  };

  std::map<std::string, Vec> found;
  auto record = [&](Vec w) {
    if (w.y.sign() < 0 || (w.y.is_zero() && w.x.sign() < 0)) w = -w;
    std::string key = w.x.is_zero() ? "v" : (w.y / w.x).to_string();
    auto it = found.find(key);
    if (it == found.end())
      found.emplace(std::move(key), std::move(w));
    else if (norm_sq(w) < norm_sq(it->second))
      it->second = std::move(w);
  };

  struct State {
    int poly;
    Vec t;       // chart-to-plane translation of this placement
    Vec lo, hi;  // direction cone still visible through the chain
    int entry;   // edge the chain entered through, -1 at the seed corner
  };

  long long visited = 0;
  for (int p0 = 0; p0 < s.num_polygons(); ++p0) {
    const Polygon& poly0 = s.polygon(p0);
    for (int i0 = 0; i0 < poly0.size(); ++i0) {
      if (!s.in_p(s.vertex_class_of({p0, i0}))) continue;
      const Vec x0 = poly0.vertex(i0);
      std::vector<State> stack;
      stack.push_back({p0, Vec::zero(s.field()), poly0.edge_vector(i0),
                       -poly0.edge_vector(poly0.wrap(i0 - 1)), -1});
      while (!stack.empty()) {
        State st = std::move(stack.back());
        stack.pop_back();
        check(++visited < 5'000'000, "direction search stays within bounds");
        const Polygon& poly = s.polygon(st.poly);
        const int n = poly.size();
        for (int j = 0; j < n; ++j) {
          if (!s.in_p(s.vertex_class_of({st.poly, j}))) continue;
          Vec w = poly.vertex(j) + st.t - x0;
          if (w.is_zero()) continue;
          if (!in_cone(st.lo, st.hi, w)) continue;
          if ((norm_sq(w) - l2).sign() > 0) continue;
          record(w);
        }
        for (int e = 0; e < n; ++e) {
          if (e == st.entry) continue;
          if (st.entry < 0 && (e == i0 || e == poly.wrap(i0 - 1))) continue;
          Vec wa = poly.vertex(e) + st.t - x0;
          Vec wb = poly.vertex(e + 1) + st.t - x0;
          if (wa.is_zero() || wb.is_zero()) continue;  // edge at the seed corner
          Vec lo = cross(st.lo, wa).sign() >= 0 ? wa : st.lo;
          Vec hi = cross(wb, st.hi).sign() >= 0 ? wb : st.hi;
          if (cone_empty(lo, hi)) continue;
          if (!seg_near(x0, poly.vertex(e) + st.t, poly.vertex(e + 1) + st.t)) continue;
          EdgeRef here{st.poly, e};
          EdgeRef there = s.partner(here);
          stack.push_back({there.polygon, st.t - s.gluing_translation(here), std::move(lo),
                           std::move(hi), there.edge});
        }
      }
    }
  }

  std::vector<Vec> out;
  out.reserve(found.size());
  for (auto& [key, v] : found) out.push_back(std::move(v));
  return out;
}

std::vector<Vec> periodic_directions(const Surface& s, const Rat& lmax) {
  std::vector<Vec> out;
  for (const Vec& d : direction_candidates(s, lmax)) {
    CylinderDecomposition dec = decompose(s, d, lmax);
    if (dec.complete) out.push_back(d);
  }
  return out;
}

}  // namespace zcover
