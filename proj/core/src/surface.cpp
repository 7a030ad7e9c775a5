#include "zcover/surface.hpp"

#include <algorithm>
#include <set>

namespace zcover {

Polygon::Polygon(std::vector<Vec> vertices) : verts_(std::move(vertices)) {
  const int n = static_cast<int>(verts_.size());
  if (n < 3) throw Error(Errc::non_convex_polygon, "polygon needs at least 3 vertices");
  for (int i = 0; i < n; ++i) {
    Vec e0 = verts_[(i + 1) % n] - verts_[i];
    Vec e1 = verts_[(i + 2) % n] - verts_[(i + 1) % n];
    if (cross(e0, e1).sign() <= 0)
      throw Error(Errc::non_convex_polygon,
                  "vertices must be strictly convex in counterclockwise order");
  }
}

FieldElement Polygon::area() const {
  FieldElement two_a = FieldElement::from_rational(verts_[0].x.field(), Rat(0));
  for (int i = 0; i < size(); ++i) two_a += cross(vertex(i), vertex(i + 1));
  return two_a / Rat(2);
}

bool Polygon::contains(const Vec& p) const {
  for (int i = 0; i < size(); ++i)
    if (cross(edge_vector(i), p - vertex(i)).sign() < 0) return false;
  return true;
}

bool Polygon::strictly_contains(const Vec& p) const {
  for (int i = 0; i < size(); ++i)
    if (cross(edge_vector(i), p - vertex(i)).sign() <= 0) return false;
  return true;
}

std::optional<int> Polygon::boundary_edge(const Vec& p) const {
  if (!contains(p)) return std::nullopt;
  for (int i = 0; i < size(); ++i)
    if (cross(edge_vector(i), p - vertex(i)).is_zero()) return i;
  return std::nullopt;
}

std::optional<int> Polygon::vertex_at(const Vec& p) const {
  for (int i = 0; i < size(); ++i)
    if (vertex(i) == p) return i;
  return std::nullopt;
}

namespace {

FieldElement rebase(const FieldElement& e, const FieldPtr& f) {
  if (e.field() == f || e.field()->same_field(*f)) return FieldElement::from_coords(f, e.coords());
  if (e.field()->degree() == 1) return FieldElement::from_rational(f, e.coords()[0]);
  throw Error(Errc::field_mismatch, "vertex coordinate lives outside the surface field");
}

}  // namespace

std::shared_ptr<const Surface> Surface::build(BuildData data) {
  auto s = std::shared_ptr<Surface>(new Surface());
  if (!data.field) throw Error(Errc::bad_argument, "surface needs a field");
  if (data.polygons.empty()) throw Error(Errc::bad_argument, "surface needs polygons");
  s->field_ = data.field;

  // Normalize every coordinate onto the shared field handle.
  for (auto& poly : data.polygons) {
    std::vector<Vec> vs;
    vs.reserve(poly.size());
    for (const Vec& v : poly.vertices()) vs.push_back({rebase(v.x, s->field_), rebase(v.y, s->field_)});
    s->polys_.emplace_back(std::move(vs));
  }

  const int np = s->num_polygons();
  s->names_ = std::move(data.polygon_names);
  if (s->names_.empty())
    for (int i = 0; i < np; ++i) s->names_.push_back("p" + std::to_string(i));
  if (static_cast<int>(s->names_.size()) != np)
    throw Error(Errc::bad_argument, "polygon_names size mismatch");
  {
    std::set<std::string> seen;
    for (const auto& n : s->names_)
      if (!seen.insert(n).second) throw Error(Errc::bad_argument, "duplicate polygon name " + n);
  }

  auto valid_edge = [&](EdgeRef e) {
    return e.polygon >= 0 && e.polygon < np && e.edge >= 0 && e.edge < s->polys_[e.polygon].size();
  };

  s->partner_.assign(np, {});
  for (int p = 0; p < np; ++p) s->partner_[p].assign(s->polys_[p].size(), EdgeRef{});
  for (const auto& [a, b] : data.gluings) {
    if (!valid_edge(a) || !valid_edge(b)) throw Error(Errc::bad_argument, "gluing names a nonexistent edge");
    if (a == b) throw Error(Errc::dangling_edge, "an edge cannot be glued to itself");
    for (EdgeRef e : {a, b})
      if (s->partner_[e.polygon][e.edge].polygon != -1)
        throw Error(Errc::dangling_edge, "edge glued more than once");
    s->partner_[a.polygon][a.edge] = b;
    s->partner_[b.polygon][b.edge] = a;
  }
  for (int p = 0; p < np; ++p)
    for (int e = 0; e < s->polys_[p].size(); ++e)
      if (s->partner_[p][e].polygon == -1)
        throw Error(Errc::dangling_edge,
                    "unglued edge " + s->names_[p] + ".e" + std::to_string(e));

  // Translation structure: glued edges must be opposite parallel vectors.
  s->translation_.assign(np, {});
  for (int p = 0; p < np; ++p) {
    s->translation_[p].resize(s->polys_[p].size(), Vec::zero(s->field_));
    for (int e = 0; e < s->polys_[p].size(); ++e) {
      EdgeRef q = s->partner_[p][e];
      Vec ve = s->polys_[p].edge_vector(e);
      Vec vq = s->polys_[q.polygon].edge_vector(q.edge);
      if (!(ve + vq).is_zero())
        throw Error(Errc::edge_vector_mismatch,
                    "glued edges " + s->names_[p] + ".e" + std::to_string(e) + " and " +
                        s->names_[q.polygon] + ".e" + std::to_string(q.edge) +
                        " are not opposite parallel vectors");
      // v_{e+1} maps to the partner's edge start w_j.
      s->translation_[p][e] =
          s->polys_[q.polygon].vertex(q.edge) - s->polys_[p].vertex(e + 1);
    }
  }

  // Edge classes, canonical side = lexicographic minimum of the pair.
  s->class_of_.assign(np, {});
  for (int p = 0; p < np; ++p) s->class_of_[p].assign(s->polys_[p].size(), -1);
  for (int p = 0; p < np; ++p)
    for (int e = 0; e < s->polys_[p].size(); ++e) {
      EdgeRef me{p, e}, other = s->partner_[p][e];
      if (other < me) continue;
      s->edge_classes_.push_back({me, other});
    }
  for (int id = 0; id < static_cast<int>(s->edge_classes_.size()); ++id) {
    const auto& ec = s->edge_classes_[id];
    s->class_of_[ec.canonical.polygon][ec.canonical.edge] = id;
    s->class_of_[ec.partner.polygon][ec.partner.edge] = id;
  }

  // Vertex classes: orbits of "step across the outgoing edge, then advance
  // one corner".  Corner (p,i) sits at vertex i; its outgoing edge (p,i) is
  // glued to (q,j) with v_i identified to w_{j+1}, so the orbit successor of
  // (p,i) is (q,j+1).
  s->vclass_of_.assign(np, {});
  for (int p = 0; p < np; ++p) s->vclass_of_[p].assign(s->polys_[p].size(), -1);
  auto orbit_next = [&](CornerRef c) {
    EdgeRef g = s->partner_[c.polygon][c.vertex];
    return CornerRef{g.polygon, s->polys_[g.polygon].wrap(g.edge + 1)};
  };
  for (int p = 0; p < np; ++p)
    for (int v = 0; v < s->polys_[p].size(); ++v) {
      if (s->vclass_of_[p][v] != -1) continue;
      int id = static_cast<int>(s->vertex_classes_.size());
      VertexClass vc;
      CornerRef c{p, v};
      do {
        s->vclass_of_[c.polygon][c.vertex] = id;
        vc.corners.push_back(c);
        c = orbit_next(c);
      } while (!(c == CornerRef{p, v}));
      std::sort(vc.corners.begin(), vc.corners.end());
      s->vertex_classes_.push_back(std::move(vc));
    }

  // Cone angle at a class: walk the corners so that consecutive sectors share
  // a boundary ray, and count how often the sweeping direction passes the
  // positive x-axis.  Each corner turns by its interior angle, strictly
  // inside (0, pi), so the wrap count is exact.
  for (auto& vc : s->vertex_classes_) {
    CornerRef start = vc.corners.front();
    // Invert orbit_next: predecessor of (p,i) is the corner whose outgoing
    // edge lands at (p, i-1).
    auto orbit_prev = [&](CornerRef c) {
      EdgeRef g = s->partner_[c.polygon][s->polys_[c.polygon].wrap(c.vertex - 1)];
      return CornerRef{g.polygon, g.edge};
    };
    int wraps = 0;
    CornerRef c = start;
    Vec dir = s->polys_[c.polygon].edge_vector(c.vertex);
    do {
      const Polygon& poly = s->polys_[c.polygon];
      Vec a = poly.edge_vector(c.vertex);                              // sector start
      Vec b = -poly.edge_vector(poly.wrap(c.vertex - 1));              // sector end
      check(same_ray(dir, a), "vertex sectors chain edge-to-edge");
      if (ray_less(b, a)) ++wraps;
      dir = b;
      c = orbit_prev(c);
    } while (!(c == start));
    check(wraps >= 1, "cone angle at least 2*pi");
    vc.angle_multiple = wraps;
    vc.singular = wraps >= 2;
  }

  for (CornerRef m : data.marks) {
    if (m.polygon < 0 || m.polygon >= np || m.vertex < 0 || m.vertex >= s->polys_[m.polygon].size())
      throw Error(Errc::bad_argument, "mark names a nonexistent corner");
    s->vertex_classes_[s->vclass_of_[m.polygon][m.vertex]].marked = true;
  }

  bool any_p = false;
  for (const auto& vc : s->vertex_classes_) any_p = any_p || vc.singular || vc.marked;
  if (!any_p)
    throw Error(Errc::empty_singular_set,
                "surface has no singular or marked points; mark a vertex class");

  // Total interior angle of all polygons equals the sum of cone angles:
  // sum_p (n_p - 2) * pi == sum_c 2 * pi * m_c.
  long long corner_sum = 0, angle_sum = 0;
  for (int p = 0; p < np; ++p) corner_sum += s->polys_[p].size() - 2;
  for (const auto& vc : s->vertex_classes_) angle_sum += vc.angle_multiple;
  check(corner_sum == 2 * angle_sum, "interior angles account for every cone point");

  // Euler characteristic against the angle defect.
  long long V = s->num_vertex_classes();
  long long E = s->num_edge_classes();
  long long F = np;
  long long chi = V - E + F;
  check(chi % 2 == 0, "closed surface has even Euler characteristic");
  s->genus_ = static_cast<int>((2 - chi) / 2);
  long long defect = 0;
  for (const auto& vc : s->vertex_classes_) defect += vc.angle_multiple - 1;
  check(defect == 2LL * (s->genus_ - 1), "angle defect equals 2g-2 full turns");

  return s;
}

std::optional<int> Surface::polygon_index(const std::string& name) const {
  for (int i = 0; i < num_polygons(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

Vec Surface::class_vector(int id) const {
  EdgeRef c = edge_classes_[id].canonical;
  return polys_[c.polygon].edge_vector(c.edge);
}

FieldElement Surface::area() const {
  FieldElement total = FieldElement::from_rational(field_, Rat(0));
  for (const auto& p : polys_) total += p.area();
  return total;
}

std::vector<std::pair<int, int>> Surface::cone_angles() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < num_vertex_classes(); ++i) out.push_back({i, vertex_classes_[i].angle_multiple});
  return out;
}

Vec Surface::holonomy(const RelativeCycle& c) const {
  Vec h = Vec::zero(field_);
  for (const auto& [id, w] : c.weights) {
    if (id < 0 || id >= num_edge_classes())
      throw Error(Errc::bad_argument, "cycle names a nonexistent edge class");
    if (w == 0) continue;
    h += Rat(Int(static_cast<long>(w))) * class_vector(id);
  }
  return h;
}

std::map<int, long long> Surface::boundary(const RelativeCycle& c) const {
  std::map<int, long long> b;
  for (const auto& [id, w] : c.weights) {
    if (w == 0) continue;
    EdgeRef e = edge_classes_.at(id).canonical;
    int head = vclass_of_[e.polygon][polys_[e.polygon].wrap(e.edge + 1)];
    int tail = vclass_of_[e.polygon][e.edge];
    b[head] += w;
    b[tail] -= w;
  }
  for (auto it = b.begin(); it != b.end();)
    it = it->second == 0 ? b.erase(it) : std::next(it);
  return b;
}

long long Surface::intersection(const RelativeCycle& c, const CrossingWord& word) {
  long long total = 0;
  for (const Crossing& x : word) total += x.sign * c.weight(x.edge_class);
  return total;
}

}  // namespace zcover
