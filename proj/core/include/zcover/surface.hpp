#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zcover/planar.hpp"

namespace zcover {

struct EdgeRef {
  int polygon = -1;
  int edge = -1;
  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

struct CornerRef {
  int polygon = -1;
  int vertex = -1;
  friend auto operator<=>(const CornerRef&, const CornerRef&) = default;
};

// Strictly convex polygon with vertices in counterclockwise order.
class Polygon {
 public:
  explicit Polygon(std::vector<Vec> vertices);

  int size() const { return static_cast<int>(verts_.size()); }
  const std::vector<Vec>& vertices() const { return verts_; }
  const Vec& vertex(int i) const { return verts_[wrap(i)]; }
  Vec edge_vector(int i) const { return vertex(i + 1) - vertex(i); }
  Vec edge_point(int i, const FieldElement& s) const { return vertex(i) + s * edge_vector(i); }
  FieldElement area() const;

  bool contains(const Vec& p) const;           // closed polygon
  bool strictly_contains(const Vec& p) const;  // open interior
  // Edge index such that p lies on that edge (vertices count), if any.
  std::optional<int> boundary_edge(const Vec& p) const;
  // Vertex index if p coincides with a vertex.
  std::optional<int> vertex_at(const Vec& p) const;

  int wrap(int i) const {
    int n = size();
    return ((i % n) + n) % n;
  }

 private:
  std::vector<Vec> verts_;
};

// An integer chain of glued-edge classes, relative to the marked/singular
// point set.  Weights refer to the canonical orientation of each class.
struct RelativeCycle {
  std::map<int, long long> weights;

  long long weight(int edge_class) const {
    auto it = weights.find(edge_class);
    return it == weights.end() ? 0 : it->second;
  }
  bool is_zero() const {
    for (const auto& [c, w] : weights)
      if (w != 0) return false;
    return true;
  }
};

// One transverse crossing of an edge class; sign +1 means the path crossed
// from the right side of the class's canonical orientation to its left side.
struct Crossing {
  int edge_class;
  int sign;
  friend bool operator==(const Crossing&, const Crossing&) = default;
};
using CrossingWord = std::vector<Crossing>;

// A closed translation surface presented by convex polygons with glued
// parallel opposite edges.
class Surface {
 public:
  struct BuildData {
    FieldPtr field;
    std::vector<Polygon> polygons;
    std::vector<std::string> polygon_names;  // optional; defaults to p0, p1, ...
    std::vector<std::pair<EdgeRef, EdgeRef>> gluings;
    std::vector<CornerRef> marks;  // marks the whole vertex class of each corner
  };

  struct VertexClass {
    std::vector<CornerRef> corners;  // sorted
    int angle_multiple = 0;          // cone angle = 2*pi*angle_multiple
    bool singular = false;           // angle_multiple >= 2
    bool marked = false;
  };

  struct EdgeClassInfo {
    EdgeRef canonical;  // lexicographically smaller side
    EdgeRef partner;
  };

  static std::shared_ptr<const Surface> build(BuildData data);

  const FieldPtr& field() const { return field_; }
  int num_polygons() const { return static_cast<int>(polys_.size()); }
  const Polygon& polygon(int i) const { return polys_[i]; }
  const std::string& polygon_name(int i) const { return names_[i]; }
  std::optional<int> polygon_index(const std::string& name) const;

  EdgeRef partner(EdgeRef e) const { return partner_[e.polygon][e.edge]; }
  int num_edge_classes() const { return static_cast<int>(edge_classes_.size()); }
  const EdgeClassInfo& edge_class(int id) const { return edge_classes_[id]; }
  int edge_class_of(EdgeRef e) const { return class_of_[e.polygon][e.edge]; }
  // +1 when e is the canonical side of its class, -1 otherwise.
  int class_orientation(EdgeRef e) const { return edge_class(edge_class_of(e)).canonical == e ? 1 : -1; }
  // Edge vector of the canonical side.
  Vec class_vector(int id) const;
  // Crossing edge e from inside e.polygon lands in partner(e).polygon after
  // translating by this vector.
  const Vec& gluing_translation(EdgeRef e) const { return translation_[e.polygon][e.edge]; }

  int num_vertex_classes() const { return static_cast<int>(vertex_classes_.size()); }
  const VertexClass& vertex_class(int id) const { return vertex_classes_[id]; }
  int vertex_class_of(CornerRef c) const { return vclass_of_[c.polygon][c.vertex]; }
  // The distinguished point set: singular vertex classes plus marked ones.
  bool in_p(int vclass_id) const {
    const auto& v = vertex_classes_[vclass_id];
    return v.singular || v.marked;
  }

  FieldElement area() const;
  int genus() const { return genus_; }
  // (vertex class id, angle multiple m); cone angle is 2*pi*m.
  std::vector<std::pair<int, int>> cone_angles() const;

  Vec holonomy(const RelativeCycle& c) const;
  // Boundary of the chain in the relative complex: vertex class -> multiplicity.
  std::map<int, long long> boundary(const RelativeCycle& c) const;

  // Signed count of crossings: +1 per right-to-left crossing of a class with
  // weight 1.  This is linear in both arguments.
  static long long intersection(const RelativeCycle& c, const CrossingWord& word);

 private:
  Surface() = default;

  FieldPtr field_;
  std::vector<Polygon> polys_;
  std::vector<std::string> names_;
  std::vector<std::vector<EdgeRef>> partner_;
  std::vector<std::vector<int>> class_of_;
  std::vector<EdgeClassInfo> edge_classes_;
  std::vector<std::vector<Vec>> translation_;
  std::vector<VertexClass> vertex_classes_;
  std::vector<std::vector<int>> vclass_of_;
  int genus_ = 0;
};

using SurfacePtr = std::shared_ptr<const Surface>;

}  // namespace zcover
