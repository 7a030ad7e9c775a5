#pragma once

#include <optional>
#include <vector>

#include "zcover/tracer.hpp"

namespace zcover {

// Straight segment joining two points of P with no P-point inside.
struct SaddleConnection {
  CornerRef start, end;
  Vec direction;       // tracing direction; holonomy = t_len * direction
  FieldElement t_len;
  CrossingWord word;   // transverse crossings strictly inside the segment
  std::vector<TraceSegment> segments;
};

struct SeparatrixScan {
  std::vector<SaddleConnection> connections;
  int unresolved = 0;  // separatrices still running at the scan budget
};

// Traces every separatrix in direction d from every corner of P and keeps
// the connections whose holonomy length is at most lmax (exactly:
// t^2 * |d|^2 <= lmax^2).  Each geometric segment appears once, traced from
// its rear endpoint.
SeparatrixScan separatrices(const Surface& s, const Vec& d, const Rat& lmax);

// Convex piece of a polygon left after cutting along every connection; the
// cells of one cylinder tile it.  tau(x) = cross(d, x) + offset measures the
// transverse coordinate in the cylinder frame, normalized to [0, tau_width].
struct CutCell {
  int polygon;
  std::vector<Vec> verts;  // counterclockwise; subdivision points included
  FieldElement offset;
  int cylinder = -1;
};

struct Cylinder {
  Vec direction;
  Vec core_hol;                 // holonomy of the core closed geodesic
  FieldElement t_total;         // core return parameter: core_hol = t_total * d
  FieldElement tau_width;       // transverse extent of tau
  FieldElement area;            // equals t_total * tau_width
  FieldElement circumference_sq, height_sq;
  FieldElement modulus;         // height / circumference, exact in the field
  CrossingWord core_word;
  std::vector<int> cells;       // indices into CylinderDecomposition::cells
  std::vector<int> bottom, top; // connection indices bounding the cylinder
};

struct CylinderDecomposition {
  Vec direction;
  Rat lmax;           // scan depth the result is certified for
  bool complete = false;
  int unresolved = 0; // separatrices unresolved at the scan budget
  std::vector<SaddleConnection> connections;
  std::vector<Cylinder> cylinders;
  std::vector<CutCell> cells;
};

// Cuts the surface along every saddle connection in direction d found within
// the scan depth.  When every separatrix resolves, the result is complete
// and the cylinders partition the surface (checked exactly, including that
// the areas sum to the surface area).  Otherwise complete == false and the
// direction is not certified periodic at this bound.
CylinderDecomposition decompose(const Surface& s, const Vec& d, const Rat& lmax);

// Cylinder index and normalized transverse coordinate of a point, or
// nullopt when the decomposition is incomplete.  Points on a cut report one
// of the incident cylinders.
std::optional<std::pair<int, FieldElement>> locate(const Surface& s,
                                                   const CylinderDecomposition& dec,
                                                   SurfacePoint x);

// Directions with a certified complete decomposition, harvested from the
// holonomy candidates of saddle connections of length <= lmax (found by
// unfolding the polygon complex around every P-corner out to that radius).
// Directions are reported with a canonical sign (upper half plane, or
// positive x-axis) and deduped projectively.
std::vector<Vec> periodic_directions(const Surface& s, const Rat& lmax);

// The candidate directions the periodic scan tests; exposed for tests.
std::vector<Vec> direction_candidates(const Surface& s, const Rat& lmax);

}  // namespace zcover
