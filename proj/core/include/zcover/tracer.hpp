#pragma once

#include <optional>
#include <vector>

#include "zcover/surface.hpp"

namespace zcover {

struct SurfacePoint {
  int polygon = -1;
  Vec pos;
};

// Time is measured in direction-parameter units throughout: the point after
// time t is x + t*d in the unfolded picture, so arclength equals t*|d|.
// Keeping t in the surface's number field is what makes every comparison
// here exact.
struct TraceLimits {
  std::optional<FieldElement> t_max;
  long long max_crossings = 1'000'000;
};

struct TraceSegment {
  int polygon;
  Vec entry, exit;
  FieldElement t_entry, t_exit;
  // The edge crossed when leaving this segment; sign 0 on the last segment
  // of a trace (budget stop or vertex hit).
  Crossing exit_crossing{-1, 0};
  EdgeRef exit_edge{-1, -1};
};

struct TraceResult {
  enum class End { budget_time, budget_crossings, vertex } end;
  CrossingWord word;                // signed crossings, in order
  std::vector<TraceSegment> segments;  // filled when collect_segments
  SurfacePoint final_point;         // chart position where the trace stopped
  FieldElement t_final;
  // vertex stops only:
  int vertex_class = -1;
  CornerRef vertex_corner;
};

// For a vertex class of cone angle exactly 2*pi, the unique corner whose
// half-open angular sector [outgoing-edge ray, next ray) contains d.
CornerRef resolve_sector(const Surface& s, int vclass, const Vec& d);

// Rewrites a start point into the chart the straightline flow actually uses:
// crosses an edge when d points strictly outward, resolves the sector at a
// regular unmarked vertex.  Throws degenerate_start for a zero direction, a
// point outside its polygon, or a start on a singular/marked point.
SurfacePoint canonicalize_start(const Surface& s, SurfacePoint x, const Vec& d);

// Straightline flow with exact arithmetic.  stop_at_any_vertex makes every
// vertex terminal (separatrix tracing); otherwise only singular or marked
// classes stop the trace and regular vertices are flowed through.
TraceResult trace(const Surface& s, SurfacePoint start, const Vec& d, const TraceLimits& lim,
                  bool stop_at_any_vertex = false, bool collect_segments = false);

// Same dynamics, but started from a specific corner of a vertex class;
// d must lie in the corner's closed-start sector [A, B) where A is the
// outgoing edge ray and B the ray toward the previous vertex.
TraceResult trace_from_corner(const Surface& s, CornerRef corner, const Vec& d,
                              const TraceLimits& lim, bool stop_at_any_vertex = false,
                              bool collect_segments = false);

}  // namespace zcover
