#pragma once

#include <optional>
#include <vector>

#include "zcover/cover.hpp"
#include "zcover/tracer.hpp"

namespace zcover {

// One chart residency of a straightline-flow trajectory.  A sign-0 crossing
// marks a segment that ended without crossing an edge (time budget, vertex
// hit, or a pass through a regular vertex).  Zero-length segments record the
// edges grazed while passing through a regular vertex, one crossing each, so
// consecutive levels always differ by exactly the increment of the crossing
// between them.
struct FlowSegment {
  int polygon = -1;
  Vec entry, exit;
  FieldElement t_entry, t_exit;
  Crossing crossing{-1, 0};
  EdgeRef crossed_edge{-1, -1};
  long long level = 0;  // cover level while traversing this segment
};

struct Trajectory {
  enum class End { budget_time, budget_crossings, singular };

  SurfacePoint start;  // canonicalized chart of the requested start
  Vec theta;
  long long start_level = 0;
  std::vector<FlowSegment> segments;
  CrossingWord word;  // all crossings in order, grazes included
  SurfacePoint final_point;
  FieldElement elapsed;  // direction-parameter units, as in TraceLimits
  long long final_level = 0;
  End end = End::budget_time;
  int hit_vertex_class = -1;  // set on singular stops
};

struct FlowBudget {
  std::optional<FieldElement> t_max;
  long long max_crossings = 1'000'000;
};

// Straightline flow from a base point; levels stay at zero.  A singular or
// marked vertex on the orbit ends the trajectory with End::singular rather
// than throwing, so callers can report how far the flow got.
Trajectory trace_flow(const Surface& s, SurfacePoint start, const Vec& theta,
                      const FlowBudget& budget);

// Cover trajectory: each crossing changes the level by sign * w(class).
Trajectory trace_flow(const CoverSpec& cover, const CoverPoint& start, const Vec& theta,
                      const FlowBudget& budget);

// Checks every structural invariant of a finished trajectory: segment chaining
// in time and under the edge gluings, crossing signs, graze geometry, level
// telescoping, and agreement between the word and the per-segment crossings.
// Throws Errc::internal on the first violation.
void validate(const Surface& s, const RelativeCycle& w, const Trajectory& tr);

// Open straight segment inside one polygon, parameterized as a + s*(b - a)
// with s in (0, 1).  Both endpoints may lie on the polygon boundary but not
// at vertices; hits of the endpoints themselves stop an orbit the way a
// singular point does.  Interval lengths below are measured in the parameter
// s, so the whole transversal has length exactly 1.
struct Transversal {
  int polygon = -1;
  Vec a, b;
};

// First-return map of the direction-theta flow to a transversal, as an
// interval exchange with one integer displacement per interval.
// permutation[j] is the 0-based rank of interval j's image along the
// transversal; the map sends s to s + translations[j] on interval j.
struct IETData {
  std::vector<FieldElement> cuts;       // n+1 increasing values, 0 and 1 included
  std::vector<FieldElement> intervals;  // n lengths, exact sum 1
  std::vector<int> permutation;
  std::vector<FieldElement> translations;
  std::vector<long long> displacements;  // cover level change per return
  std::vector<FieldElement> return_times;  // direction-parameter units
};

// Cuts the transversal at the first backward hits of every singular or
// marked point and of the transversal endpoints, then certifies each piece
// by returning three sample points and checking they agree on translation,
// displacement, and return time.  The budget applies to each orbit
// separately; an orbit still running when it expires raises
// NoReturnAtBudget naming the orbit.
IETData first_return_iet(const CoverSpec& cover, const Transversal& tr, const Vec& theta,
                         long long max_crossings = 1'000'000);

// Successive returns of the point at parameter s0, with cumulative cover
// displacement and elapsed time at each hit.  An orbit that runs into a
// singular point or a transversal endpoint raises SingularHit.
struct ReturnHit {
  FieldElement s;
  long long displacement = 0;
  FieldElement t;
};
std::vector<ReturnHit> return_orbit(const CoverSpec& cover, const Transversal& tr,
                                    const FieldElement& s0, const Vec& theta, int n,
                                    long long max_crossings = 1'000'000);

// Max |level| reached by time k*T/checkpoints, k = 1..checkpoints.  The
// profile is nondecreasing by construction; a singular hit before T is
// rethrown as SingularHit and an exhausted crossing budget as
// NoReturnAtBudget, never reported as a silently short profile.
struct BoundednessProfile {
  std::vector<FieldElement> times;
  std::vector<long long> max_abs_level;
};
BoundednessProfile boundedness_probe(const CoverSpec& cover, SurfacePoint x, const Vec& theta,
                                     const FieldElement& T, int checkpoints,
                                     long long max_crossings = 1'000'000);

// Double-precision tracer for dense direction sweeps.  Charts are rounded to
// doubles once; a crossing whose edge parameter lands within 2^-40 of a
// vertex (after refining the parameter in extended precision) stops the
// trace with a singular verdict, since only the exact tracer can decide such
// ties.  Results are always labeled approximate.
inline constexpr double kFloatCrossingTol = 0x1p-40;

struct FloatChart {
  struct Edge {
    int partner_polygon = -1, partner_edge = -1;
    int edge_class = -1;
    double tx = 0, ty = 0;  // gluing translation
  };
  const Surface* surface = nullptr;
  std::vector<std::vector<std::pair<double, double>>> verts;
  std::vector<std::vector<Edge>> edges;
  std::vector<std::pair<double, double>> class_vec;
};
FloatChart make_float_chart(const Surface& s);

struct FloatTrace {
  bool approximate = true;
  CrossingWord word;
  int polygon = -1;
  double x = 0, y = 0;
  double elapsed = 0;  // direction-parameter units
  Trajectory::End end = Trajectory::End::budget_time;
};
FloatTrace trace_float(const FloatChart& chart, int polygon, double x, double y, double dx,
                       double dy, double t_max, long long max_crossings = 1'000'000);

}  // namespace zcover
