#pragma once

#include <string>
#include <vector>

#include "zcover/cylinders.hpp"
#include "zcover/tracer.hpp"

namespace zcover {

// Infinite cyclic cover of the surface minus its distinguished points,
// encoded by a relative cycle w: a loop gamma downstairs lifts to a path
// that shifts the sheet index by the crossing pairing i(w, gamma).
struct CoverSpec {
  SurfacePtr base;
  RelativeCycle w;
  bool recurrent = false;  // holonomy of w vanishes exactly
};

// A point of the cover: a base point plus the index of the sheet it sits on.
struct CoverPoint {
  SurfacePoint base;
  long long level = 0;
};

enum class LiftKind { closed_cylinder, strip };

// How a certified cylinder sits in the cover.  Its core loop shifts the
// sheet by k per period: k == 0 closes up sheet by sheet, k != 0 opens the
// lift into one infinite strip.
struct LiftClass {
  LiftKind kind = LiftKind::closed_cylinder;
  long long k = 0;
  Vec v;             // core holonomy per period
  FieldElement area; // area of the base cylinder
};

struct CocycleResult {
  long long value = 0;
  // Set when the cover is non-recurrent; the sheet drift then has a linear
  // term and level counts are of limited dynamical meaning.
  bool non_recurrent_warning = false;
};

struct StripWitness {
  Vec direction;
  int cylinder = -1;
  long long k = 0;
};

struct StripReport {
  std::vector<StripWitness> witnesses;
  // Rank of the span of all certified core loops inside the homology of the
  // punctured surface, and the rank that would certify every nonzero cycle.
  int span_index = 0;
  int full_rank = 0;
  int directions_complete = 0;
  int directions_total = 0;
  // "strips exist", "strips exist by index criterion", or
  // "inconclusive at this bound".
  std::string verdict;
};

// Validates w (nonzero, boundary supported on the distinguished classes) and
// computes the recurrence flag.
CoverSpec make_cover(SurfacePtr base, RelativeCycle w);

LiftClass classify_cylinder_lift(const CoverSpec& cover, const Cylinder& cyl);

// Sheet change along the straight flow segment of duration t (direction
// parameter units) from x.  The open segment must avoid the distinguished
// points; hitting one raises SingularHit carrying the hit time.
CocycleResult cocycle(const CoverSpec& cover, const SurfacePoint& x, const Vec& theta,
                      const FieldElement& t, long long max_crossings = 1'000'000);

// Decomposes the sampled directions up to the length bound, classifies every
// certified cylinder, and aggregates the evidence that the cover has an
// infinite strip.  Requires a recurrent cover.
StripReport strips_exist_certificate(const CoverSpec& cover, const std::vector<Vec>& directions,
                                     const Rat& lmax);

}  // namespace zcover
