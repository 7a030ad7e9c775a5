#pragma once

#include <cstdint>

#include "zcover/cover.hpp"
#include "zcover/cylinders.hpp"

namespace zcover {

// Constants of one renormalization stage built on a strip.  The half-height
// h = A / (2 ||v||) and the band half-width eta = eps^2 / (8 ||v||) are
// usually irrational, so both are carried as exact squares; the inflation
// factor c = (1 - eps/2) / (1 - eps) stays in the field as is.
struct StageData {
  LiftClass strip;
  long long n = 0;  // stage index, bookkeeping only
  FieldElement eps;
  FieldElement area;       // A of the strip
  FieldElement v_norm_sq;  // ||v||^2
  FieldElement h_sq;       // (A / (2 ||v||))^2
  FieldElement eta_sq;     // (eps^2 / (8 ||v||))^2
  FieldElement c;          // (1 - eps/2) / (1 - eps)
};

// Requires a genuine strip (sheet shift k != 0) and eps strictly between 0
// and 1.
StageData stage_quantities(const LiftClass& strip, const FieldElement& eps, long long n = 0);

// Whether the stage rectangle at x, aligned with theta, fits inside the
// cylinder: going k times around the core tilts the rectangle's long side
// away from the core line by the half-extent
//   E = |k| |v . theta| |v ^ theta| / (||theta||^2 ||v||),
// and the test asks for c * E to stay below the transverse clearance of x,
// exactly.  Returns false when x does not lie in this cylinder.  A point of
// the distinguished vertex set is rejected as an argument error.
bool admits_rectangle(const CoverSpec& cover, const CylinderDecomposition& dec, int cylinder,
                      const SurfacePoint& x, const Vec& theta, const FieldElement& eps);

struct SigmaPrimeEstimate {
  long long samples = 0;
  long long hits = 0;
  FieldElement total_area;  // exact surface area the rate is scaled by
  double estimate = 0;      // (hits / samples) * total_area
  double radius = 0;        // 1.96 binomial standard errors, same scale
};

// Monte Carlo area of the eta-band around the cylinder's core circle:
// samples points uniformly on the surface (area-weighted triangle fan,
// dyadic coordinates from a SplitMix64 counter stream, so runs are
// reproducible bit for bit), and counts the ones whose transverse distance
// from the core is below eta = eps^2 / (8 ||v||).  Every hit decision is
// made in exact arithmetic; only the final rate is rounded.  Needs at least
// 100 samples.
SigmaPrimeEstimate sigma_prime_measure(const CoverSpec& cover, const CylinderDecomposition& dec,
                                       int cylinder, const FieldElement& eps, long long samples,
                                       std::uint64_t seed);

}  // namespace zcover
