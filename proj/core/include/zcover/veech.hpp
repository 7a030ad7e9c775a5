#pragma once

#include <cstdint>
#include <vector>

#include "zcover/cover.hpp"

namespace zcover {

// Element of SL(2) over the surface field, together with the generator word
// that produced it: entry i > 0 means generators[i-1], i < 0 the inverse of
// generators[-i-1].  Kept row-major as [[a, b], [c, d]].
struct GroupElement {
  FieldElement a, b, c, d;
  std::vector<int> word;
};

GroupElement identity_element(const FieldPtr& f);

// Checked constructor: the determinant must be exactly 1.
GroupElement make_element(FieldElement a, FieldElement b, FieldElement c, FieldElement d,
                          std::vector<int> word = {});

// Diagonal flow matrix diag(lambda, 1/lambda) for lambda != 0.
GroupElement geodesic_element(const FieldElement& lambda);

// Rotation by the angle with the given exact cosine and sine; requires
// cos^2 + sin^2 == 1.
GroupElement rotation_element(const FieldElement& cos_t, const FieldElement& sin_t);

GroupElement mul(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);
Vec apply(const GroupElement& g, const Vec& v);

// Imaginary part of the base point i moved by g acting on the right:
// 1 / (a^2 + c^2).
FieldElement cusp_height(const GroupElement& g);

// Ball of the generated group: every product of generators and their
// inverses all of whose prefixes keep the maximum entry magnitude <= bound,
// breadth-first by word length, deduplicated by exact entries (projectively
// when asked, identifying g with -g).  max_word_len >= 0 additionally caps
// the word length; -1 leaves it uncapped.  The identity comes first and the
// order is deterministic.
std::vector<GroupElement> enumerate_group(const std::vector<GroupElement>& generators,
                                          const FieldElement& bound, bool projective = false,
                                          long long max_word_len = -1);

struct ApproxWitness {
  GroupElement gamma;
  Vec image;              // gamma applied to the orbit base point
  Vec theta;
  FieldElement d;
  FieldElement value_sq;  // exact square of ||gamma x|| |e_theta ^ gamma x|
  double value = 0;       // the same, rounded once for reporting
};

struct ApproxCount {
  long long count = 0;
  // Smallest value over the whole gamma set, witnesses or not; infinity
  // when the set is empty.
  double min_value = 0;
  std::vector<ApproxWitness> witnesses;
};

// Counts the group elements with ||gamma x|| |e_theta ^ gamma x| < d, by
// exact squared comparison against the unit vector along theta.
ApproxCount well_approx_count(const Vec& x, const std::vector<GroupElement>& gammas,
                              const Vec& theta, const FieldElement& d);

enum class StripVerdict { well_approximated, inconclusive_at_bound };

struct StripApproxReport {
  StripVerdict verdict = StripVerdict::inconclusive_at_bound;
  long long count = 0;       // orbit strips satisfying the inequality
  long long orbit_size = 0;  // strips times group elements examined
};

// Moves every strip's core holonomy by every group element (area and sheet
// shift ride along unchanged) and counts the images u with
//   4 ||u||^2 (theta ^ u)^2 <= (1 - eps)^2 A^2 ||theta||^2   and   A >= eps,
// all exactly.  The verdict is well_approximated when count >= min_count.
// The strips must all be genuine strips sharing one sheet shift.
StripApproxReport strip_approx_verdict(const std::vector<LiftClass>& strips,
                                       const std::vector<GroupElement>& gammas,
                                       const Vec& theta, const FieldElement& eps,
                                       long long min_count);

struct CuspExcursion {
  double t = 0;        // log ||gamma x|| - log sqrt(d)
  FieldElement height; // exact height of the renormalized frame
};

// Height reached in the cusp by the frame g_t r_{theta'} at the
// approximation event: the flow matrix with e^t = ||gamma x|| / sqrt(d) and
// the rotation taking the unit vector along theta to (0, 1) are applied to
// gamma x, and the height is 1 over the squared length of the result.  All
// of it reduces to squared-norm algebra, so the height is exact even though
// the matrices themselves are not field-valued.
CuspExcursion cusp_excursion(const GroupElement& gamma, const Vec& theta, const Vec& x,
                             const FieldElement& d);

struct ExceptionalScan {
  bool approximate = true;  // double-precision direction sweep
  int grid_log2 = 0;
  long long exceptional = 0;
  double excluded_fraction = 0;
  // Fraction of dyadic angle boxes containing an exceptional direction,
  // coarsest scale first; the last entry equals excluded_fraction.
  std::vector<double> covered_fraction;
  // Least-squares slope of log2(box count) against the scale index; a crude
  // box-dimension reading of the truncated exceptional set, not a dimension
  // computation.
  double box_count_slope = 0;
};

// Sweeps the 2^grid_log2 directions of angle pi k / 2^grid_log2 and marks
// the ones with no group element achieving value < d as exceptional at this
// truncation.
ExceptionalScan theta_exceptional_scan(const Vec& x, const std::vector<GroupElement>& gammas,
                                       double d, int grid_log2, int jobs = 1);

}  // namespace zcover
