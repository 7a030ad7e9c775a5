#pragma once

#include <map>
#include <string>
#include <vector>

#include "zcover/surface.hpp"
#include "zcover/veech.hpp"

namespace zcover {

// A ready-made surface together with its named cycles, the affine group
// generators known for it, and notes describing the construction.  Every
// documented property of a bundle is checked while it is being built; a
// builder that cannot verify its own claims throws instead of returning.
struct ExampleBundle {
  SurfacePtr surface;
  std::map<std::string, RelativeCycle> cycles;
  std::vector<GroupElement> veech_generators;
  std::vector<std::string> notes;
};

// Quotient of the infinite staircase by its step translation: two unit
// squares in a row over the golden field, with the two horizontal edge pairs
// glued with a one-square shift (bottom of the left square to the top of the
// right one, and vice versa).  Cycle "w" is the bottom pair minus the top
// pair, both oriented rightward; crossing it counts staircase levels.
// Checked at build: hol(w) = 0 and the slope-1 decomposition certifies a
// strip with |k| = 1.  Both (regular) vertex classes are marked, since the
// boundary of w is supported on them.
ExampleBundle staircase();

// Two regular octagons of side 2.  Each octagon glues its own 45-degree
// diagonal pairs; the horizontal pairs and the remaining diagonal pairs are
// glued across the two copies.  Cycle "w0" is the difference of the two
// cross horizontal pairs, oriented rightward.  Checked at build: hol(w0) = 0
// and the slope-1 decomposition certifies a strip.
ExampleBundle double_octagon_hw();

// Veech's pair of regular n-gons of side 2: side k of one glued to side
// k + n/2 of the other.  Cycle "w" is the sum of the odd-index sides of the
// first copy, oriented along its boundary; opposite sides cancel, so
// hol(w) = 0.  For n divisible by 4 the generators are the rotation by
// 2*pi/n and the horizontal twist [[1, 2*cot(pi/n)], [0, 1]], the twist
// entry computed exactly from the horizontal cylinder moduli.  For
// n = 2 mod 4 (the decagon) the strip sits in the horizontal direction and
// the side-parallel slope is the periodic one; see the bundle notes.
// Supported n: 8, 10, 12, 16, 20, 24 (larger n needs field degree > 4);
// anything else throws UnsupportedN.
ExampleBundle double_ngon(int n);

// Square-tiled surface of eight 2x2 blocks in two staggered rows of four,
// with cyclically shifted identifications of the outer horizontal edges.
// Cycle "w1" is the difference of two top-edge pairs, oriented rightward.
// Every cylinder of this surface lifts to closed cylinders in the cover;
// build checks hol(w1) = 0 and that the horizontal and vertical
// decompositions have k = 0 throughout.
ExampleBundle wollmilchsau();

// Stable catalogue names accepted by build_example, in listing order.
std::vector<std::string> example_names();

// Builds the named example; unknown names throw BadArgument.
ExampleBundle build_example(const std::string& name);

}  // namespace zcover
