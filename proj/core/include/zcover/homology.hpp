#pragma once

#include <optional>
#include <vector>

#include "zcover/surface.hpp"

namespace zcover {

using IntMat = std::vector<std::vector<Int>>;

// d = u * a * v with u, v unimodular, d diagonal with d[0] | d[1] | ... >= 0.
// u_inv and v_inv are maintained alongside so callers can pull vectors back
// without inverting anything.
struct SmithResult {
  IntMat d, u, v, u_inv, v_inv;
  int rank = 0;
  std::vector<Int> diag;  // the nonzero diagonal entries
};

SmithResult smith_normal_form(const IntMat& a);

IntMat mat_mul(const IntMat& a, const IntMat& b);

// Basis of the absolute integer homology H1(M;Z) written in edge-class
// coordinates; always 2*genus elements, each with empty relative boundary.
std::vector<RelativeCycle> absolute_h1_basis(const Surface& s);

// Index of the subgroup of Z^dim generated by the rows; nullopt when the
// rank is deficient (infinite index).
std::optional<Int> span_index(const std::vector<std::vector<long long>>& rows, int dim);

}  // namespace zcover
