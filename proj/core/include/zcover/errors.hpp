#pragma once

#include <stdexcept>
#include <string>

namespace zcover {

// Every failure the library can signal deliberately.  Code identity matters
// more than the message text: tests and the CLI dispatch on it.
enum class Errc {
  // number field
  not_monic,
  no_sign_change,
  reducible,
  unsupported_degree,
  field_mismatch,
  division_by_zero,
  bad_literal,
  // surfaces
  non_convex_polygon,
  edge_vector_mismatch,
  dangling_edge,
  empty_singular_set,
  bad_surface,
  // covers
  zero_cycle,
  boundary_not_in_p,
  // flow / tracing
  degenerate_start,
  singular_hit,
  no_return_at_budget,
  transversal_parallel,
  // approximation stages
  bad_eps,
  not_a_strip,
  empty_strip_family,
  // examples
  unsupported_n,
  // i/o and cli plumbing
  bad_format,
  bad_argument,
  // violated internal invariant; always a bug
  internal,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::not_monic: return "NotMonic";
    case Errc::no_sign_change: return "NoSignChange";
    case Errc::reducible: return "Reducible";
    case Errc::unsupported_degree: return "UnsupportedDegree";
    case Errc::field_mismatch: return "FieldMismatch";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::bad_literal: return "BadLiteral";
    case Errc::non_convex_polygon: return "NonConvexPolygon";
    case Errc::edge_vector_mismatch: return "EdgeVectorMismatch";
    case Errc::dangling_edge: return "DanglingEdge";
    case Errc::empty_singular_set: return "EmptySingularSet";
    case Errc::bad_surface: return "BadSurface";
    case Errc::zero_cycle: return "ZeroCycle";
    case Errc::boundary_not_in_p: return "BoundaryNotInP";
    case Errc::degenerate_start: return "DegenerateStart";
    case Errc::singular_hit: return "SingularHit";
    case Errc::no_return_at_budget: return "NoReturnAtBudget";
    case Errc::transversal_parallel: return "TransversalParallel";
    case Errc::bad_eps: return "BadEps";
    case Errc::not_a_strip: return "NotAStrip";
    case Errc::empty_strip_family: return "EmptyStripFamily";
    case Errc::unsupported_n: return "UnsupportedN";
    case Errc::bad_format: return "BadFormat";
    case Errc::bad_argument: return "BadArgument";
    case Errc::internal: return "InternalCheck";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Invariant guard that survives NDEBUG builds.  Use for conditions whose
// failure means the library computed something inconsistent, not for user
// input validation.
inline void check(bool cond, const char* what) {
  if (!cond) throw Error(Errc::internal, what);
}

}  // namespace zcover
