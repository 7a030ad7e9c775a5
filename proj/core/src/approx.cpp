#include "zcover/approx.hpp"

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "zcover/errors.hpp"

namespace zcover {

namespace {

FieldElement fe_rat(const FieldPtr& f, const Rat& q) { return FieldElement::from_rational(f, q); }

void check_eps(const FieldElement& eps) {
  if (eps.sign() <= 0 || (eps - fe_rat(eps.field(), Rat(1))).sign() >= 0)
    throw Error(Errc::bad_eps, "eps must lie strictly between 0 and 1");
}

// SplitMix64 applied to a counter stream: the i-th draw depends only on
// (seed, i), so the sample sequence is reproducible bit for bit.
std::uint64_t mix64(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed + i * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Dyadic rational in [0, 1) with 32 fraction bits.
Rat dyadic(std::uint64_t seed, std::uint64_t i) {
  unsigned long hi = static_cast<unsigned long>(mix64(seed, i) >> 32);
  return Rat(hi) / Rat(4294967296UL);
}

}  // namespace

StageData stage_quantities(const LiftClass& strip, const FieldElement& eps, long long n) {
  if (strip.kind != LiftKind::strip || strip.k == 0)
    throw Error(Errc::not_a_strip, "stage needs a strip with a nonzero sheet shift");
  check_eps(eps);

  StageData st;
  st.strip = strip;
  st.n = n;
  st.eps = eps;
  st.area = strip.area;
  st.v_norm_sq = norm_sq(strip.v);
  st.h_sq = (st.area * st.area) / (Rat(4) * st.v_norm_sq);
  FieldElement e2 = eps * eps;
  st.eta_sq = (e2 * e2) / (Rat(64) * st.v_norm_sq);
  FieldElement one = fe_rat(eps.field(), Rat(1));
  st.c = (one - eps / Rat(2)) / (one - eps);
  return st;
}

bool admits_rectangle(const CoverSpec& cover, const CylinderDecomposition& dec, int cylinder,
                      const SurfacePoint& x, const Vec& theta, const FieldElement& eps) {
  if (cylinder < 0 || cylinder >= static_cast<int>(dec.cylinders.size()))
    throw Error(Errc::bad_argument, "cylinder index out of range");
  const Surface& s = *cover.base;
  if (x.polygon < 0 || x.polygon >= s.num_polygons())
    throw Error(Errc::bad_argument, "polygon index out of range");
  const Polygon& poly = s.polygon(x.polygon);
  if (!poly.contains(x.pos)) throw Error(Errc::bad_argument, "point lies outside its polygon");
  if (theta.is_zero()) throw Error(Errc::bad_argument, "direction must be nonzero");
  if (auto vi = poly.vertex_at(x.pos)) {
    if (s.in_p(s.vertex_class_of({x.polygon, *vi})))
      throw Error(Errc::bad_argument, "rectangle center sits on a distinguished point");
  }

  LiftClass lift = classify_cylinder_lift(cover, dec.cylinders[cylinder]);
  StageData st = stage_quantities(lift, eps);

  auto loc = locate(s, dec, x);
  if (!loc || loc->first != cylinder) return false;

  const Cylinder& cyl = dec.cylinders[cylinder];
  FieldElement tau = loc->second;
  FieldElement other = cyl.tau_width - tau;
  FieldElement clearance = (other - tau).sign() < 0 ? other : tau;

  // Admit when (c E)^2 ||d||^2 < clearance^2 in tau units, with
  // E^2 = k^2 (v . theta)^2 (v ^ theta)^2 / (||theta||^4 ||v||^2).
  FieldElement n = norm_sq(theta);
  FieldElement along = dot(lift.v, theta);
  FieldElement across = cross(lift.v, theta);
  Rat k2(static_cast<long>(lift.k));
  k2 = k2 * k2;
  FieldElement e_sq = (k2 * along * along * across * across) / (n * n * st.v_norm_sq);
  FieldElement lhs = st.c * st.c * e_sq * norm_sq(dec.direction);
  return (lhs - clearance * clearance).sign() < 0;
}

SigmaPrimeEstimate sigma_prime_measure(const CoverSpec& cover, const CylinderDecomposition& dec,
                                       int cylinder, const FieldElement& eps, long long samples,
                                       std::uint64_t seed) {
  if (cylinder < 0 || cylinder >= static_cast<int>(dec.cylinders.size()))
    throw Error(Errc::bad_argument, "cylinder index out of range");
  if (samples < 100) throw Error(Errc::bad_argument, "need at least 100 samples");
  LiftClass lift = classify_cylinder_lift(cover, dec.cylinders[cylinder]);
  StageData st = stage_quantities(lift, eps);

  const Surface& s = *cover.base;
  const FieldPtr& f = s.field();

  // Area-weighted triangle fan over every polygon; selection and the
  // in-triangle coordinates all stay rational, so each sampled point is an
  // exact surface point.
  struct Tri {
    int polygon;
    Vec a, b, c;
    FieldElement cum;
  };
  std::vector<Tri> fan;
  FieldElement acc = fe_rat(f, Rat(0));
  for (int p = 0; p < s.num_polygons(); ++p) {
    const Polygon& poly = s.polygon(p);
    for (int i = 1; i + 1 < poly.size(); ++i) {
      Tri t{p, poly.vertex(0), poly.vertex(i), poly.vertex(i + 1), acc};
      acc = acc + cross(t.b - t.a, t.c - t.a) / Rat(2);
      t.cum = acc;
      fan.push_back(std::move(t));
    }
  }
  FieldElement total = acc;

  const Cylinder& cyl = dec.cylinders[cylinder];
  FieldElement band = st.eta_sq * norm_sq(dec.direction);
  FieldElement center = cyl.tau_width / Rat(2);

  long long hits = 0;
  for (long long i = 0; i < samples; ++i) {
    std::uint64_t base = 3 * static_cast<std::uint64_t>(i);
    Rat pick = dyadic(seed, base);
    Rat u = dyadic(seed, base + 1);
    Rat v = dyadic(seed, base + 2);
    if (u + v > 1) {  // fold the unit square onto the triangle
      u = 1 - u;
      v = 1 - v;
    }
    FieldElement threshold = pick * total;
    const Tri* tri = &fan.back();
    for (const Tri& t : fan) {
      if ((threshold - t.cum).sign() < 0) {
        tri = &t;
        break;
      }
    }
    Vec pos = tri->a + fe_rat(f, u) * (tri->b - tri->a) + fe_rat(f, v) * (tri->c - tri->a);
    auto loc = locate(s, dec, {tri->polygon, pos});
    if (!loc || loc->first != cylinder) continue;
    FieldElement dev = loc->second - center;
    if ((dev * dev - band).sign() < 0) ++hits;
  }

  SigmaPrimeEstimate out;
  out.samples = samples;
  out.hits = hits;
  out.total_area = total;
  double rate = static_cast<double>(hits) / static_cast<double>(samples);
  double scale = total.to_double();
  out.estimate = rate * scale;
  out.radius = 1.96 * std::sqrt(rate * (1.0 - rate) / static_cast<double>(samples)) * scale;
  return out;
}

}  // namespace zcover
