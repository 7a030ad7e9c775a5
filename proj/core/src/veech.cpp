#include "zcover/veech.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <utility>

#include "zcover/errors.hpp"
#include "zcover/parallel.hpp"

namespace zcover {

namespace {

FieldElement fe0(const FieldPtr& f) { return FieldElement::from_rational(f, Rat(0)); }
FieldElement fe1(const FieldPtr& f) { return FieldElement::from_rational(f, Rat(1)); }

FieldElement det(const GroupElement& g) { return g.a * g.d - g.b * g.c; }

void require_unimodular(const GroupElement& g, const char* what) {
  if (!(det(g) == fe1(g.a.field()))) throw Error(Errc::bad_argument, what);
}

}  // namespace

GroupElement identity_element(const FieldPtr& f) {
  return {fe1(f), fe0(f), fe0(f), fe1(f), {}};
}

GroupElement make_element(FieldElement a, FieldElement b, FieldElement c, FieldElement d,
                          std::vector<int> word) {
  GroupElement g{std::move(a), std::move(b), std::move(c), std::move(d), std::move(word)};
  require_unimodular(g, "matrix determinant must be exactly 1");
  return g;
}

GroupElement geodesic_element(const FieldElement& lambda) {
  if (lambda.sign() == 0) throw Error(Errc::bad_argument, "flow parameter must be nonzero");
  const FieldPtr& f = lambda.field();
  return {lambda, fe0(f), fe0(f), fe1(f) / lambda, {}};
}

GroupElement rotation_element(const FieldElement& cos_t, const FieldElement& sin_t) {
  if (!(cos_t * cos_t + sin_t * sin_t == fe1(cos_t.field())))
    throw Error(Errc::bad_argument, "cosine and sine must lie on the unit circle");
  return {cos_t, -sin_t, sin_t, cos_t, {}};
}

GroupElement mul(const GroupElement& g, const GroupElement& h) {
  GroupElement r;
  r.a = g.a * h.a + g.b * h.c;
  r.b = g.a * h.b + g.b * h.d;
  r.c = g.c * h.a + g.d * h.c;
  r.d = g.c * h.b + g.d * h.d;
  r.word = g.word;
  r.word.insert(r.word.end(), h.word.begin(), h.word.end());
  return r;
}

GroupElement inverse(const GroupElement& g) {
  GroupElement r{g.d, -g.b, -g.c, g.a, {}};
  r.word.reserve(g.word.size());
  for (auto it = g.word.rbegin(); it != g.word.rend(); ++it) r.word.push_back(-*it);
  return r;
}

Vec apply(const GroupElement& g, const Vec& v) {
  return {g.a * v.x + g.b * v.y, g.c * v.x + g.d * v.y};
}

FieldElement cusp_height(const GroupElement& g) {
  return fe1(g.a.field()) / (g.a * g.a + g.c * g.c);
}

std::vector<GroupElement> enumerate_group(const std::vector<GroupElement>& generators,
                                          const FieldElement& bound, bool projective,
                                          long long max_word_len) {
  if ((bound - fe1(bound.field())).sign() < 0)
    throw Error(Errc::bad_argument, "entry bound must be at least 1");
  for (const GroupElement& g : generators)
    require_unimodular(g, "generator determinant must be exactly 1");

  const FieldPtr& f = generators.empty() ? bound.field() : generators[0].a.field();
  std::vector<GroupElement> letters;
  letters.reserve(2 * generators.size());
  for (std::size_t i = 0; i < generators.size(); ++i) {
    GroupElement fwd = generators[i];
    fwd.word = {static_cast<int>(i) + 1};
    letters.push_back(std::move(fwd));
    GroupElement back = inverse(generators[i]);
    back.word = {-(static_cast<int>(i) + 1)};
    letters.push_back(std::move(back));
  }

  auto key_of = [&](const GroupElement& g) {
    std::vector<FieldElement> k{g.a, g.b, g.c, g.d};
    if (projective) {
      int lead = 0;
      for (const FieldElement& e : k) {
        lead = e.sign();
        if (lead != 0) break;
      }
      if (lead < 0)
        for (FieldElement& e : k) e = -e;
    }
    return k;
  };
  auto bounded = [&](const GroupElement& g) {
    for (const FieldElement* e : {&g.a, &g.b, &g.c, &g.d}) {
      FieldElement mag = e->sign() < 0 ? -*e : *e;
      if ((mag - bound).sign() > 0) return false;
    }
    return true;
  };

  std::vector<GroupElement> out;
  std::set<std::vector<FieldElement>> seen;
  GroupElement id = identity_element(f);
  seen.insert(key_of(id));
  out.push_back(std::move(id));

  // Breadth-first over words; a product survives only while every prefix
  // stays inside the entry bound, so each layer extends the previous one.
  std::size_t frontier_begin = 0;
  long long depth = 0;
  while (frontier_begin < out.size() && (max_word_len < 0 || depth < max_word_len)) {
    std::size_t frontier_end = out.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (const GroupElement& l : letters) {
        GroupElement child = mul(out[i], l);
        if (!bounded(child)) continue;
        if (seen.insert(key_of(child)).second) out.push_back(std::move(child));
      }
    }
    frontier_begin = frontier_end;
    ++depth;
  }
  return out;
}

ApproxCount well_approx_count(const Vec& x, const std::vector<GroupElement>& gammas,
                              const Vec& theta, const FieldElement& d) {
  if (theta.is_zero()) throw Error(Errc::bad_argument, "direction must be nonzero");
  if (x.is_zero()) throw Error(Errc::bad_argument, "orbit base point must be nonzero");

  FieldElement n = norm_sq(theta);
  bool positive = d.sign() > 0;
  FieldElement gate = d * d * n;  // compare T^2 W^2 < d^2 ||theta||^2

  ApproxCount out;
  std::optional<FieldElement> min_sq;
  for (const GroupElement& g : gammas) {
    Vec v = apply(g, x);
    FieldElement t2 = norm_sq(v);
    FieldElement w = cross(theta, v);
    FieldElement lhs = t2 * w * w;
    FieldElement vsq = lhs / n;
    if (!min_sq || vsq < *min_sq) min_sq = vsq;
    if (positive && (lhs - gate).sign() < 0) {
      ApproxWitness wit{g, v, theta, d, vsq, std::sqrt(std::max(0.0, vsq.to_double()))};
      out.witnesses.push_back(std::move(wit));
    }
  }
  out.count = static_cast<long long>(out.witnesses.size());
  out.min_value = min_sq ? std::sqrt(std::max(0.0, min_sq->to_double()))
                         : std::numeric_limits<double>::infinity();
  return out;
}

StripApproxReport strip_approx_verdict(const std::vector<LiftClass>& strips,
                                       const std::vector<GroupElement>& gammas,
                                       const Vec& theta, const FieldElement& eps,
                                       long long min_count) {
  if (strips.empty()) throw Error(Errc::empty_strip_family, "no strips to move");
  const FieldPtr& f = eps.field();
  if (eps.sign() <= 0 || (eps - fe1(f)).sign() >= 0)
    throw Error(Errc::bad_eps, "eps must lie strictly between 0 and 1");
  if (theta.is_zero()) throw Error(Errc::bad_argument, "direction must be nonzero");
  long long k0 = strips[0].k;
  for (const LiftClass& st : strips) {
    if (st.kind != LiftKind::strip || st.k == 0)
      throw Error(Errc::not_a_strip, "family must consist of genuine strips");
    if (st.k != k0) throw Error(Errc::bad_argument, "strips must share one sheet shift");
  }

  FieldElement n = norm_sq(theta);
  FieldElement shrink = fe1(f) - eps;
  FieldElement factor = shrink * shrink;

  StripApproxReport report;
  report.orbit_size =
      static_cast<long long>(strips.size()) * static_cast<long long>(gammas.size());
  for (const LiftClass& st : strips) {
    if ((st.area - eps).sign() < 0) continue;  // too thin at this eps
    FieldElement rhs = factor * st.area * st.area * n;
    for (const GroupElement& g : gammas) {
      Vec u = apply(g, st.v);
      FieldElement w = cross(theta, u);
      FieldElement lhs = Rat(4) * norm_sq(u) * w * w;
      if ((lhs - rhs).sign() <= 0) ++report.count;
    }
  }
  report.verdict = report.count >= min_count ? StripVerdict::well_approximated
                                             : StripVerdict::inconclusive_at_bound;
  return report;
}

CuspExcursion cusp_excursion(const GroupElement& gamma, const Vec& theta, const Vec& x,
                             const FieldElement& d) {
  if (theta.is_zero()) throw Error(Errc::bad_argument, "direction must be nonzero");
  if (d.sign() <= 0) throw Error(Errc::bad_argument, "approximation quality must be positive");
  Vec v = apply(gamma, x);
  if (v.is_zero()) throw Error(Errc::bad_argument, "orbit point must be nonzero");

  FieldElement t2 = norm_sq(v);
  FieldElement n = norm_sq(theta);
  FieldElement w = cross(theta, v);
  FieldElement dp = dot(theta, v);

  // Flow by e^{2t} = ||v||^2 / d after rotating theta upright: the frame
  // sends v to (e^t (theta ^ v) / ||theta||, e^{-t} (theta . v) / ||theta||),
  // so the squared length is (T^4 W^2 + d^2 D^2) / (d T^2 ||theta||^2) and
  // the height is its reciprocal.
  CuspExcursion out;
  out.height = (d * t2 * n) / (t2 * t2 * w * w + d * d * dp * dp);
  out.t = 0.5 * (std::log(t2.to_double()) - std::log(d.to_double()));
  return out;
}

ExceptionalScan theta_exceptional_scan(const Vec& x, const std::vector<GroupElement>& gammas,
                                       double d, int grid_log2, int jobs) {
  if (grid_log2 < 0 || grid_log2 > 26)
    throw Error(Errc::bad_argument, "grid_log2 must lie in [0, 26]");
  if (x.is_zero()) throw Error(Errc::bad_argument, "orbit base point must be nonzero");

  struct Image {
    double vx, vy, norm;
  };
  std::vector<Image> images;
  images.reserve(gammas.size());
  for (const GroupElement& g : gammas) {
    Vec v = apply(g, x);
    double vx = v.x.to_double();
    double vy = v.y.to_double();
    images.push_back({vx, vy, std::hypot(vx, vy)});
  }

  int n = 1 << grid_log2;
  std::vector<char> marks(static_cast<std::size_t>(n), 1);
  const double pi = std::acos(-1.0);
  parallel_for(n, jobs, [&](int k) {
    double ang = pi * k / n;
    double c = std::cos(ang);
    double s = std::sin(ang);
    for (const Image& im : images) {
      if (im.norm * std::fabs(c * im.vy - s * im.vx) < d) {
        marks[static_cast<std::size_t>(k)] = 0;
        return;
      }
    }
  });

  ExceptionalScan out;
  out.grid_log2 = grid_log2;
  for (char m : marks) out.exceptional += m;
  out.excluded_fraction = static_cast<double>(out.exceptional) / n;

  // Fold marked boxes upward one dyadic scale at a time.
  std::vector<long long> box_counts(static_cast<std::size_t>(grid_log2) + 1, 0);
  std::vector<char> cur = marks;
  for (int j = grid_log2; j >= 0; --j) {
    long long cnt = 0;
    for (char m : cur) cnt += m;
    box_counts[static_cast<std::size_t>(j)] = cnt;
    if (j > 0) {
      std::vector<char> half(cur.size() / 2);
      for (std::size_t i = 0; i < half.size(); ++i)
        half[i] = static_cast<char>(cur[2 * i] | cur[2 * i + 1]);
      cur = std::move(half);
    }
  }
  out.covered_fraction.resize(box_counts.size());
  for (std::size_t j = 0; j < box_counts.size(); ++j)
    out.covered_fraction[j] = static_cast<double>(box_counts[j]) / (1LL << j);
  out.covered_fraction.back() = out.excluded_fraction;

  if (out.exceptional > 0 && grid_log2 >= 1) {
    double mean_j = 0.5 * grid_log2;
    double num = 0, den = 0;
    for (int j = 0; j <= grid_log2; ++j) {
      double yj = std::log2(static_cast<double>(box_counts[static_cast<std::size_t>(j)]));
      num += (j - mean_j) * yj;
      den += (j - mean_j) * (j - mean_j);
    }
    out.box_count_slope = num / den;
  }
  return out;
}

}  // namespace zcover
