// Command line front end for the zcover library.  Every verb echoes its
// fully resolved configuration as leading comment lines and produces
// byte-identical output when rerun with the same flags.  Exit codes: 0 on
// success, 2 on argument or validation errors, 3 when a computation is
// inconclusive at the requested bound.

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "report.hpp"
#include "svg.hpp"
#include "zcover/approx.hpp"
#include "zcover/cover.hpp"
#include "zcover/cylinders.hpp"
#include "zcover/errors.hpp"
#include "zcover/examples.hpp"
#include "zcover/flow.hpp"
#include "zcover/surface.hpp"
#include "zcover/tsf_io.hpp"
#include "zcover/veech.hpp"

using namespace zcover;
using namespace zcover::cli;

namespace {

using Config = std::vector<std::pair<std::string, std::string>>;

// Flag storage shared by all subcommands; only the parsed one reads it.
struct Args {
  std::string surface, cycle, direction, theta_deg, out;
  std::string eps, d, radius = "10", lmax = "10", time;
  long long crossings = 1'000'000;
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct Loaded {
  SurfacePtr surface;
  std::map<std::string, RelativeCycle> cycles;
  std::vector<GroupElement> generators;
  std::string source;
};

Loaded resolve_surface(const std::string& arg) {
  if (std::filesystem::exists(arg)) {
    SurfaceFile sf = load_surface_file(arg);
    return Loaded{sf.surface, std::move(sf.cycles), {}, "file"};
  }
  for (const std::string& name : example_names())
    if (name == arg) {
      ExampleBundle b = build_example(arg);
      return Loaded{b.surface, std::move(b.cycles), std::move(b.veech_generators), "catalogue"};
    }
  throw Error(Errc::bad_argument,
              "surface '" + arg + "' is neither a readable file nor a catalogue name");
}

const std::pair<const std::string, RelativeCycle>& pick_cycle(const Loaded& l,
                                                              const std::string& name) {
  auto known = [&] {
    std::string s;
    for (const auto& [n, c] : l.cycles) s += (s.empty() ? "" : ", ") + n;
    return s.empty() ? "none defined" : s;
  };
  if (!name.empty()) {
    auto it = l.cycles.find(name);
    if (it == l.cycles.end())
      throw Error(Errc::bad_argument, "no cycle named '" + name + "' (cycles: " + known() + ")");
    return *it;
  }
  if (l.cycles.size() == 1) return *l.cycles.begin();
  throw Error(Errc::bad_argument, l.cycles.empty()
                                      ? "the surface defines no cycles; add a CYCLE section"
                                      : "pick a cycle with --cycle (cycles: " + known() + ")");
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  size_t e = s.find_last_not_of(" \t");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

// Plain decimal literal as an exact rational, so "0.05" means 1/20.
std::optional<Rat> parse_decimal(const std::string& raw) {
  std::string s = trim(raw);
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  std::string digits;
  size_t frac_len = 0;
  bool seen_dot = false;
  for (; i < s.size(); ++i) {
    if (s[i] == '.') {
      if (seen_dot) return std::nullopt;
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i];
      if (seen_dot) ++frac_len;
    } else {
      return std::nullopt;
    }
  }
  if (digits.empty()) return std::nullopt;
  Int num(digits);
  Int den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
  Rat r(num, den);
  r.canonicalize();
  return neg ? Rat(-r) : r;
}

FieldElement parse_scalar(const FieldPtr& f, const std::string& s, const std::string& what) {
  if (auto r = parse_decimal(s)) return FieldElement::from_rational(f, *r);
  try {
    return parse_element(f, trim(s));
  } catch (const Error& e) {
    throw Error(Errc::bad_argument, what + ": " + e.what());
  }
}

Rat parse_rat(const FieldPtr& f, const std::string& s, const std::string& what) {
  FieldElement e = parse_scalar(f, s, what);
  if (!e.is_rational()) throw Error(Errc::bad_argument, what + " must be a rational number");
  return e.as_rational();
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(Errc::bad_argument, what + ": expected a floating point number, got '" + s + "'");
}

std::string vec_str(const Vec& v) {
  return "(" + v.x.to_string() + ", " + v.y.to_string() + ")";
}

Vec parse_direction(const FieldPtr& f, const std::string& s) {
  size_t comma = s.find(',');
  if (comma == std::string::npos)
    throw Error(Errc::bad_argument, "--direction expects \"x,y\" with field-element literals");
  Vec v{parse_scalar(f, s.substr(0, comma), "--direction x component"),
        parse_scalar(f, s.substr(comma + 1), "--direction y component")};
  if (v.is_zero()) throw Error(Errc::bad_argument, "--direction must be nonzero");
  return v;
}

// --direction is exact; --theta-deg is snapped to rational cos/sin with
// denominator 1e9 so every later computation stays in the field.
Vec resolve_direction(const FieldPtr& f, const Args& a, Config& cfg) {
  bool has_dir = !a.direction.empty(), has_deg = !a.theta_deg.empty();
  if (has_dir == has_deg)
    throw Error(Errc::bad_argument, "pass exactly one of --direction and --theta-deg");
  if (has_dir) {
    Vec v = parse_direction(f, a.direction);
    cfg.emplace_back("direction", vec_str(v));
    return v;
  }
  double deg = parse_double(a.theta_deg, "--theta-deg");
  double rad = deg * 3.14159265358979323846 / 180.0;
  auto snap = [](double v) {
    Rat r(static_cast<long>(std::llround(v * 1e9)), 1000000000UL);
    r.canonicalize();
    return r;
  };
  Vec v{FieldElement::from_rational(f, snap(std::cos(rad))),
        FieldElement::from_rational(f, snap(std::sin(rad)))};
  if (v.is_zero()) throw Error(Errc::bad_argument, "--theta-deg snapped to the zero vector");
  cfg.emplace_back("theta_deg", fmt_double(deg));
  cfg.emplace_back("direction", vec_str(v));
  return v;
}

// Default orbit start: the (1, 2, ..., n)-weighted vertex average.  Strictly
// interior like the centroid, but off the polygon's symmetry axes, so
// axis-aligned and diagonal orbits don't run straight into a vertex.
SurfacePoint default_start(const Surface& s, int p) {
  const Polygon& poly = s.polygon(p);
  Vec sum = Vec::zero(s.field());
  for (int i = 0; i < poly.size(); ++i) sum = sum + Rat(i + 1) * poly.vertex(i);
  unsigned long n = static_cast<unsigned long>(poly.size());
  return SurfacePoint{p, Rat(2, n * (n + 1)) * sum};
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw Error(Errc::bad_argument, "cannot open output file '" + out_path + "'");
  f << text;
  std::printf("# wrote %s\n", out_path.c_str());
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------- validate

int run_validate(const Args& a) {
  Loaded l = resolve_surface(a.surface);
  const Surface& s = *l.surface;
  const FieldPtr& f = s.field();
  std::string out = header("validate", {{"surface", a.surface}, {"source", l.source}});
  if (f->degree() == 1) {
    out += "field: rationals\n";
  } else {
    out += "field degree: " + std::to_string(f->degree()) + "\n";
    out += "min poly coeffs (low to high):";
    for (const Int& c : f->min_poly()) out += " " + c.get_str();
    out += "\n";
    auto [lo, hi] = f->initial_interval();
    out += "generator interval: (" + lo.get_str() + ", " + hi.get_str() + ")\n";
  }
  out += "polygons: " + std::to_string(s.num_polygons()) + "\n";
  for (int p = 0; p < s.num_polygons(); ++p) {
    const Polygon& poly = s.polygon(p);
    out += "  " + s.polygon_name(p) + ": " + std::to_string(poly.size()) + " vertices, area " +
           poly.area().to_string() + " (" + approx12(poly.area()) + ")\n";
  }
  out += "edge classes: " + std::to_string(s.num_edge_classes()) + "\n";
  out += "vertex classes: " + std::to_string(s.num_vertex_classes()) + "\n";
  for (int v = 0; v < s.num_vertex_classes(); ++v) {
    const auto& vc = s.vertex_class(v);
    out += "  class " + std::to_string(v) + ": cone angle 2*pi*" +
           std::to_string(vc.angle_multiple) + ", " + std::to_string(vc.corners.size()) +
           " corners" + (vc.singular ? ", singular" : "") + (vc.marked ? ", marked" : "") + "\n";
  }
  out += "area: " + s.area().to_string() + " (" + approx12(s.area()) + ")\n";
  out += "genus: " + std::to_string(s.genus()) + "\n";
  for (const auto& [name, cyc] : l.cycles) {
    CoverSpec cover = make_cover(l.surface, cyc);
    Vec h = s.holonomy(cyc);
    out += "cycle " + name + ": holonomy " + vec_str(h) +
           ", recurrent: " + yesno(cover.recurrent) + "\n";
  }
  emit(a.out, out);
  return 0;
}

// --------------------------------------------------------------- cylinders

int run_cylinders(const Args& a) {
  Loaded l = resolve_surface(a.surface);
  const Surface& s = *l.surface;
  Config cfg{{"surface", a.surface}, {"source", l.source}};
  Vec th = resolve_direction(s.field(), a, cfg);
  Rat lmax = parse_rat(s.field(), a.lmax, "--lmax");
  cfg.emplace_back("lmax", lmax.get_str());
  std::optional<CoverSpec> cover;
  if (!a.cycle.empty()) {
    const auto& [name, cyc] = pick_cycle(l, a.cycle);
    cover = make_cover(l.surface, cyc);
    cfg.emplace_back("cycle", name);
  }
  CylinderDecomposition dec = decompose(s, th, lmax);
  std::string out = header("cylinders", cfg);
  out += "# units: squared Euclidean lengths and areas in chart coordinates\n";
  out += "# connections=" + std::to_string(dec.connections.size()) +
         " cylinders=" + std::to_string(dec.cylinders.size()) +
         " complete=" + std::to_string(dec.complete ? 1 : 0) + "\n";
  out += "cylinder,circumference_sq,circumference_sq_approx,height_sq,height_sq_approx,"
         "modulus,modulus_approx,area,area_approx";
  if (cover) out += ",level_shift";
  out += "\n";
  for (size_t i = 0; i < dec.cylinders.size(); ++i) {
    const Cylinder& c = dec.cylinders[i];
    out += std::to_string(i) + "," + exact_cells(c.circumference_sq) + "," +
           exact_cells(c.height_sq) + "," + exact_cells(c.modulus) + "," + exact_cells(c.area);
    if (cover) out += "," + std::to_string(classify_cylinder_lift(*cover, c).k);
    out += "\n";
  }
  int rc = 0;
  if (!dec.complete) {
    out += "# decomposition incomplete at lmax=" + lmax.get_str() +
           "; unresolved separatrices: " + std::to_string(dec.unresolved) + "\n";
    rc = 3;
  }
  emit(a.out, out);
  return rc;
}

// ------------------------------------------------------------------ strips

int run_strips(const Args& a) {
  Loaded l = resolve_surface(a.surface);
  const Surface& s = *l.surface;
  const auto& [name, cyc] = pick_cycle(l, a.cycle);
  CoverSpec cover = make_cover(l.surface, cyc);
  Rat lmax = parse_rat(s.field(), a.lmax, "--lmax");
  Config cfg{{"surface", a.surface}, {"source", l.source}, {"cycle", name},
             {"lmax", lmax.get_str()}};
  std::vector<Vec> dirs = periodic_directions(s, lmax);
  StripReport rep = strips_exist_certificate(cover, dirs, lmax);
  std::string out = header("strips", cfg);
  out += "# units: direction components are holonomy vectors in chart coordinates\n";
  out += "# directions_complete=" + std::to_string(rep.directions_complete) +
         " directions_total=" + std::to_string(rep.directions_total) +
         " span_index=" + std::to_string(rep.span_index) +
         " full_rank=" + std::to_string(rep.full_rank) + "\n";
  out += "# verdict: " + rep.verdict + "\n";
  out += "theta_x,theta_x_approx,theta_y,theta_y_approx,cylinder,level_shift\n";
  for (const StripWitness& w : rep.witnesses)
    out += exact_cells(w.direction.x) + "," + exact_cells(w.direction.y) + "," +
           std::to_string(w.cylinder) + "," + std::to_string(w.k) + "\n";
  int rc = 0;
  if (rep.verdict == "inconclusive at this bound") {
    out += "# no strip found at bound (lmax=" + lmax.get_str() + ")\n";
    rc = 3;
  }
  emit(a.out, out);
  return rc;
}

// ------------------------------------------------------------------- cover

int run_cover(const Args& a) {
  Loaded l = resolve_surface(a.surface);
  const Surface& s = *l.surface;
  Config cfg{{"surface", a.surface}, {"source", l.source}};
  if (!a.cycle.empty()) cfg.emplace_back("cycle", a.cycle);
  std::string out = header("cover", cfg);
  std::vector<std::pair<std::string, RelativeCycle>> picked;
  if (!a.cycle.empty()) {
    picked.emplace_back(pick_cycle(l, a.cycle));
  } else {
    if (l.cycles.empty())
      throw Error(Errc::bad_argument, "the surface defines no cycles; add a CYCLE section");
    for (const auto& [n, c] : l.cycles) picked.emplace_back(n, c);
  }
  for (const auto& [name, cyc] : picked) {
    CoverSpec cover = make_cover(l.surface, cyc);
    out += "cycle " + name + ":\n";
    out += "  weights:";
    for (const auto& [cls, w] : cyc.weights)
      if (w != 0) out += " " + std::to_string(cls) + ":" + std::to_string(w);
    out += "\n";
    out += "  holonomy: " + vec_str(s.holonomy(cyc)) + "\n";
    out += "  boundary:";
    auto bd = s.boundary(cyc);
    bool any = false;
    for (const auto& [vc, m] : bd)
      if (m != 0) {
        out += " class " + std::to_string(vc) + ":" + std::to_string(m);
        any = true;
      }
    if (!any) out += " zero";
    out += "\n";
    out += "  recurrent: " + yesno(cover.recurrent) + "\n";
  }
  emit(a.out, out);
  return 0;
}

// ----------------------------------------------------------------- cocycle

int run_cocycle(const Args& a) {
  Loaded l = resolve_surface(a.surface);
  const Surface& s = *l.surface;
  const FieldPtr& f = s.field();
  const auto& [name, cyc] = pick_cycle(l, a.cycle);
  CoverSpec cover = make_cover(l.surface, cyc);
  Config cfg{{"surface", a.surface}, {"source", l.source}, {"cycle", name}};
  Vec th = resolve_direction(f, a, cfg);
  if (a.time.empty()) throw Error(Errc::bad_argument, "cocycle needs --time");
  FieldElement t = parse_scalar(f, a.time, "--time");
  SurfacePoint x = default_start(s, 0);
  cfg.emplace_back("start", s.polygon_name(0) + " " + vec_str(x.pos));
  cfg.emplace_back("time", t.to_string());
  cfg.emplace_back("crossings", std::to_string(a.crossings));
  CocycleResult res = cocycle(cover, x, th, t, a.crossings);
  std::string out = header("cocycle", cfg);
  out += "# units: time is the direction parameter (position = start + t*direction)\n";
  out += "level_change,non_recurrent_warning\n";
  out += std::to_string(res.value) + "," + std::to_string(res.non_recurrent_warning ? 1 : 0) +
         "\n";
  emit(a.out, out);
  return 0;
}

// ---------------------------------------------------------------- simulate

const char* end_name(Trajectory::End e) {
  switch (e) {
    case Trajectory::End::budget_time: return "budget_time";
    case Trajectory::End::budget_crossings: return "budget_crossings";
    case Trajectory::End::singular: return "singular";
  }
  return "unknown";
}

int run_simulate(const Args& a) {
  Loaded l = resolve_surface(a.surface);
  const Surface& s = *l.surface;
  const FieldPtr& f = s.field();
  Config cfg{{"surface", a.surface}, {"source", l.source}};
  Vec th = resolve_direction(f, a, cfg);
  FlowBudget budget;
  budget.max_crossings = a.crossings;
  if (!a.time.empty()) budget.t_max = parse_scalar(f, a.time, "--time");
  SurfacePoint x = default_start(s, 0);
  cfg.emplace_back("start", s.polygon_name(0) + " " + vec_str(x.pos));
  if (budget.t_max) cfg.emplace_back("time", budget.t_max->to_string());
  cfg.emplace_back("crossings", std::to_string(a.crossings));

  Trajectory tr;
  if (!l.cycles.empty()) {
    const auto& [name, cyc] = pick_cycle(l, a.cycle.empty() ? l.cycles.begin()->first : a.cycle);
    cfg.emplace_back("cycle", name);
    tr = trace_flow(make_cover(l.surface, cyc), CoverPoint{x, 0}, th, budget);
  } else {
    cfg.emplace_back("cycle", "none");
    tr = trace_flow(s, x, th, budget);
  }

  std::string head = header("simulate", cfg);
  // The time budget was not reached when the crossing cap fired first.
  int rc = tr.end == Trajectory::End::budget_crossings && budget.t_max ? 3 : 0;

  if (a.out.ends_with(".svg")) {
    std::string svg = "<!--\n" + head + "-->\n" + render_trajectory_svg(s, tr);
    emit(a.out, svg);
    return rc;
  }

  std::string out = head;
  out += "# units: time is the direction parameter; coordinates are chart coordinates\n";
  out += "segment,polygon,level,t_entry,t_entry_approx,t_exit,t_exit_approx,"
         "entry_x,entry_x_approx,entry_y,entry_y_approx,"
         "exit_x,exit_x_approx,exit_y,exit_y_approx,crossed_class,crossing_sign\n";
  for (size_t i = 0; i < tr.segments.size(); ++i) {
    const FlowSegment& g = tr.segments[i];
    out += std::to_string(i) + "," + std::to_string(g.polygon) + "," +
           std::to_string(g.level) + "," + exact_cells(g.t_entry) + "," +
           exact_cells(g.t_exit) + "," + exact_cells(g.entry.x) + "," +
           exact_cells(g.entry.y) + "," + exact_cells(g.exit.x) + "," + exact_cells(g.exit.y) +
           "," + std::to_string(g.crossing.edge_class) + "," + std::to_string(g.crossing.sign) +
           "\n";
  }
  out += "# end=" + std::string(end_name(tr.end)) + " elapsed=" + tr.elapsed.to_string() +
         " crossings=" + std::to_string(tr.word.size()) +
         " final_level=" + std::to_string(tr.final_level) + "\n";
  if (tr.end == Trajectory::End::singular)
    out += "# hit_vertex_class=" + std::to_string(tr.hit_vertex_class) + "\n";
  emit(a.out, out);
  return rc;
}

// --------------------------------------------------------------------- iet

int run_iet(const Args& a) {
  Loaded l = resolve_surface(a.surface);
  const Surface& s = *l.surface;
  const FieldPtr& f = s.field();
  const auto& [name, cyc] = pick_cycle(l, a.cycle);
  CoverSpec cover = make_cover(l.surface, cyc);
  Config cfg{{"surface", a.surface}, {"source", l.source}, {"cycle", name}};
  Vec th = resolve_direction(f, a, cfg);
  // Interior chord of polygon 0 joining two non-adjacent edges away from
  // their vertices.
  const Polygon& poly = s.polygon(0);
  FieldElement q = FieldElement::from_rational(f, Rat(1, 4));
  Transversal tv{0, poly.edge_point(0, q), poly.edge_point(poly.size() / 2, q)};
  cfg.emplace_back("transversal",
                   s.polygon_name(0) + " chord " + vec_str(tv.a) + " to " + vec_str(tv.b));
  cfg.emplace_back("crossings", std::to_string(a.crossings));
  IETData data = first_return_iet(cover, tv, th, a.crossings);
  std::string out = header("iet", cfg);
  out += "# units: cuts and lengths are fractions of the transversal; "
         "return times are direction-parameter units\n";
  out += "interval,cut_lo,cut_lo_approx,length,length_approx,image_rank,"
         "translation,translation_approx,displacement,return_time,return_time_approx\n";
  for (size_t j = 0; j < data.intervals.size(); ++j)
    out += std::to_string(j) + "," + exact_cells(data.cuts[j]) + "," +
           exact_cells(data.intervals[j]) + "," + std::to_string(data.permutation[j]) + "," +
           exact_cells(data.translations[j]) + "," + std::to_string(data.displacements[j]) +
           "," + exact_cells(data.return_times[j]) + "\n";
  emit(a.out, out);
  return 0;
}

// --------------------------------------------------------------- probe-bounded

int run_probe(const Args& a) {
  Loaded l = resolve_surface(a.surface);
  const Surface& s = *l.surface;
  const FieldPtr& f = s.field();
  const auto& [name, cyc] = pick_cycle(l, a.cycle);
  CoverSpec cover = make_cover(l.surface, cyc);
  Config cfg{{"surface", a.surface}, {"source", l.source}, {"cycle", name}};
  Vec th = resolve_direction(f, a, cfg);
  if (a.time.empty()) throw Error(Errc::bad_argument, "probe-bounded needs --time");
  FieldElement t = parse_scalar(f, a.time, "--time");
  SurfacePoint x = default_start(s, 0);
  cfg.emplace_back("start", s.polygon_name(0) + " " + vec_str(x.pos));
  cfg.emplace_back("time", t.to_string());
  cfg.emplace_back("checkpoints", "10");
  cfg.emplace_back("crossings", std::to_string(a.crossings));
  BoundednessProfile prof = boundedness_probe(cover, x, th, t, 10, a.crossings);
  std::string out = header("probe-bounded", cfg);
  out += "# units: time is the direction parameter; levels are cover sheet indices\n";
  out += "checkpoint,t,t_approx,max_abs_level\n";
  for (size_t k = 0; k < prof.times.size(); ++k)
    out += std::to_string(k + 1) + "," + exact_cells(prof.times[k]) + "," +
           std::to_string(prof.max_abs_level[k]) + "\n";
  emit(a.out, out);
  return 0;
}

// ------------------------------------------------------------------- approx

std::vector<GroupElement> require_generators(const Loaded& l, const std::string& arg) {
  if (l.generators.empty())
    throw Error(Errc::bad_argument,
                "no group generators known for surface '" + arg +
                    "'; this verb needs a catalogue example with generators");
  return l.generators;
}

int run_approx(const Args& a) {
  Loaded l = resolve_surface(a.surface);
  const FieldPtr& f = l.surface->field();
  std::vector<GroupElement> gens = require_generators(l, a.surface);
  Config cfg{{"surface", a.surface}, {"source", l.source}};
  Vec th = resolve_direction(f, a, cfg);
  if (a.d.empty()) throw Error(Errc::bad_argument, "approx needs --d");
  FieldElement d = parse_scalar(f, a.d, "--d");
  FieldElement radius = parse_scalar(f, a.radius, "--radius");
  Vec x{FieldElement::from_rational(f, Rat(1)), FieldElement::from_rational(f, Rat(0))};
  cfg.emplace_back("base_point", vec_str(x));
  cfg.emplace_back("d", d.to_string());
  cfg.emplace_back("radius", radius.to_string());
  std::vector<GroupElement> gammas = enumerate_group(gens, radius);
  ApproxCount ac = well_approx_count(x, gammas, th, d);
  std::string out = header("approx", cfg);
  out += "# units: value = |gamma x| * |unit(theta) ^ gamma x| in chart coordinates\n";
  out += "# group_elements=" + std::to_string(gammas.size()) +
         " count=" + std::to_string(ac.count) + " min_value=" + fmt_double(ac.min_value) + "\n";
  out += "witness,word,image_x,image_x_approx,image_y,image_y_approx,"
         "value_sq,value_sq_approx,value\n";
  for (size_t i = 0; i < ac.witnesses.size(); ++i) {
    const ApproxWitness& w = ac.witnesses[i];
    std::string word;
    for (int g : w.gamma.word) word += (word.empty() ? "" : ";") + std::to_string(g);
    if (word.empty()) word = "e";
    out += std::to_string(i) + "," + word + "," + exact_cells(w.image.x) + "," +
           exact_cells(w.image.y) + "," + exact_cells(w.value_sq) + "," + fmt_double(w.value) +
           "\n";
  }
  int rc = 0;
  if (ac.count > 0) {
    out += "# verdict: well approximated at this radius\n";
  } else {
    out += "# verdict: inconclusive at this radius\n";
    rc = 3;
  }
  emit(a.out, out);
  return rc;
}

// --------------------------------------------------------------------- scan

int run_scan(const Args& a) {
  Loaded l = resolve_surface(a.surface);
  const FieldPtr& f = l.surface->field();
  std::vector<GroupElement> gens = require_generators(l, a.surface);
  if (a.d.empty()) throw Error(Errc::bad_argument, "scan needs --d");
  FieldElement d = parse_scalar(f, a.d, "--d");
  FieldElement radius = parse_scalar(f, a.radius, "--radius");
  Vec x{FieldElement::from_rational(f, Rat(1)), FieldElement::from_rational(f, Rat(0))};
  Config cfg{{"surface", a.surface},    {"source", l.source},
             {"base_point", vec_str(x)}, {"d", d.to_string()},
             {"radius", radius.to_string()}, {"grid_log2", "10"},
             {"jobs", std::to_string(a.jobs)}};
  std::vector<GroupElement> gammas = enumerate_group(gens, radius);
  ExceptionalScan sc = theta_exceptional_scan(x, gammas, d.to_double(), 10, a.jobs);
  std::string out = header("scan", cfg);
  out += "# approximate=1 (double-precision direction sweep)\n";
  out += "# group_elements=" + std::to_string(gammas.size()) +
         " exceptional=" + std::to_string(sc.exceptional) +
         " excluded_fraction=" + fmt_double(sc.excluded_fraction) +
         " box_count_slope=" + fmt_double(sc.box_count_slope) + "\n";
  out += "scale,covered_fraction\n";
  for (size_t i = 0; i < sc.covered_fraction.size(); ++i)
    out += std::to_string(i) + "," + fmt_double(sc.covered_fraction[i]) + "\n";
  emit(a.out, out);
  return 0;
}

// ------------------------------------------------------------------- admits

int run_admits(const Args& a) {
  Loaded l = resolve_surface(a.surface);
  const Surface& s = *l.surface;
  const FieldPtr& f = s.field();
  const auto& [name, cyc] = pick_cycle(l, a.cycle);
  CoverSpec cover = make_cover(l.surface, cyc);
  if (a.direction.empty())
    throw Error(Errc::bad_argument, "admits needs --direction (the strip direction)");
  Vec v = parse_direction(f, a.direction);
  Config cfg{{"surface", a.surface}, {"source", l.source}, {"cycle", name},
             {"direction", vec_str(v)}};
  Vec th = v;
  if (!a.theta_deg.empty()) {
    Args sub = a;
    sub.direction.clear();
    th = resolve_direction(f, sub, cfg);
  }
  if (a.eps.empty()) throw Error(Errc::bad_argument, "admits needs --eps");
  FieldElement eps = parse_scalar(f, a.eps, "--eps");
  Rat lmax = parse_rat(f, a.lmax, "--lmax");
  cfg.emplace_back("eps", eps.to_string());
  cfg.emplace_back("lmax", lmax.get_str());
  cfg.emplace_back("sigma_samples", "10000");
  cfg.emplace_back("seed", std::to_string(a.seed));
  CylinderDecomposition dec = decompose(s, v, lmax);
  std::string out = header("admits", cfg);
  if (!dec.complete) {
    out += "# decomposition incomplete at lmax=" + lmax.get_str() +
           "; unresolved separatrices: " + std::to_string(dec.unresolved) + "\n";
    emit(a.out, out);
    return 3;
  }
  out += "# units: areas and squared lengths in chart coordinates; "
         "sigma columns are Monte Carlo band areas\n";
  out += "cylinder,level_shift,area,area_approx,v_norm_sq,v_norm_sq_approx,"
         "h_sq,h_sq_approx,eta_sq,eta_sq_approx,c,c_approx,admits,"
         "sigma_hits,sigma_estimate,sigma_radius\n";
  int strips = 0;
  for (size_t i = 0; i < dec.cylinders.size(); ++i) {
    LiftClass lift = classify_cylinder_lift(cover, dec.cylinders[i]);
    if (lift.k == 0) continue;
    ++strips;
    StageData sd = stage_quantities(lift, eps);
    const CutCell& cell = dec.cells[dec.cylinders[i].cells.front()];
    Vec c_sum = Vec::zero(f);
    for (const Vec& p : cell.verts) c_sum = c_sum + p;
    SurfacePoint x{cell.polygon, Rat(1, static_cast<unsigned long>(cell.verts.size())) * c_sum};
    bool adm = admits_rectangle(cover, dec, static_cast<int>(i), x, th, eps);
    SigmaPrimeEstimate sig = sigma_prime_measure(cover, dec, static_cast<int>(i), eps, 10000,
                                                 a.seed);
    out += std::to_string(i) + "," + std::to_string(lift.k) + "," + exact_cells(sd.area) + "," +
           exact_cells(sd.v_norm_sq) + "," + exact_cells(sd.h_sq) + "," +
           exact_cells(sd.eta_sq) + "," + exact_cells(sd.c) + "," + (adm ? "1" : "0") + "," +
           std::to_string(sig.hits) + "," + fmt_double(sig.estimate) + "," +
           fmt_double(sig.radius) + "\n";
  }
  int rc = 0;
  if (strips == 0) {
    out += "# no strip in this direction at lmax=" + lmax.get_str() + "\n";
    rc = 3;
  }
  emit(a.out, out);
  return rc;
}

// ----------------------------------------------------------------- examples

int run_examples(const Args& a) {
  std::string out = header("examples", a.out.empty() ? Config{} : Config{{"out", a.out}});
  if (a.out.empty()) {
    out += "name,field_degree,polygons,genus,cycles,generators\n";
    for (const std::string& name : example_names()) {
      ExampleBundle b = build_example(name);
      out += name + "," + std::to_string(b.surface->field()->degree()) + "," +
             std::to_string(b.surface->num_polygons()) + "," +
             std::to_string(b.surface->genus()) + "," + std::to_string(b.cycles.size()) + "," +
             std::to_string(b.veech_generators.size()) + "\n";
    }
    emit("", out);
    return 0;
  }
  std::filesystem::create_directories(a.out);
  std::fwrite(out.data(), 1, out.size(), stdout);
  for (const std::string& name : example_names()) {
    ExampleBundle b = build_example(name);
    std::string path = (std::filesystem::path(a.out) / (name + ".tsf")).string();
    save_surface_file(path, *b.surface, b.cycles);
    std::printf("# wrote %s\n", path.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact translation-surface toolkit: cylinder decompositions, cyclic covers, "
               "straightline flow"};
  app.require_subcommand(1);
  Args a;
  int rc = 0;

  auto add_surface = [&](CLI::App* sub) {
    sub->add_option("--surface", a.surface, "surface file or catalogue name")->required();
  };
  auto add_direction = [&](CLI::App* sub) {
    sub->add_option("--direction", a.direction, "exact direction \"x,y\" (field literals)");
    sub->add_option("--theta-deg", a.theta_deg, "direction angle in degrees (snapped to rationals)");
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", a.out, "write the report to this file instead of stdout");
  };

  CLI::App* v = app.add_subcommand("validate", "check a surface and print its invariants");
  add_surface(v);
  add_out(v);
  v->callback([&] { rc = run_validate(a); });

  CLI::App* cy = app.add_subcommand("cylinders", "decompose a direction into cylinders");
  add_surface(cy);
  add_direction(cy);
  cy->add_option("--lmax", a.lmax, "saddle-connection search length bound");
  cy->add_option("--cycle", a.cycle, "also report the cover level shift of each core loop");
  add_out(cy);
  cy->callback([&] { rc = run_cylinders(a); });

  CLI::App* st = app.add_subcommand("strips", "look for cylinders lifting to infinite strips");
  add_surface(st);
  st->add_option("--cycle", a.cycle, "cycle defining the cover");
  st->add_option("--lmax", a.lmax, "length bound for the periodic-direction scan");
  add_out(st);
  st->callback([&] { rc = run_strips(a); });

  CLI::App* co = app.add_subcommand("cover", "describe the cyclic cover defined by a cycle");
  add_surface(co);
  co->add_option("--cycle", a.cycle, "report only this cycle");
  add_out(co);
  co->callback([&] { rc = run_cover(a); });

  CLI::App* cc = app.add_subcommand("cocycle", "sheet change along a flow segment");
  add_surface(cc);
  cc->add_option("--cycle", a.cycle, "cycle defining the cover");
  add_direction(cc);
  cc->add_option("--time", a.time, "flow duration (field literal, direction-parameter units)");
  cc->add_option("--crossings", a.crossings, "edge-crossing budget");
  add_out(cc);
  cc->callback([&] { rc = run_cocycle(a); });

  CLI::App* si = app.add_subcommand("simulate", "trace the flow and report every chart segment");
  add_surface(si);
  si->add_option("--cycle", a.cycle, "cycle whose cover levels to track");
  add_direction(si);
  si->add_option("--time", a.time, "flow duration (field literal)");
  si->add_option("--crossings", a.crossings, "edge-crossing budget");
  add_out(si);
  si->callback([&] { rc = run_simulate(a); });

  CLI::App* ie = app.add_subcommand("iet", "first-return interval exchange on a transversal");
  add_surface(ie);
  ie->add_option("--cycle", a.cycle, "cycle defining the cover");
  add_direction(ie);
  ie->add_option("--crossings", a.crossings, "edge-crossing budget per orbit");
  add_out(ie);
  ie->callback([&] { rc = run_iet(a); });

  CLI::App* pb = app.add_subcommand("probe-bounded", "max |level| profile along one orbit");
  add_surface(pb);
  pb->add_option("--cycle", a.cycle, "cycle defining the cover");
  add_direction(pb);
  pb->add_option("--time", a.time, "total flow duration (field literal)");
  pb->add_option("--crossings", a.crossings, "edge-crossing budget");
  add_out(pb);
  pb->callback([&] { rc = run_probe(a); });

  CLI::App* ap = app.add_subcommand("approx", "count group elements approximating a direction");
  add_surface(ap);
  add_direction(ap);
  ap->add_option("--d", a.d, "approximation threshold (field literal)");
  ap->add_option("--radius", a.radius, "group enumeration entry bound");
  add_out(ap);
  ap->callback([&] { rc = run_approx(a); });

  CLI::App* sc = app.add_subcommand("scan", "sweep directions for approximation failures");
  add_surface(sc);
  sc->add_option("--d", a.d, "approximation threshold");
  sc->add_option("--radius", a.radius, "group enumeration entry bound");
  sc->add_option("--jobs", a.jobs, "worker threads");
  add_out(sc);
  sc->callback([&] { rc = run_scan(a); });

  CLI::App* ad = app.add_subcommand("admits", "stage constants and rectangle fit per strip");
  add_surface(ad);
  ad->add_option("--cycle", a.cycle, "cycle defining the cover");
  ad->add_option("--direction", a.direction, "strip direction \"x,y\" (field literals)");
  ad->add_option("--theta-deg", a.theta_deg, "flow direction in degrees (default: the strip direction)");
  ad->add_option("--eps", a.eps, "stage parameter in (0,1)");
  ad->add_option("--lmax", a.lmax, "saddle-connection search length bound");
  ad->add_option("--seed", a.seed, "seed for the band-measure sampler");
  add_out(ad);
  ad->callback([&] { rc = run_admits(a); });

  CLI::App* ex = app.add_subcommand("examples", "list the catalogue or export it to files");
  ex->add_option("--out", a.out, "directory to write one .tsf file per example");
  ex->callback([&] { rc = run_examples(a); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    if (e.code() == Errc::no_return_at_budget) {
      std::printf("# inconclusive at bound: %s\n", e.what());
      return 3;
    }
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return rc;
}
