#include "zcover/tsf_io.hpp"

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "zcover/errors.hpp"

namespace zcover {

namespace {

[[noreturn]] void fail(int line_no, const std::string& what) {
  throw Error(Errc::bad_format, "line " + std::to_string(line_no) + ": " + what);
}

std::string strip(const std::string& raw) {
  std::string s = raw;
  auto hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

Int parse_int(const std::string& tok, int line_no) {
  try {
    return Int(tok);
  } catch (const std::invalid_argument&) {
    fail(line_no, "bad integer \"" + tok + "\"");
  }
}

Rat parse_rat(const std::string& tok, int line_no) {
  try {
    Rat q(tok);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    fail(line_no, "bad rational \"" + tok + "\"");
  }
}

long long parse_ll(const std::string& tok, int line_no) {
  try {
    size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) fail(line_no, "bad integer \"" + tok + "\"");
    return v;
  } catch (const std::logic_error&) {
    fail(line_no, "bad integer \"" + tok + "\"");
  }
}

// "name.edge" with the polygon resolved against the declared names.
EdgeRef parse_edge_ref(const std::string& tok, const std::vector<std::string>& names,
                       int line_no) {
  auto dot = tok.rfind('.');
  if (dot == std::string::npos || dot + 1 == tok.size()) fail(line_no, "expected name.edge");
  std::string name = tok.substr(0, dot);
  int poly = -1;
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) poly = static_cast<int>(i);
  if (poly < 0) fail(line_no, "unknown polygon \"" + name + "\"");
  return {poly, static_cast<int>(parse_ll(tok.substr(dot + 1), line_no))};
}

std::string rat_str(const Rat& q) { return q.get_str(); }

}  // namespace

SurfaceFile parse_surface_file(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;

  std::vector<Int> poly_coeffs;
  bool have_root = false;
  Rat root_lo, root_hi;
  std::vector<std::string> names;
  std::vector<std::vector<Vec>> polygon_verts;
  std::vector<std::pair<EdgeRef, EdgeRef>> gluings;
  std::vector<std::pair<long long, int>> mark_ids;  // id, source line
  std::vector<std::pair<std::string, RelativeCycle>> cycles;

  enum class Section { none, field, polygon, cycle };
  Section section = Section::none;
  FieldPtr field;

  auto require_field = [&](int ln) {
    if (!field) {
      if (poly_coeffs.empty() || !have_root) fail(ln, "FIELD section incomplete");
      field = Field::create(poly_coeffs, root_lo, root_hi);
    }
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip(raw);
    if (line.empty()) continue;
    auto toks = split_ws(line);
    const std::string& head = toks[0];

    if (head == "FIELD") {
      if (field || !poly_coeffs.empty()) fail(line_no, "duplicate FIELD section");
      section = Section::field;
    } else if (head == "poly") {
      if (section != Section::field) fail(line_no, "poly outside FIELD");
      if (toks.size() < 3) fail(line_no, "poly needs at least two coefficients");
      for (size_t i = 1; i < toks.size(); ++i)
        poly_coeffs.push_back(parse_int(toks[i], line_no));
    } else if (head == "root") {
      if (section != Section::field) fail(line_no, "root outside FIELD");
      if (toks.size() != 3) fail(line_no, "root needs lo and hi");
      root_lo = parse_rat(toks[1], line_no);
      root_hi = parse_rat(toks[2], line_no);
      have_root = true;
    } else if (head == "POLYGON") {
      if (toks.size() != 2) fail(line_no, "POLYGON needs a name");
      require_field(line_no);
      for (const auto& n : names)
        if (n == toks[1]) fail(line_no, "duplicate polygon \"" + toks[1] + "\"");
      names.push_back(toks[1]);
      polygon_verts.emplace_back();
      section = Section::polygon;
    } else if (head == "v") {
      if (section != Section::polygon) fail(line_no, "vertex outside POLYGON");
      auto comma = line.find(',');
      if (comma == std::string::npos) fail(line_no, "vertex needs \"x, y\"");
      std::string xs = strip(line.substr(1, comma - 1));
      std::string ys = strip(line.substr(comma + 1));
      try {
        polygon_verts.back().push_back({parse_element(field, xs), parse_element(field, ys)});
      } catch (const Error& e) {
        fail(line_no, e.what());
      }
    } else if (head == "GLUE") {
      if (toks.size() != 4 || toks[2] != "<->") fail(line_no, "GLUE a.e <-> b.f");
      section = Section::none;
      gluings.push_back(
          {parse_edge_ref(toks[1], names, line_no), parse_edge_ref(toks[3], names, line_no)});
    } else if (head == "MARK") {
      if (toks.size() != 2) fail(line_no, "MARK needs one vertex class id");
      section = Section::none;
      long long id = parse_ll(toks[1], line_no);
      for (const auto& [seen, ln] : mark_ids)
        if (seen == id) fail(line_no, "duplicate MARK " + std::to_string(id));
      mark_ids.push_back({id, line_no});
    } else if (head == "CYCLE") {
      if (toks.size() != 2) fail(line_no, "CYCLE needs a name");
      for (const auto& [n, w] : cycles)
        if (n == toks[1]) fail(line_no, "duplicate cycle \"" + toks[1] + "\"");
      cycles.push_back({toks[1], RelativeCycle{}});
      section = Section::cycle;
    } else if (section == Section::cycle && head.size() > 1 && head.back() == ':') {
      if (toks.size() != 2) fail(line_no, "cycle line is \"class: weight\"");
      long long cls = parse_ll(head.substr(0, head.size() - 1), line_no);
      long long wt = parse_ll(toks[1], line_no);
      if (wt == 0) fail(line_no, "zero weight");
      auto& weights = cycles.back().second.weights;
      if (weights.count(static_cast<int>(cls))) fail(line_no, "duplicate cycle class");
      weights[static_cast<int>(cls)] = wt;
    } else {
      fail(line_no, "unrecognized line \"" + line + "\"");
    }
  }

  require_field(line_no + 1);
  if (polygon_verts.empty()) fail(line_no + 1, "no polygons");

  Surface::BuildData data;
  data.field = field;
  for (auto& verts : polygon_verts) data.polygons.emplace_back(std::move(verts));
  data.polygon_names = names;
  data.gluings = gluings;

  // MARK refers to vertex class ids of the finished surface, which only
  // exist after a build.  Class numbering depends on polygons and gluings
  // alone, so a scaffold build resolves the ids to representative corners.
  if (!mark_ids.empty()) {
    Surface::BuildData scaffold = data;
    scaffold.marks = {{0, 0}};
    auto probe = Surface::build(std::move(scaffold));
    for (const auto& [id, ln] : mark_ids) {
      if (id < 0 || id >= probe->num_vertex_classes())
        fail(ln, "MARK " + std::to_string(id) + " out of range");
      data.marks.push_back(probe->vertex_class(static_cast<int>(id)).corners.front());
    }
  }

  SurfaceFile out;
  out.surface = Surface::build(std::move(data));
  for (auto& [name, w] : cycles) {
    for (const auto& [cls, wt] : w.weights)
      if (cls < 0 || cls >= out.surface->num_edge_classes())
        throw Error(Errc::bad_format, "cycle \"" + name + "\" references edge class " +
                                          std::to_string(cls) + " out of range");
    out.cycles.emplace(std::move(name), std::move(w));
  }
  return out;
}

std::string serialize_surface_file(const Surface& s,
                                   const std::map<std::string, RelativeCycle>& cycles) {
  std::ostringstream out;
  out << "FIELD\n";
  out << "poly";
  for (const auto& c : s.field()->min_poly()) out << ' ' << c.get_str();
  out << '\n';
  auto [lo, hi] = s.field()->initial_interval();
  out << "root " << rat_str(lo) << ' ' << rat_str(hi) << '\n';

  for (int p = 0; p < s.num_polygons(); ++p) {
    out << "POLYGON " << s.polygon_name(p) << '\n';
    const Polygon& poly = s.polygon(p);
    for (int i = 0; i < poly.size(); ++i) {
      const Vec& v = poly.vertex(i);
      out << "v " << v.x.to_string() << ", " << v.y.to_string() << '\n';
    }
  }

  for (int c = 0; c < s.num_edge_classes(); ++c) {
    const auto& cls = s.edge_class(c);
    out << "GLUE " << s.polygon_name(cls.canonical.polygon) << '.' << cls.canonical.edge
        << " <-> " << s.polygon_name(cls.partner.polygon) << '.' << cls.partner.edge << '\n';
  }

  for (int v = 0; v < s.num_vertex_classes(); ++v)
    if (s.vertex_class(v).marked) out << "MARK " << v << '\n';

  for (const auto& [name, w] : cycles) {
    out << "CYCLE " << name << '\n';
    for (const auto& [cls, wt] : w.weights) out << cls << ": " << wt << '\n';
  }
  return out.str();
}

SurfaceFile load_surface_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::bad_argument, "cannot read \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_surface_file(buf.str());
}

void save_surface_file(const std::string& path, const Surface& s,
                       const std::map<std::string, RelativeCycle>& cycles) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::bad_argument, "cannot write \"" + path + "\"");
  out << serialize_surface_file(s, cycles);
}

}  // namespace zcover
