#include "zcover/tsf_io.hpp"

#include <cstdio>
#include <functional>
#include <string>

#include "doctest.h"
#include "test_support.hpp"
#include "zcover/examples.hpp"

using namespace zcover;

namespace {

Errc thrown_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::internal;
}

const char* kStaircaseText =
    "FIELD\n"
    "poly -1 -1 1\n"
    "root 1 2\n"
    "POLYGON left\n"
    "v 0, 0\n"
    "v 1, 0\n"
    "v 1, 1\n"
    "v 0, 1\n"
    "POLYGON right\n"
    "v 1, 0\n"
    "v 2, 0\n"
    "v 2, 1\n"
    "v 1, 1\n"
    "GLUE left.0 <-> right.2\n"
    "GLUE left.1 <-> right.3\n"
    "GLUE left.2 <-> right.0\n"
    "GLUE left.3 <-> right.1\n"
    "MARK 0\n"
    "MARK 1\n"
    "CYCLE w\n"
    "0: 1\n"
    "2: 1\n";

}  // namespace

TEST_CASE("staircase serializes to the documented text") {
  auto b = staircase();
  CHECK(serialize_surface_file(*b.surface, b.cycles) == kStaircaseText);
}

TEST_CASE("parsing the canonical text reproduces it byte for byte") {
  auto parsed = parse_surface_file(kStaircaseText);
  CHECK(serialize_surface_file(*parsed.surface, parsed.cycles) == kStaircaseText);
  CHECK(parsed.surface->num_polygons() == 2);
  CHECK(parsed.surface->num_vertex_classes() == 2);
  CHECK(parsed.surface->vertex_class(0).marked);
  CHECK(parsed.surface->vertex_class(1).marked);
  REQUIRE(parsed.cycles.count("w"));
  CHECK(parsed.surface->holonomy(parsed.cycles.at("w")).is_zero());
}

TEST_CASE("every example bundle round-trips bit-exactly") {
  for (const auto& name : example_names()) {
    CAPTURE(name);
    auto b = build_example(name);
    std::string text = serialize_surface_file(*b.surface, b.cycles);
    auto parsed = parse_surface_file(text);
    CHECK(serialize_surface_file(*parsed.surface, parsed.cycles) == text);

    const Surface& a = *b.surface;
    const Surface& c = *parsed.surface;
    CHECK(a.num_polygons() == c.num_polygons());
    CHECK(a.num_edge_classes() == c.num_edge_classes());
    CHECK(a.num_vertex_classes() == c.num_vertex_classes());
    CHECK(a.field()->same_field(*c.field()));
    CHECK(a.area() == c.area());
    CHECK(a.genus() == c.genus());
    for (int v = 0; v < a.num_vertex_classes(); ++v) {
      CHECK(a.vertex_class(v).marked == c.vertex_class(v).marked);
      CHECK(a.vertex_class(v).angle_multiple == c.vertex_class(v).angle_multiple);
    }
    REQUIRE(b.cycles.size() == parsed.cycles.size());
    for (const auto& [cname, w] : b.cycles) {
      REQUIRE(parsed.cycles.count(cname));
      CHECK(parsed.cycles.at(cname).weights == w.weights);
    }
  }
}

TEST_CASE("parser tolerates comments and loose whitespace") {
  std::string messy =
      "# a torus with one marked point\n"
      "FIELD\n"
      "  poly 0 1   # the rationals\n"
      "\n"
      "  root -1 1\n"
      "POLYGON sq\n"
      "   v 0, 0\n"
      "v 1 , 0\n"
      "v 1,1\n"
      " v 0 ,  1\n"
      "GLUE sq.0 <-> sq.2\n"
      "GLUE sq.1 <-> sq.3\n"
      "MARK 0\n";
  auto parsed = parse_surface_file(messy);
  std::string canon = serialize_surface_file(*parsed.surface, parsed.cycles);
  auto again = parse_surface_file(canon);
  CHECK(serialize_surface_file(*again.surface, again.cycles) == canon);
  CHECK(parsed.surface->genus() == 1);
}

TEST_CASE("parser rejects malformed input") {
  std::string torus =
      "FIELD\npoly 0 1\nroot -1 1\nPOLYGON sq\nv 0, 0\nv 1, 0\nv 1, 1\nv 0, 1\n"
      "GLUE sq.0 <-> sq.2\nGLUE sq.1 <-> sq.3\nMARK 0\n";

  CHECK(thrown_code([] { parse_surface_file("POLYGON p\nv 0, 0\n"); }) == Errc::bad_format);
  CHECK(thrown_code([] { parse_surface_file("FIELD\npoly 0 1\n"); }) == Errc::bad_format);
  CHECK(thrown_code([&] { parse_surface_file(torus + "junk line\n"); }) == Errc::bad_format);
  CHECK(thrown_code([&] { parse_surface_file(torus + "MARK 7\n"); }) == Errc::bad_format);
  CHECK(thrown_code([&] { parse_surface_file(torus + "MARK 0\n"); }) == Errc::bad_format);
  CHECK(thrown_code([&] { parse_surface_file(torus + "CYCLE w\n9: 1\n"); }) == Errc::bad_format);
  CHECK(thrown_code([&] { parse_surface_file(torus + "CYCLE w\n0: 0\n"); }) == Errc::bad_format);
  CHECK(thrown_code([&] { parse_surface_file(torus + "GLUE sq.0 <-> nope.1\n"); }) ==
        Errc::bad_format);
  CHECK(thrown_code([] {
          parse_surface_file("FIELD\npoly 0 1\nroot -1 1\nv 0, 0\n");
        }) == Errc::bad_format);
  CHECK(thrown_code([] {
          parse_surface_file(
              "FIELD\npoly 0 1\nroot -1 1\nPOLYGON a\nv 0, 0\nPOLYGON a\nv 0, 0\n");
        }) == Errc::bad_format);
  CHECK(thrown_code([] {
          parse_surface_file(
              "FIELD\npoly 0 1\nroot -1 1\nPOLYGON a\nv zebra, 0\nGLUE a.0 <-> a.1\n");
        }) == Errc::bad_format);
}

TEST_CASE("file save and load round-trip") {
  auto b = wollmilchsau();
  std::string path = "wms_roundtrip_test.tsf";
  save_surface_file(path, *b.surface, b.cycles);
  auto loaded = load_surface_file(path);
  CHECK(serialize_surface_file(*loaded.surface, loaded.cycles) ==
        serialize_surface_file(*b.surface, b.cycles));
  std::remove(path.c_str());
  CHECK(thrown_code([] { load_surface_file("does_not_exist.tsf"); }) == Errc::bad_argument);
}
