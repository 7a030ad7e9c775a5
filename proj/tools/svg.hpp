#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "zcover/flow.hpp"
#include "zcover/surface.hpp"

namespace zcover::cli {

// Self-contained SVG of the surface charts with a traced orbit drawn on
// top.  Charts that overlap in the plane (identical copies of a polygon,
// say) are laid out left to right; segments are colored by cover level on a
// blue-to-red ramp.
inline std::string render_trajectory_svg(const Surface& s, const Trajectory& tr) {
  struct Box {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  };
  int np = s.num_polygons();
  std::vector<Box> box(np);
  for (int p = 0; p < np; ++p) {
    const Polygon& poly = s.polygon(p);
    Box b{1e300, 1e300, -1e300, -1e300};
    for (int i = 0; i < poly.size(); ++i) {
      double x = poly.vertex(i).x.to_double(), y = poly.vertex(i).y.to_double();
      b.x0 = std::min(b.x0, x);
      b.y0 = std::min(b.y0, y);
      b.x1 = std::max(b.x1, x);
      b.y1 = std::max(b.y1, y);
    }
    box[p] = b;
  }

  // Greedy chart layout: keep the chart where it is unless it collides with
  // an already placed one, then park it to the right of everything.
  std::vector<double> dx(np, 0);
  std::vector<Box> placed;
  double margin = 0.6;
  for (int p = 0; p < np; ++p) {
    Box b = box[p];
    bool clash = false;
    for (const Box& q : placed)
      if (b.x0 < q.x1 && q.x0 < b.x1 && b.y0 < q.y1 && q.y0 < b.y1) clash = true;
    if (clash) {
      double right = -1e300;
      for (const Box& q : placed) right = std::max(right, q.x1);
      dx[p] = right + margin - b.x0;
      b.x0 += dx[p];
      b.x1 += dx[p];
    }
    placed.push_back(b);
  }

  Box all{1e300, 1e300, -1e300, -1e300};
  for (const Box& b : placed) {
    all.x0 = std::min(all.x0, b.x0);
    all.y0 = std::min(all.y0, b.y0);
    all.x1 = std::max(all.x1, b.x1);
    all.y1 = std::max(all.y1, b.y1);
  }
  double pad = 0.4;
  all.x0 -= pad;
  all.y0 -= pad;
  all.x1 += pad;
  all.y1 += pad;

  long long lev_lo = 0, lev_hi = 0;
  for (const auto& seg : tr.segments) {
    lev_lo = std::min(lev_lo, seg.level);
    lev_hi = std::max(lev_hi, seg.level);
  }

  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return std::string(buf);
  };
  // SVG y axis points down; flip about the bounding box.
  auto sy = [&](double y) { return all.y0 + all.y1 - y; };
  auto level_color = [&](long long lev) {
    double t = lev_hi == lev_lo ? 0.5
                                : static_cast<double>(lev - lev_lo) /
                                      static_cast<double>(lev_hi - lev_lo);
    int hue = static_cast<int>(std::lround(240.0 * (1.0 - t)));
    return "hsl(" + std::to_string(hue) + ",75%,45%)";
  };

  double w = all.x1 - all.x0, h = all.y1 - all.y0;
  double scale = 880.0 / std::max(w, h);
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w * scale) +
         "\" height=\"" + num(h * scale) + "\" viewBox=\"" + num(all.x0) + " " + num(all.y0) +
         " " + num(w) + " " + num(h) + "\">\n";
  out += "<rect x=\"" + num(all.x0) + "\" y=\"" + num(all.y0) + "\" width=\"" + num(w) +
         "\" height=\"" + num(h) + "\" fill=\"white\"/>\n";

  for (int p = 0; p < np; ++p) {
    const Polygon& poly = s.polygon(p);
    std::string pts;
    for (int i = 0; i < poly.size(); ++i) {
      double x = poly.vertex(i).x.to_double() + dx[p];
      double y = sy(poly.vertex(i).y.to_double());
      pts += (i ? " " : "") + num(x) + "," + num(y);
    }
    out += "<polygon points=\"" + pts +
           "\" fill=\"#f2f2f2\" stroke=\"#444444\" stroke-width=\"0.02\"/>\n";
  }

  for (const auto& seg : tr.segments) {
    double x1 = seg.entry.x.to_double() + dx[seg.polygon];
    double y1 = sy(seg.entry.y.to_double());
    double x2 = seg.exit.x.to_double() + dx[seg.polygon];
    double y2 = sy(seg.exit.y.to_double());
    out += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
           num(y2) + "\" stroke=\"" + level_color(seg.level) +
           "\" stroke-width=\"0.035\" stroke-linecap=\"round\"/>\n";
  }

  out += "</svg>\n";
  return out;
}

}  // namespace zcover::cli
