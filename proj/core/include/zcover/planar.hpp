#pragma once

#include <string>
#include <utility>

#include "zcover/field.hpp"

namespace zcover {

// Exact planar vector over a number field.
struct Vec {
  FieldElement x, y;

  Vec() = default;
  Vec(FieldElement px, FieldElement py) : x(std::move(px)), y(std::move(py)) {}

  static Vec zero(const FieldPtr& f) {
    return {FieldElement::from_rational(f, Rat(0)), FieldElement::from_rational(f, Rat(0))};
  }

  Vec operator+(const Vec& o) const { return {x + o.x, y + o.y}; }
  Vec operator-(const Vec& o) const { return {x - o.x, y - o.y}; }
  Vec operator-() const { return {-x, -y}; }
  Vec& operator+=(const Vec& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }

  friend Vec operator*(const FieldElement& s, const Vec& v) { return {s * v.x, s * v.y}; }
  friend Vec operator*(const Rat& s, const Vec& v) { return {v.x * s, v.y * s}; }

  friend bool operator==(const Vec& a, const Vec& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Vec& a, const Vec& b) { return !(a == b); }

  bool is_zero() const { return x.is_zero() && y.is_zero(); }

  std::string to_string() const { return x.to_string() + "," + y.to_string(); }
};

inline FieldElement cross(const Vec& a, const Vec& b) { return a.x * b.y - a.y * b.x; }
inline FieldElement dot(const Vec& a, const Vec& b) { return a.x * b.x + a.y * b.y; }
inline FieldElement norm_sq(const Vec& a) { return dot(a, a); }

inline bool same_ray(const Vec& a, const Vec& b) {
  return cross(a, b).is_zero() && dot(a, b).sign() > 0;
}

// Strict cyclic order of nonzero directions, anchored at the positive x-axis:
// returns true when a's angle in [0, 2pi) is smaller than b's.
inline bool ray_less(const Vec& a, const Vec& b) {
  auto half = [](const Vec& v) {
    int sy = v.y.sign();
    if (sy > 0) return 0;
    if (sy < 0) return 1;
    return v.x.sign() > 0 ? 0 : 1;
  };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return cross(a, b).sign() > 0;
}

}  // namespace zcover
