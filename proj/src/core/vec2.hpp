#pragma once

#include <cmath>

namespace minkflow {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Unit radial direction (cos t, sin t).
inline Vec2 unit_radial(double theta) { return {std::cos(theta), std::sin(theta)}; }
/// Counter-clockwise rotation of unit_radial by a right angle.
inline Vec2 unit_azimuthal(double theta) { return {-std::sin(theta), std::cos(theta)}; }

}  // namespace minkflow
