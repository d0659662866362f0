#pragma once

#include <algorithm>
#include <cmath>
#include <string>

namespace rst {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2_sq(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline double norm2(Vec2 a) { return std::hypot(a.x, a.y); }
inline double norm_inf(Vec2 a) { return std::max(std::abs(a.x), std::abs(a.y)); }
inline double arg(Vec2 a) { return std::atan2(a.y, a.x); }

/// Rotate `a` by angle `t` (counter-clockwise).
inline Vec2 rotate(Vec2 a, double t) {
  const double c = std::cos(t), s = std::sin(t);
  return {c * a.x - s * a.y, s * a.x + c * a.y};
}

/// The vector `u` expressed in the frame where `v` lies on the positive x-axis.
inline Vec2 to_frame_of(Vec2 u, Vec2 v) {
  const double r = norm2(v);
  if (r == 0.0) return u;
  const double c = v.x / r, s = v.y / r;
  return {c * u.x + s * u.y, -s * u.x + c * u.y};
}

enum class Norm { l2, linf };

std::string to_string(Norm n);
Norm parse_norm(const std::string& s);

/// Distance used by all comparisons. For l2 this is the *squared* Euclidean
/// distance so that grid and brute-force searches compare identical numbers.
inline double cost(Norm n, Vec2 a, Vec2 b) {
  const Vec2 d = a - b;
  return n == Norm::l2 ? norm2_sq(d) : norm_inf(d);
}

/// Converts a cost back to a length.
inline double cost_to_length(Norm n, double c) { return n == Norm::l2 ? std::sqrt(c) : c; }

inline double length(Norm n, Vec2 a) { return n == Norm::l2 ? norm2(a) : norm_inf(a); }

/// Sampling window. `plane` is unbounded and is meant for hand-built
/// configurations where every query is trusted.
struct Window {
  enum class Kind { disk, rect, plane };

  Kind kind = Kind::plane;
  Vec2 center{};  // disk
  double radius = 0.0;
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;  // rect

  static Window disk(double r, Vec2 c = {}) {
    Window w;
    w.kind = Kind::disk;
    w.radius = r;
    w.center = c;
    return w;
  }
  static Window rect(double x0, double x1, double y0, double y1) {
    Window w;
    w.kind = Kind::rect;
    w.xmin = x0;
    w.xmax = x1;
    w.ymin = y0;
    w.ymax = y1;
    return w;
  }
  static Window plane() { return Window{}; }

  bool bounded() const { return kind != Kind::plane; }
  double area() const;
  bool contains(Vec2 p) const;

  /// True if the closed ball of radius `r` (in norm `n`) around `c` lies in the window.
  bool contains_ball(Vec2 c, double r, Norm n) const;

  /// True if {Y : |Y - c| <= r, <Y - c, d> >= 0} lies in the window (Euclidean ball).
  bool contains_half_disk(Vec2 c, double r, Vec2 d) const;

  bool operator==(const Window&) const = default;
};

}  // namespace rst
