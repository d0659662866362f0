#include "rst/geometry.hpp"

#include <stdexcept>

namespace rst {

std::string to_string(Norm n) { return n == Norm::l2 ? "l2" : "linf"; }

Norm parse_norm(const std::string& s) {
  if (s == "l2") return Norm::l2;
  if (s == "linf") return Norm::linf;
  throw std::invalid_argument("unknown norm '" + s + "' (expected l2 or linf)");
}

double Window::area() const {
  switch (kind) {
    case Kind::disk: return kPi * radius * radius;
    case Kind::rect: return (xmax - xmin) * (ymax - ymin);
    case Kind::plane: break;
  }
  return HUGE_VAL;
}

bool Window::contains(Vec2 p) const {
  switch (kind) {
    case Kind::disk: return norm2_sq(p - center) <= radius * radius;
    case Kind::rect: return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
    case Kind::plane: break;
  }
  return true;
}

bool Window::contains_ball(Vec2 c, double r, Norm n) const {
  switch (kind) {
    case Kind::disk: {
      // The l-inf ball is a square whose farthest corner is r*sqrt(2) away.
      const double reach = n == Norm::l2 ? r : r * std::sqrt(2.0);
      return norm2(c - center) + reach <= radius;
    }
    case Kind::rect:
      return c.x - r >= xmin && c.x + r <= xmax && c.y - r >= ymin && c.y + r <= ymax;
    case Kind::plane: break;
  }
  return true;
}

bool Window::contains_half_disk(Vec2 c, double r, Vec2 d) const {
  switch (kind) {
    case Kind::disk: {
      // Farthest point of the half-disk from the window centre: either along
      // the ray from the centre (if that ray points into the half) or at one
      // of the two ends of the diameter.
      const Vec2 v = c - center;
      const double vn = norm2(v);
      double far;
      if (dot(v, d) >= 0.0) {
        far = vn + r;
      } else {
        const Vec2 perp{-d.y, d.x};
        far = std::sqrt(vn * vn + r * r + 2.0 * r * std::abs(dot(v, perp)));
      }
      return far <= radius;
    }
    case Kind::rect: {
      const Vec2 perp{-d.y, d.x};
      const Vec2 corners[] = {c + r * perp, c - r * perp, c + r * perp + r * d, c - r * perp + r * d};
      for (const Vec2& q : corners)
        if (!contains(q)) return false;
      return true;
    }
    case Kind::plane: break;
  }
  return true;
}

}  // namespace rst
