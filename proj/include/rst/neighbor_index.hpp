#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "rst/geometry.hpp"

namespace rst {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

/// Best candidate so far under the (cost, index) lexicographic order.
struct Candidate {
  double cost = std::numeric_limits<double>::infinity();
  std::size_t index = npos;

  bool found() const { return index != npos; }
  bool improved_by(double c, std::size_t i) const { return c < cost || (c == cost && i < index); }
  void offer(double c, std::size_t i) {
    if (improved_by(c, i)) {
      cost = c;
      index = i;
    }
  }
};

/// Axis-distance lower bound from `q` to anything outside the block of cells
/// [cx-k, cx+k] x [cy-k, cy+k], converted to a cost. A small slack keeps the
/// bound valid when a point sits on a cell boundary up to rounding.
inline double ring_lower_bound(Vec2 q, Vec2 origin, double side, std::int64_t cx, std::int64_t cy,
                               std::int64_t k, Norm n) {
  const double left = q.x - (origin.x + static_cast<double>(cx - k) * side);
  const double right = origin.x + static_cast<double>(cx + k + 1) * side - q.x;
  const double down = q.y - (origin.y + static_cast<double>(cy - k) * side);
  const double up = origin.y + static_cast<double>(cy + k + 1) * side - q.y;
  const double d = std::max(0.0, std::min({left, right, down, up}) - 1e-9 * side);
  return n == Norm::l2 ? d * d : d;
}

/// Uniform bucket grid over a fixed set of points.
class GridIndex {
 public:
  GridIndex() = default;
  /// `side` is the target cell side (1/sqrt(intensity) keeps about one point
  /// per cell); it is enlarged if the bounding box would need too many cells.
  GridIndex(const std::vector<Vec2>& points, double side);

  /// Nearest point j != exclude with accept(j) true, under norm `n` and the
  /// (cost, index) order. Visits rings of cells until the ring lower bound
  /// exceeds the best cost found. `stop_cost` lets callers abandon the search
  /// once every remaining candidate would cost more than that.
  template <class Accept>
  Candidate nearest(Vec2 q, Norm n, Accept&& accept, std::size_t exclude = npos,
                    double stop_cost = std::numeric_limits<double>::infinity()) const;

  const std::vector<Vec2>& points() const { return *points_; }
  double side() const { return side_; }

 private:
  std::int64_t cell_x(double x) const { return static_cast<std::int64_t>(std::floor((x - origin_.x) / side_)); }
  std::int64_t cell_y(double y) const { return static_cast<std::int64_t>(std::floor((y - origin_.y) / side_)); }

  template <class Accept>
  void scan_cell(std::int64_t i, std::int64_t j, Vec2 q, Norm n, Accept& accept, std::size_t exclude,
                 Candidate& best) const {
    const std::size_t c = static_cast<std::size_t>(j * nx_ + i);
    for (std::size_t s = start_[c]; s < start_[c + 1]; ++s) {
      const std::size_t idx = order_[s];
      if (idx == exclude) continue;
      const double cst = cost(n, q, (*points_)[idx]);
      if (!best.improved_by(cst, idx)) continue;
      if (accept(idx)) best.offer(cst, idx);
    }
  }

  const std::vector<Vec2>* points_ = nullptr;
  Vec2 origin_{};
  double side_ = 1.0;
  std::int64_t nx_ = 0, ny_ = 0;
  std::vector<std::size_t> start_;
  std::vector<std::size_t> order_;
};

template <class Accept>
Candidate GridIndex::nearest(Vec2 q, Norm n, Accept&& accept, std::size_t exclude, double stop_cost) const {
  Candidate best;
  if (nx_ == 0) return best;
  const std::int64_t cx = cell_x(q.x), cy = cell_y(q.y);
  // Skip rings that cannot intersect the grid at all.
  std::int64_t k = std::max<std::int64_t>({0, -cx, cx - (nx_ - 1), -cy, cy - (ny_ - 1)});
  for (;; ++k) {
    const std::int64_t i0 = cx - k, i1 = cx + k, j0 = cy - k, j1 = cy + k;
    const std::int64_t ilo = std::max<std::int64_t>(i0, 0), ihi = std::min<std::int64_t>(i1, nx_ - 1);
    const std::int64_t jlo = std::max<std::int64_t>(j0 + 1, 0), jhi = std::min<std::int64_t>(j1 - 1, ny_ - 1);
    if (k == 0) {
      scan_cell(cx, cy, q, n, accept, exclude, best);
    } else {
      if (j0 >= 0 && j0 < ny_)
        for (std::int64_t i = ilo; i <= ihi; ++i) scan_cell(i, j0, q, n, accept, exclude, best);
      if (j1 >= 0 && j1 < ny_)
        for (std::int64_t i = ilo; i <= ihi; ++i) scan_cell(i, j1, q, n, accept, exclude, best);
      if (i0 >= 0 && i0 < nx_)
        for (std::int64_t j = jlo; j <= jhi; ++j) scan_cell(i0, j, q, n, accept, exclude, best);
      if (i1 >= 0 && i1 < nx_)
        for (std::int64_t j = jlo; j <= jhi; ++j) scan_cell(i1, j, q, n, accept, exclude, best);
    }
    if (i0 <= 0 && i1 >= nx_ - 1 && j0 <= 0 && j1 >= ny_ - 1) break;
    const double lb = ring_lower_bound(q, origin_, side_, cx, cy, k, n);
    if (lb > best.cost || lb > stop_cost) break;
  }
  return best;
}

}  // namespace rst
