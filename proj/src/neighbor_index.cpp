#include "rst/neighbor_index.hpp"

namespace rst {

GridIndex::GridIndex(const std::vector<Vec2>& points, double side) : points_(&points), side_(side) {
  if (points.empty()) return;
  double xmin = points[0].x, xmax = xmin, ymin = points[0].y, ymax = ymin;
  for (const Vec2& p : points) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double w = xmax - xmin, h = ymax - ymin;
  // Keep the cell count within a small multiple of the point count so that
  // sparse or very spread-out inputs do not allocate huge grids.
  const double max_cells = 4.0 * static_cast<double>(points.size()) + 16.0;
  if (!(side_ > 0.0) || !std::isfinite(side_)) side_ = 1.0;
  while ((w / side_ + 1.0) * (h / side_ + 1.0) > max_cells) side_ *= 2.0;
  origin_ = {xmin, ymin};
  nx_ = static_cast<std::int64_t>(std::floor(w / side_)) + 1;
  ny_ = static_cast<std::int64_t>(std::floor(h / side_)) + 1;

  const std::size_t ncell = static_cast<std::size_t>(nx_ * ny_);
  std::vector<std::size_t> cell_of(points.size());
  start_.assign(ncell + 1, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::int64_t cx = std::clamp<std::int64_t>(cell_x(points[i].x), 0, nx_ - 1);
    const std::int64_t cy = std::clamp<std::int64_t>(cell_y(points[i].y), 0, ny_ - 1);
    cell_of[i] = static_cast<std::size_t>(cy * nx_ + cx);
    ++start_[cell_of[i] + 1];
  }
  for (std::size_t c = 0; c < ncell; ++c) start_[c + 1] += start_[c];
  order_.resize(points.size());
  std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
  for (std::size_t i = 0; i < points.size(); ++i) order_[fill[cell_of[i]]++] = i;
}

}  // namespace rst
