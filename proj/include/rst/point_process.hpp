#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "rst/geometry.hpp"
#include "rst/rng.hpp"

namespace rst {

enum class SamplerKind { palm_poisson_disk, binomial_disk, radial_chain };

std::string to_string(SamplerKind k);
SamplerKind parse_sampler_kind(const std::string& s);

struct SamplerConfig {
  SamplerKind kind = SamplerKind::palm_poisson_disk;
  double intensity = 1.0;
  double window_radius = 20.0;
  double guard_margin = 0.2;
  std::int64_t count = 0;  // binomial_disk: number of points; radial_chain: chain length
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  /// Radius inside which statistics are trusted.
  double trusted_radius() const { return (1.0 - guard_margin) * window_radius; }
};

struct PointSet {
  std::vector<Vec2> points;
  bool has_origin = false;  // if set, points[0] == (0, 0)
  Window window;
  double intensity = 1.0;
  std::uint64_t seed = 0;
  std::uint32_t replicate_id = 0;
  bool tie_break_checked = false;

  std::size_t size() const { return points.size(); }
};

struct DuplicatePointError : std::runtime_error {
  DuplicatePointError(std::size_t a, std::size_t b);
  std::size_t first, second;
};

/// Homogeneous Poisson process of intensity `lambda` in the disk of radius
/// `radius` centred at `center`; no origin is added.
PointSet sample_poisson_disk(double lambda, double radius, Vec2 center, std::uint64_t seed,
                             std::uint32_t replicate_id, Stream stream = Stream::points);

/// Palm version: Poisson process in the disk of radius cfg.window_radius plus
/// the origin at index 0.
PointSet sample_palm_poisson(const SamplerConfig& cfg, std::uint32_t replicate_id = 0);

/// Exactly cfg.count uniform points in the disk of radius cfg.window_radius,
/// plus the origin at index 0.
PointSet sample_binomial_disk(const SamplerConfig& cfg, std::uint32_t replicate_id = 0);

/// n points with squared radii forming a Poisson process of rate lambda*pi on
/// the half-line and i.i.d. uniform angles: the n nearest points of a Palm
/// process, sorted by radius. The origin is not included.
PointSet sample_radial_chain(std::int64_t n, double lambda, std::uint64_t seed,
                             std::uint32_t replicate_id = 0);

/// Dispatch on cfg.kind.
PointSet sample(const SamplerConfig& cfg, std::uint32_t replicate_id = 0);

/// Rejects exact duplicate coordinates and marks the set as ready for
/// construction. Ties between equal distances are broken downstream by
/// point index, so this never reorders or perturbs points.
PointSet enforce_nonequidistance(PointSet ps);

/// Copy of `ps` with `p` appended; returns the new index through `index`.
PointSet with_point(const PointSet& ps, Vec2 p, std::size_t* index = nullptr);

/// CSV with header `id,x,y,is_origin`.
void write_points_csv(std::ostream& os, const PointSet& ps);
PointSet read_points_csv(std::istream& is);

/// Lazily materialised Poisson process on the whole plane. Each grid cell's
/// points are a pure function of (seed, replicate, cell), so walks of any
/// length see one consistent configuration without a bounding window.
class PoissonField {
 public:
  PoissonField(double lambda, std::uint64_t seed, std::uint32_t replicate_id);

  double cell_side() const { return side_; }
  double intensity() const { return lambda_; }
  const std::vector<Vec2>& cell(std::int64_t i, std::int64_t j);

  /// Drop cached cells with column index greater than `i`.
  void evict_columns_above(std::int64_t i);
  std::size_t cached_cells() const { return cells_.size(); }

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& k) const {
      return static_cast<std::size_t>(mix64(static_cast<std::uint64_t>(k.first) * 0x9E3779B97F4A7C15ULL ^
                                            static_cast<std::uint64_t>(k.second)));
    }
  };

  double lambda_;
  double side_;
  std::uint64_t key_;
  std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::vector<Vec2>, KeyHash> cells_;
};

}  // namespace rst
