#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "rst/geometry.hpp"
#include "rst/neighbor_index.hpp"
#include "rst/point_process.hpp"

namespace rst {

enum class ForestKind { rst, dsf, greedy, voronoi_internal, voronoi_local };

std::string to_string(ForestKind k);
ForestKind parse_forest_kind(const std::string& s);

/// Scalar field ordering the points; an ancestor must have a strictly lower level.
struct Level {
  enum class Kind { radial_l2, radial_linf, coordinate };
  Kind kind = Kind::radial_l2;
  Vec2 direction{-1.0, 0.0};  // coordinate only: ancestors lie further along it

  static Level radial(Norm n) { return {n == Norm::l2 ? Kind::radial_l2 : Kind::radial_linf, {-1.0, 0.0}}; }
  static Level along(Vec2 d) { return {Kind::coordinate, d}; }

  /// Radial l2 levels are squared norms, which preserves the order exactly.
  double operator()(Vec2 p) const {
    switch (kind) {
      case Kind::radial_l2: return norm2_sq(p);
      case Kind::radial_linf: return norm_inf(p);
      case Kind::coordinate: break;
    }
    return -dot(p, direction);
  }
};

struct GreedySpec {
  Level level;
  Norm cost = Norm::l2;
};

struct Forest {
  std::shared_ptr<const PointSet> points;
  std::vector<std::size_t> ancestor;    // npos for roots and censored vertices
  std::vector<std::uint8_t> censored;   // 1 if the ancestor search left the window
  std::vector<std::uint32_t> children;  // number of vertices whose ancestor is this one
  std::vector<std::size_t> cell;        // voronoi kinds: head index of each vertex
  ForestKind kind = ForestKind::rst;
  Norm norm = Norm::l2;
  GreedySpec spec;
  std::size_t head_count = 0;  // voronoi kinds: heads occupy indices [0, head_count)

  std::size_t size() const { return ancestor.size(); }
  bool is_root(std::size_t v) const { return !censored[v] && ancestor[v] == npos; }
  bool has_edge(std::size_t v) const { return ancestor[v] != npos; }
  Vec2 position(std::size_t v) const { return points->points[v]; }
  double edge_length(std::size_t v) const;
  std::size_t edge_count() const;
  std::size_t root_count() const;
  std::size_t censored_count() const;
};

struct AncestorResult {
  std::size_t index = npos;
  bool censored = false;
};

/// One greedy ancestor query, with window certification.
AncestorResult greedy_ancestor(const PointSet& ps, const GridIndex& grid, std::size_t v, const GreedySpec& spec);

/// Grid index with the customary cell side for `ps`.
GridIndex make_grid(const PointSet& ps);

Forest build_greedy(const PointSet& ps, const GreedySpec& spec);
Forest build_rst(const PointSet& ps, Norm norm = Norm::l2);
Forest build_dsf(const PointSet& ps, Vec2 direction = {-1.0, 0.0});

/// O(n^2) reference construction with the same certification rule; used as an oracle.
Forest brute_force_greedy(const PointSet& ps, const GreedySpec& spec);

/// Cluster heads (intensity lambda0) and nodes (intensity lambda1) in one window.
struct ClusterScene {
  PointSet heads;
  PointSet nodes;
};

/// Heads: Palm Poisson (a head at the origin) of intensity lambda0; nodes:
/// independent Poisson of intensity lambda1, both in the disk of radius `radius`.
ClusterScene sample_cluster_scene(double lambda0, double lambda1, double radius, std::uint64_t seed,
                                  std::uint32_t replicate_id);

/// Forests over the merged point set (heads first, then nodes). Heads are roots.
Forest build_voronoi_local(const ClusterScene& scene);
Forest build_voronoi_internal(const ClusterScene& scene);
Forest brute_force_voronoi_local(const ClusterScene& scene);
Forest brute_force_voronoi_internal(const ClusterScene& scene);

/// Incident edges: children plus one for the edge to the ancestor.
std::uint32_t degree(const Forest& f, std::size_t v);

/// Hop count to the root; -1 when the chain meets a censored vertex.
std::vector<std::int64_t> generations(const Forest& f);

/// Vertices whose generation is at most k.
std::vector<std::size_t> generation_set(const Forest& f, std::int64_t k);

/// Number of edges with exactly one endpoint in the closed ball B(O, x)
/// (ball taken in the forest's norm).
std::size_t crossing_count(const Forest& f, double x);

/// Number of vertices from which ancestor iteration never reaches a root or a
/// censored vertex (0 for a valid forest).
std::size_t cycle_vertex_count(const Forest& f);

/// Vertices X whose RST lens B(O,|X|) cap B(X,|X - A(X)|) holds a point that
/// precedes the chosen ancestor in the (distance, index) order.
std::vector<std::size_t> void_condition_violations(const Forest& f);

/// CSV `child_id,parent_id,length,censored`; roots and censored vertices use parent_id -1.
void write_forest_csv(std::ostream& os, const Forest& f);

}  // namespace rst
