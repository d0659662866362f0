#include "rst/forest.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "rst/format.hpp"

namespace rst {
namespace {

// Decides whether a greedy query result can be trusted given the window.
bool certified(const PointSet& ps, Vec2 x, const GreedySpec& spec, const Candidate& best) {
  const Window& w = ps.window;
  if (!w.bounded()) return true;
  switch (spec.level.kind) {
    case Level::Kind::radial_l2:
      if (w.contains_ball({}, norm2(x), Norm::l2)) return true;
      break;
    case Level::Kind::radial_linf:
      if (w.contains_ball({}, norm_inf(x), Norm::linf)) return true;
      break;
    case Level::Kind::coordinate: break;
  }
  if (!best.found()) return false;
  const double len = cost_to_length(spec.cost, best.cost);
  if (spec.level.kind == Level::Kind::coordinate && spec.cost == Norm::l2)
    return w.contains_half_disk(x, len, spec.level.direction);
  return w.contains_ball(x, len, spec.cost);
}

Forest empty_forest(const PointSet& ps, ForestKind kind, Norm norm, const GreedySpec& spec) {
  Forest f;
  f.points = std::make_shared<const PointSet>(ps);
  f.kind = kind;
  f.norm = norm;
  f.spec = spec;
  f.ancestor.assign(ps.size(), npos);
  f.censored.assign(ps.size(), 0);
  f.children.assign(ps.size(), 0);
  return f;
}

void count_children(Forest& f) {
  std::fill(f.children.begin(), f.children.end(), 0u);
  for (std::size_t v = 0; v < f.size(); ++v)
    if (f.ancestor[v] != npos) ++f.children[f.ancestor[v]];
}

ForestKind classify(const GreedySpec& spec) {
  if (spec.level.kind == Level::Kind::radial_l2 && spec.cost == Norm::l2) return ForestKind::rst;
  if (spec.level.kind == Level::Kind::radial_linf && spec.cost == Norm::linf) return ForestKind::rst;
  if (spec.level.kind == Level::Kind::coordinate && spec.cost == Norm::l2) return ForestKind::dsf;
  return ForestKind::greedy;
}

PointSet merge_scene(const ClusterScene& scene) {
  PointSet merged = scene.heads;
  merged.points.insert(merged.points.end(), scene.nodes.points.begin(), scene.nodes.points.end());
  merged.intensity = scene.heads.intensity + scene.nodes.intensity;
  return merged;
}

double grid_side(double intensity) { return intensity > 0.0 ? 1.0 / std::sqrt(intensity) : 1.0; }

}  // namespace

std::string to_string(ForestKind k) {
  switch (k) {
    case ForestKind::rst: return "rst";
    case ForestKind::dsf: return "dsf";
    case ForestKind::greedy: return "greedy";
    case ForestKind::voronoi_internal: return "voronoi_internal";
    case ForestKind::voronoi_local: return "voronoi_local";
  }
  return "?";
}

ForestKind parse_forest_kind(const std::string& s) {
  if (s == "rst") return ForestKind::rst;
  if (s == "dsf") return ForestKind::dsf;
  if (s == "greedy") return ForestKind::greedy;
  if (s == "voronoi_internal") return ForestKind::voronoi_internal;
  if (s == "voronoi_local") return ForestKind::voronoi_local;
  throw std::invalid_argument("unknown forest kind '" + s + "'");
}

double Forest::edge_length(std::size_t v) const {
  if (ancestor[v] == npos) return 0.0;
  return length(norm, position(v) - position(ancestor[v]));
}

std::size_t Forest::edge_count() const {
  std::size_t n = 0;
  for (std::size_t a : ancestor) n += a != npos;
  return n;
}

std::size_t Forest::root_count() const {
  std::size_t n = 0;
  for (std::size_t v = 0; v < size(); ++v) n += is_root(v);
  return n;
}

std::size_t Forest::censored_count() const {
  std::size_t n = 0;
  for (auto c : censored) n += c;
  return n;
}

GridIndex make_grid(const PointSet& ps) { return GridIndex(ps.points, grid_side(ps.intensity)); }

AncestorResult greedy_ancestor(const PointSet& ps, const GridIndex& grid, std::size_t v, const GreedySpec& spec) {
  const Vec2 x = ps.points[v];
  const double lx = spec.level(x);
  const auto& pts = ps.points;
  const Candidate best = grid.nearest(x, spec.cost, [&](std::size_t j) { return spec.level(pts[j]) < lx; }, v);
  if (!certified(ps, x, spec, best)) return {npos, true};
  return {best.index, false};
}

Forest build_greedy(const PointSet& ps, const GreedySpec& spec) {
  Forest f = empty_forest(ps, classify(spec), spec.cost, spec);
  const GridIndex grid = make_grid(*f.points);
  for (std::size_t v = 0; v < f.size(); ++v) {
    const AncestorResult r = greedy_ancestor(*f.points, grid, v, spec);
    f.ancestor[v] = r.index;
    f.censored[v] = r.censored;
  }
  count_children(f);
  return f;
}

Forest build_rst(const PointSet& ps, Norm norm) {
  if (!ps.has_origin) throw std::invalid_argument("build_rst needs a point set containing the origin");
  return build_greedy(ps, {Level::radial(norm), norm});
}

Forest build_dsf(const PointSet& ps, Vec2 direction) {
  const double n = norm2(direction);
  if (!(n > 0.0)) throw std::invalid_argument("DSF direction must be nonzero");
  return build_greedy(ps, {Level::along((1.0 / n) * direction), Norm::l2});
}

Forest brute_force_greedy(const PointSet& ps, const GreedySpec& spec) {
  Forest f = empty_forest(ps, classify(spec), spec.cost, spec);
  const auto& pts = ps.points;
  for (std::size_t v = 0; v < pts.size(); ++v) {
    const double lv = spec.level(pts[v]);
    Candidate best;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != v && spec.level(pts[j]) < lv) best.offer(cost(spec.cost, pts[v], pts[j]), j);
    if (certified(ps, pts[v], spec, best)) {
      f.ancestor[v] = best.index;
    } else {
      f.censored[v] = 1;
    }
  }
  count_children(f);
  return f;
}

ClusterScene sample_cluster_scene(double lambda0, double lambda1, double radius, std::uint64_t seed,
                                  std::uint32_t replicate_id) {
  ClusterScene scene;
  PointSet heads = sample_poisson_disk(lambda0, radius, {}, seed, replicate_id, Stream::heads);
  scene.heads = heads;
  scene.heads.points.assign(1, Vec2{});
  scene.heads.points.insert(scene.heads.points.end(), heads.points.begin(), heads.points.end());
  scene.heads.has_origin = true;
  scene.nodes = sample_poisson_disk(lambda1, radius, {}, seed, replicate_id, Stream::nodes);
  return scene;
}

namespace {

enum class VoronoiRule { local, internal };

Forest build_voronoi(const ClusterScene& scene, VoronoiRule rule, bool brute) {
  if (scene.heads.points.empty()) throw std::invalid_argument("Voronoi forests need at least one head");
  const PointSet merged = merge_scene(scene);
  const ForestKind kind = rule == VoronoiRule::local ? ForestKind::voronoi_local : ForestKind::voronoi_internal;
  Forest f = empty_forest(merged, kind, Norm::l2, {Level::radial(Norm::l2), Norm::l2});
  const std::size_t nh = scene.heads.size();
  f.head_count = nh;
  f.cell.assign(merged.size(), npos);
  for (std::size_t h = 0; h < nh; ++h) f.cell[h] = h;

  const auto& heads = scene.heads.points;
  const auto& nodes = scene.nodes.points;
  const Window& w = merged.window;
  GridIndex head_grid, node_grid;
  if (!brute) {
    head_grid = GridIndex(heads, grid_side(scene.heads.intensity));
    node_grid = GridIndex(nodes, grid_side(scene.nodes.intensity));
  }

  std::vector<double> rho_sq(nodes.size());
  std::vector<std::size_t> node_cell(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    Candidate h;
    if (brute) {
      for (std::size_t k = 0; k < nh; ++k) h.offer(cost(Norm::l2, nodes[j], heads[k]), k);
    } else {
      h = head_grid.nearest(nodes[j], Norm::l2, [](std::size_t) { return true; });
    }
    node_cell[j] = h.index;
    rho_sq[j] = h.cost;
    f.cell[nh + j] = h.index;
  }

  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const Vec2 x = nodes[j];
    const Vec2 t = heads[node_cell[j]];
    const double rho = std::sqrt(rho_sq[j]);
    const bool ok = rule == VoronoiRule::local ? w.contains_ball(x, rho, Norm::l2)
                                               : w.contains_ball(t, 2.0 * rho, Norm::l2);
    if (!ok) {
      f.censored[nh + j] = 1;
      continue;
    }
    auto eligible = [&](std::size_t k) {
      if (rule == VoronoiRule::internal && node_cell[k] != node_cell[j]) return false;
      return cost(Norm::l2, t, nodes[k]) < rho_sq[j];
    };
    Candidate best;
    best.offer(rho_sq[j], node_cell[j]);  // the head itself, at merged index < nh
    Candidate nb;
    if (brute) {
      for (std::size_t k = 0; k < nodes.size(); ++k)
        if (k != j && eligible(k)) nb.offer(cost(Norm::l2, x, nodes[k]), k);
    } else {
      nb = node_grid.nearest(x, Norm::l2, eligible, j, rho_sq[j]);
    }
    if (nb.found()) best.offer(nb.cost, nh + nb.index);
    f.ancestor[nh + j] = best.index;
  }
  count_children(f);
  return f;
}

}  // namespace

Forest build_voronoi_local(const ClusterScene& scene) { return build_voronoi(scene, VoronoiRule::local, false); }
Forest build_voronoi_internal(const ClusterScene& scene) {
  return build_voronoi(scene, VoronoiRule::internal, false);
}
Forest brute_force_voronoi_local(const ClusterScene& scene) { return build_voronoi(scene, VoronoiRule::local, true); }
Forest brute_force_voronoi_internal(const ClusterScene& scene) {
  return build_voronoi(scene, VoronoiRule::internal, true);
}

std::uint32_t degree(const Forest& f, std::size_t v) {
  if (v >= f.size()) throw std::out_of_range("vertex " + std::to_string(v) + " is not in the forest");
  return f.children[v] + (f.ancestor[v] != npos ? 1u : 0u);
}

std::vector<std::int64_t> generations(const Forest& f) {
  constexpr std::int64_t unknown = -2;
  std::vector<std::int64_t> gen(f.size(), unknown);
  std::vector<std::size_t> stack;
  for (std::size_t v = 0; v < f.size(); ++v) {
    std::size_t u = v;
    while (gen[u] == unknown) {
      if (f.censored[u]) {
        gen[u] = -1;
        break;
      }
      if (f.ancestor[u] == npos) {
        gen[u] = 0;
        break;
      }
      stack.push_back(u);
      if (stack.size() > f.size()) {  // cycle: nothing on it has a generation
        for (std::size_t s : stack) gen[s] = -1;
        stack.clear();
        break;
      }
      u = f.ancestor[u];
    }
    std::int64_t g = gen[u];
    while (!stack.empty()) {
      const std::size_t s = stack.back();
      stack.pop_back();
      g = g < 0 ? -1 : g + 1;
      gen[s] = g;
    }
  }
  return gen;
}

std::vector<std::size_t> generation_set(const Forest& f, std::int64_t k) {
  const auto gen = generations(f);
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < gen.size(); ++v)
    if (gen[v] >= 0 && gen[v] <= k) out.push_back(v);
  return out;
}

std::size_t crossing_count(const Forest& f, double x) {
  std::size_t c = 0;
  for (std::size_t v = 0; v < f.size(); ++v) {
    if (f.ancestor[v] == npos) continue;
    const bool in_v = length(f.norm, f.position(v)) <= x;
    const bool in_a = length(f.norm, f.position(f.ancestor[v])) <= x;
    c += in_v != in_a;
  }
  return c;
}

std::size_t cycle_vertex_count(const Forest& f) {
  // 0 unvisited, 1 on the current walk, 2 reaches a root or censored vertex, 3 feeds a cycle.
  std::vector<std::uint8_t> state(f.size(), 0);
  std::vector<std::size_t> walk;
  std::size_t bad = 0;
  for (std::size_t v = 0; v < f.size(); ++v) {
    std::size_t u = v;
    std::uint8_t outcome = 2;
    while (true) {
      if (state[u] == 2 || state[u] == 3) {
        outcome = state[u];
        break;
      }
      if (state[u] == 1) {
        outcome = 3;
        break;
      }
      state[u] = 1;
      walk.push_back(u);
      if (f.ancestor[u] == npos) break;
      u = f.ancestor[u];
    }
    for (std::size_t s : walk) state[s] = outcome;
    if (outcome == 3) bad += walk.size();
    walk.clear();
  }
  return bad;
}

std::vector<std::size_t> void_condition_violations(const Forest& f) {
  std::vector<std::size_t> bad;
  const auto& pts = f.points->points;
  for (std::size_t v = 0; v < f.size(); ++v) {
    const std::size_t a = f.ancestor[v];
    if (a == npos) continue;
    const double rx = length(f.norm, pts[v]);
    const double ra = length(f.norm, pts[v] - pts[a]);
    for (std::size_t z = 0; z < pts.size(); ++z) {
      if (z == v || z == a) continue;
      if (!(length(f.norm, pts[z]) < rx)) continue;
      const double rz = length(f.norm, pts[v] - pts[z]);
      if (rz < ra || (rz == ra && z < a)) {
        bad.push_back(v);
        break;
      }
    }
  }
  return bad;
}

void write_forest_csv(std::ostream& os, const Forest& f) {
  os << "child_id,parent_id,length,censored\n";
  for (std::size_t v = 0; v < f.size(); ++v) {
    os << v << ',';
    if (f.ancestor[v] == npos)
      os << -1;
    else
      os << f.ancestor[v];
    os << ',' << format_double(f.edge_length(v)) << ',' << (f.censored[v] ? 1 : 0) << '\n';
  }
}

}  // namespace rst
