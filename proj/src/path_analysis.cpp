#include "rst/path_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "rst/format.hpp"
#include "rst/parallel.hpp"

namespace rst {
namespace {

void fill_derived(PathTrace& t, Norm norm = Norm::l2) {
  t.edges.clear();
  t.frame_edges.clear();
  t.progress.clear();
  for (std::size_t k = 1; k < t.positions.size(); ++k) {
    const Vec2 prev = t.positions[k - 1], cur = t.positions[k];
    const Vec2 u = prev - cur;
    t.edges.push_back(u);
    if (t.kind == PathTrace::Kind::radial) {
      t.frame_edges.push_back(to_frame_of(u, prev));
      t.progress.push_back(length(norm, prev) - length(norm, cur));
    } else {
      t.frame_edges.push_back(to_frame_of(u, -1.0 * t.direction));
      t.progress.push_back(dot(cur - prev, t.direction));
    }
  }
}

// Nearest field point strictly further along `d` than q.
Vec2 field_ancestor(PoissonField& field, Vec2 q, Vec2 d) {
  const double s = field.cell_side();
  const auto cx = static_cast<std::int64_t>(std::floor(q.x / s));
  const auto cy = static_cast<std::int64_t>(std::floor(q.y / s));
  const double lq = dot(q, d);
  double best = std::numeric_limits<double>::infinity();
  Vec2 best_pos{};
  auto visit = [&](std::int64_t i, std::int64_t j) {
    // Skip cells lying entirely on or behind the hyperplane through q.
    const double x0 = static_cast<double>(i) * s, y0 = static_cast<double>(j) * s;
    const double reach = std::max({dot({x0, y0}, d), dot({x0 + s, y0}, d), dot({x0, y0 + s}, d), dot({x0 + s, y0 + s}, d)});
    if (reach <= lq) return;
    for (const Vec2& y : field.cell(i, j)) {
      if (!(dot(y, d) > lq)) continue;
      const double c = norm2_sq(y - q);
      if (c < best || (c == best && (y.x < best_pos.x || (y.x == best_pos.x && y.y < best_pos.y)))) {
        best = c;
        best_pos = y;
      }
    }
  };
  for (std::int64_t k = 0;; ++k) {
    if (k == 0) {
      visit(cx, cy);
    } else {
      for (std::int64_t i = cx - k; i <= cx + k; ++i) {
        visit(i, cy - k);
        visit(i, cy + k);
      }
      for (std::int64_t j = cy - k + 1; j <= cy + k - 1; ++j) {
        visit(cx - k, j);
        visit(cx + k, j);
      }
    }
    const double lb = ring_lower_bound(q, {0.0, 0.0}, s, cx, cy, k, Norm::l2);
    if (lb > best) break;
    if (k > 100000) throw std::runtime_error("field search did not find an ancestor");
  }
  return best_pos;
}

}  // namespace

PathTrace radial_path(const Forest& f, std::size_t v) {
  if (f.kind != ForestKind::rst) throw std::invalid_argument("radial_path needs an RST");
  if (v >= f.size()) throw std::out_of_range("vertex out of range");
  PathTrace t;
  t.kind = PathTrace::Kind::radial;
  std::size_t cur = v;
  t.vertices.push_back(cur);
  t.positions.push_back(f.position(cur));
  while (f.ancestor[cur] != npos) {
    cur = f.ancestor[cur];
    t.vertices.push_back(cur);
    t.positions.push_back(f.position(cur));
    if (t.vertices.size() > f.size() + 1) throw std::logic_error("cycle in forest");
  }
  t.censored = f.censored[cur] != 0;
  fill_derived(t, f.norm);
  return t;
}

PathTrace directed_path(const Forest& f, std::size_t v, std::size_t max_hops) {
  if (f.spec.level.kind != Level::Kind::coordinate) throw std::invalid_argument("directed_path needs a directed forest");
  if (v >= f.size()) throw std::out_of_range("vertex out of range");
  PathTrace t;
  t.kind = PathTrace::Kind::directed;
  t.direction = f.spec.level.direction;
  std::size_t cur = v;
  t.vertices.push_back(cur);
  t.positions.push_back(f.position(cur));
  while (t.vertices.size() <= max_hops) {
    if (f.ancestor[cur] == npos) {
      t.censored = f.censored[cur] != 0;
      break;
    }
    cur = f.ancestor[cur];
    t.vertices.push_back(cur);
    t.positions.push_back(f.position(cur));
  }
  fill_derived(t);
  return t;
}

PathTrace radial_path_query(const PointSet& ps, const GridIndex& grid, std::size_t v, Norm norm) {
  const GreedySpec spec{Level::radial(norm), norm};
  PathTrace t;
  t.kind = PathTrace::Kind::radial;
  std::size_t cur = v;
  t.vertices.push_back(cur);
  t.positions.push_back(ps.points[cur]);
  for (;;) {
    const AncestorResult r = greedy_ancestor(ps, grid, cur, spec);
    if (r.index == npos) {
      t.censored = r.censored;
      break;
    }
    cur = r.index;
    t.vertices.push_back(cur);
    t.positions.push_back(ps.points[cur]);
  }
  fill_derived(t, norm);
  return t;
}

PathTrace walk_directed(PoissonField& field, Vec2 start, std::size_t steps, Vec2 direction) {
  const double dn = norm2(direction);
  if (!(dn > 0.0)) throw std::invalid_argument("direction must be nonzero");
  const Vec2 d = (1.0 / dn) * direction;
  PathTrace t;
  t.kind = PathTrace::Kind::directed;
  t.direction = d;
  t.positions.reserve(steps + 1);
  t.positions.push_back(start);
  t.vertices.push_back(npos);
  const bool evictable = d.x == -1.0 && d.y == 0.0;
  Vec2 cur = start;
  for (std::size_t k = 0; k < steps; ++k) {
    cur = field_ancestor(field, cur, d);
    t.positions.push_back(cur);
    t.vertices.push_back(npos);
    if (evictable && k % 256 == 255)
      field.evict_columns_above(static_cast<std::int64_t>(std::floor(cur.x / field.cell_side())) + 1);
  }
  fill_derived(t);
  return t;
}

double max_deviation(const PathTrace& t) {
  if (t.positions.empty()) return 0.0;
  const Vec2 x0 = t.positions.front();
  double worst = 0.0;
  if (t.kind == PathTrace::Kind::radial) {
    for (const Vec2& p : t.positions) worst = std::max(worst, std::abs(to_frame_of(p, x0).y));
  } else {
    const Vec2 perp{-t.direction.y, t.direction.x};
    for (const Vec2& p : t.positions) worst = std::max(worst, std::abs(dot(p - x0, perp)));
  }
  return worst;
}

double xi_step(double xi, double progress, double length) {
  return std::max(0.0, std::max(xi - progress, length - progress));
}

XiState xi_sequence(const PathTrace& t) {
  if (t.kind != PathTrace::Kind::directed) throw std::invalid_argument("xi_sequence needs a directed path");
  if (t.hop_count() == 0) throw std::invalid_argument("xi_sequence needs a path with at least one hop");
  // Edge i joins T_i to T_{i+1}: L_i = |U_{i+1}|, P_i its progress.
  const std::size_t h = t.hop_count();
  auto L = [&](std::size_t i) { return norm2(t.edges[i]); };
  auto P = [&](std::size_t i) { return t.progress[i]; };
  XiState s;
  s.xi.assign(h, 0.0);
  if (h < 2) return s;
  s.xi[1] = std::max(0.0, L(0) - P(0));
  for (std::size_t n = 1; n + 1 < h; ++n) s.xi[n + 1] = xi_step(s.xi[n], P(n), L(n));
  for (std::size_t m = 2; m < h; ++m)
    if (P(m) >= s.xi[m]) s.markov_times.push_back(m);
  return s;
}

std::vector<std::size_t> markov_times_geometric(const PathTrace& t) {
  if (t.kind != PathTrace::Kind::directed) throw std::invalid_argument("needs a directed path");
  const std::size_t h = t.hop_count();
  const Vec2 d = t.direction;
  std::vector<std::size_t> out;
  // The disc B(T_k, L_k) reaches the open half-space {<Y, d> > c} iff <T_k, d> + L_k > c.
  double reach = -std::numeric_limits<double>::infinity();
  for (std::size_t m = 2; m < h; ++m) {
    if (m == 2) {
      for (std::size_t k = 0; k <= 1; ++k)
        reach = std::max(reach, dot(t.positions[k], d) + norm2(t.positions[k + 1] - t.positions[k]));
    } else {
      reach = std::max(reach, dot(t.positions[m - 1], d) + norm2(t.positions[m] - t.positions[m - 1]));
    }
    if (!(reach > dot(t.positions[m + 1], d))) out.push_back(m);
  }
  return out;
}

double EdgeFunction::operator()(Vec2 u) const {
  switch (kind) {
    case Kind::progress: return u.x;
    case Kind::abs_transverse: return std::abs(u.y);
    case Kind::length_pow: return alpha == 0.0 ? 1.0 : std::pow(norm2(u), alpha);
    case Kind::constant: return 1.0;
    case Kind::box: return (u.x >= x0 && u.x < x1 && u.y >= y0 && u.y < y1) ? 1.0 : 0.0;
  }
  return 0.0;
}

Estimate edge_measure_estimate(const EdgeFunction& g, const PathTrace& t) {
  std::vector<double> series;
  series.reserve(t.frame_edges.size());
  for (const Vec2& u : t.frame_edges) series.push_back(g(u));
  return batch_means(series);
}

Estimate edge_measure_estimate(const EdgeFunction& g, std::int64_t n_transitions, std::uint64_t seed,
                               std::uint32_t replicate_id) {
  if (n_transitions < 1000) throw std::invalid_argument("need at least 1000 transitions");
  PoissonField field(1.0, seed, replicate_id);
  const PathTrace t = walk_directed(field, {0.0, 0.0}, static_cast<std::size_t>(n_transitions));
  return edge_measure_estimate(g, t);
}

PathConstants estimate_path_constants(std::int64_t n_transitions, std::uint64_t seed, const std::vector<double>& alphas,
                                      std::uint32_t replicate_id) {
  if (n_transitions < 1000) throw std::invalid_argument("need at least 1000 transitions");
  PoissonField field(1.0, seed, replicate_id);
  const PathTrace t = walk_directed(field, {0.0, 0.0}, static_cast<std::size_t>(n_transitions));
  PathConstants c;
  c.n_transitions = n_transitions;
  c.p = edge_measure_estimate({EdgeFunction::Kind::progress}, t);
  c.p_y = edge_measure_estimate({EdgeFunction::Kind::abs_transverse}, t);
  for (double a : alphas) {
    EdgeFunction g{EdgeFunction::Kind::length_pow};
    g.alpha = a;
    c.l_alpha[a] = edge_measure_estimate(g, t);
  }
  return c;
}

HopRatio hop_ratio(double r, std::int64_t replicates, std::uint64_t seed, double lambda, std::uint32_t first_replicate) {
  if (!(r > 0.0)) throw std::invalid_argument("hop ratio needs r > 0");
  if (replicates < 1) throw std::invalid_argument("hop ratio needs at least one replicate");
  std::vector<double> ratio(static_cast<std::size_t>(replicates)), prog(ratio.size());
  parallel_for(ratio.size(), [&](std::size_t i) {
    SamplerConfig cfg;
    cfg.intensity = lambda;
    cfg.window_radius = r + 1.0;
    cfg.seed = seed;
    std::size_t ix = 0;
    const PointSet ps = with_point(sample_palm_poisson(cfg, first_replicate + static_cast<std::uint32_t>(i)), {r, 0.0}, &ix);
    const GridIndex grid = make_grid(ps);
    const PathTrace t = radial_path_query(ps, grid, ix);
    ratio[i] = static_cast<double>(t.hop_count()) / r;
    double s = 0.0;
    for (const Vec2& u : t.frame_edges) s += u.x;
    prog[i] = t.hop_count() ? s / static_cast<double>(t.hop_count()) : 0.0;
  });
  RunningStats a, b;
  for (std::size_t i = 0; i < ratio.size(); ++i) {
    a.add(ratio[i]);
    b.add(prog[i]);
  }
  return {iid_estimate(a), iid_estimate(b), replicates};
}

DominationResult domination_check(const PointSet& ps, double x) {
  if (!ps.has_origin) throw std::invalid_argument("domination check needs a Palm sample");
  if (!(x > 0.0)) throw std::invalid_argument("domination check needs x > 0");
  std::size_t ix = 0;
  const PointSet full = with_point(ps, {x, 0.0}, &ix);
  const GridIndex grid = make_grid(full);
  const PathTrace radial = radial_path_query(full, grid, ix);
  double min_x = x;
  for (const Vec2& p : radial.positions) min_x = std::min(min_x, p.x);

  // Same sample with every point below the line OX removed.
  PointSet upper = full;
  upper.points.clear();
  std::size_t ux = npos;
  for (std::size_t i = 0; i < full.size(); ++i) {
    if (full.points[i].y < 0.0) continue;
    if (i == ix) ux = upper.points.size();
    upper.points.push_back(full.points[i]);
  }
  const GridIndex ugrid = make_grid(upper);
  const GreedySpec dsf{Level::along({-1.0, 0.0}), Norm::l2};
  std::vector<Vec2> hat{upper.points[ux]};
  bool censored = false;
  std::size_t cur = ux;
  while (hat.back().x > min_x) {
    const AncestorResult r = greedy_ancestor(upper, ugrid, cur, dsf);
    if (r.index == npos) {
      censored = true;
      break;
    }
    cur = r.index;
    hat.push_back(upper.points[cur]);
  }

  DominationResult res;
  const double t_lo = hat.back().x;
  res.complete = !(censored && t_lo > min_x);
  const double tol = 1e-9 * (1.0 + x);

  // hat has strictly decreasing abscissae, so yhat is a function of t.
  auto yhat = [&](double t) {
    std::size_t lo = 0, hi = hat.size() - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      if (hat[mid].x >= t)
        lo = mid;
      else
        hi = mid;
    }
    const Vec2 a = hat[lo], b = hat[hi];
    if (a.x == t || a.x == b.x) return a.y;
    return a.y + (b.y - a.y) * (a.x - t) / (a.x - b.x);
  };

  std::vector<double> ts;
  for (std::size_t k = 1; k < radial.positions.size(); ++k) {
    const Vec2 a = radial.positions[k - 1], b = radial.positions[k];
    const double lo = std::max(std::min(a.x, b.x), t_lo);
    const double hi = std::min(std::max(a.x, b.x), x);
    if (lo > hi) continue;
    ts.assign({lo, hi});
    for (const Vec2& h : hat)
      if (h.x > lo && h.x < hi) ts.push_back(h.x);
    for (double t : ts) {
      double y;
      if (a.x == b.x) {
        y = std::max(a.y, b.y);
      } else {
        y = a.y + (b.y - a.y) * (a.x - t) / (a.x - b.x);
      }
      const double excess = std::max(0.0, y) - yhat(t);
      res.worst_excess = std::max(res.worst_excess, excess);
      if (excess > tol) ++res.violations;
    }
  }
  res.ok = res.violations == 0;
  return res;
}

void write_path_csv(std::ostream& os, const PathTrace& t) {
  os << "hop,x,y,edge_len,progress\n";
  for (std::size_t k = 0; k < t.positions.size(); ++k) {
    const double len = k == 0 ? 0.0 : norm2(t.edges[k - 1]);
    const double prog = k == 0 ? 0.0 : t.progress[k - 1];
    os << k << ',' << format_double(t.positions[k].x) << ',' << format_double(t.positions[k].y) << ','
       << format_double(len) << ',' << format_double(prog) << '\n';
  }
}

}  // namespace rst
