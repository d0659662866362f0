#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "rst/forest.hpp"
#include "rst/statistics.hpp"

namespace rst {

/// An ancestor path X_0, X_1, ..., X_H.
struct PathTrace {
  enum class Kind { radial, directed };
  Kind kind = Kind::radial;
  Vec2 direction{-1.0, 0.0};        // directed only
  std::vector<std::size_t> vertices;  // npos for points drawn from an unbounded field
  std::vector<Vec2> positions;
  std::vector<Vec2> edges;        // U_k = X_{k-1} - X_k, k = 1..H
  std::vector<Vec2> frame_edges;  // U_k in the frame where the forward axis is +x
  std::vector<double> progress;   // |X_{k-1}| - |X_k| (radial) or <X_k - X_{k-1}, d> (directed)
  bool censored = false;

  std::size_t hop_count() const { return edges.size(); }
};

PathTrace radial_path(const Forest& f, std::size_t v);
PathTrace directed_path(const Forest& f, std::size_t v, std::size_t max_hops);

/// Follows a DSF path through an unbounded Poisson field for `steps` hops.
PathTrace walk_directed(PoissonField& field, Vec2 start, std::size_t steps, Vec2 direction = {-1.0, 0.0});

/// Largest |transverse coordinate| along the path: for radial paths after
/// rotating X_0 onto the positive x-axis, for directed paths relative to the
/// line through X_0 along the direction.
double max_deviation(const PathTrace& t);

struct XiState {
  std::vector<double> xi;                 // xi[n] for n >= 1 (xi[0] unused)
  std::vector<std::size_t> markov_times;  // indices m >= 2 with P_m >= xi_m
};

/// One step of the recursion, clamped at zero.
double xi_step(double xi, double progress, double length);

/// Runs the xi recursion along a directed path.
XiState xi_sequence(const PathTrace& t);

/// Same indices computed from the discs B(T_k, L_k) directly: m is recorded
/// when no disc with k <= m - 1 reaches past the hyperplane through T_{m+1}.
std::vector<std::size_t> markov_times_geometric(const PathTrace& t);

struct PathConstants {
  Estimate p;
  Estimate p_y;
  std::map<double, Estimate> l_alpha;
  std::int64_t n_transitions = 0;
};

/// Cesaro averages along one DSF path of `n_transitions` hops from the origin
/// of a Palm field, with batch-means intervals.
PathConstants estimate_path_constants(std::int64_t n_transitions, std::uint64_t seed,
                                      const std::vector<double>& alphas = {0.5, 1.0, 2.0},
                                      std::uint32_t replicate_id = 0);

/// Functions of an edge (in the forward frame) whose long-run average is pi(g).
struct EdgeFunction {
  enum class Kind { progress, abs_transverse, length_pow, constant, box };
  Kind kind = Kind::progress;
  double alpha = 1.0;                           // length_pow
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;  // box

  double operator()(Vec2 u) const;
};

Estimate edge_measure_estimate(const EdgeFunction& g, std::int64_t n_transitions, std::uint64_t seed,
                               std::uint32_t replicate_id = 0);
Estimate edge_measure_estimate(const EdgeFunction& g, const PathTrace& t);

struct HopRatio {
  Estimate ratio;           // H(X) / |X|
  Estimate frame_progress;  // per-path mean of the forward-frame progress
  std::int64_t paths = 0;
};

/// Radial paths from X = (r, 0) in Palm samples of the disk of radius r + 1;
/// the path depends only on points of B(O, r), so no censoring occurs.
HopRatio hop_ratio(double r, std::int64_t replicates, std::uint64_t seed, double lambda = 1.0,
                   std::uint32_t first_replicate = 0);

struct DominationResult {
  bool ok = true;
  std::size_t violations = 0;
  double worst_excess = 0.0;  // max of y(t) - yhat(t) over checked abscissae
  bool complete = true;       // false if the directed path was censored before covering the radial one
};

/// Compares the RST path from X = (x, 0) with the -e_x DSF path from X built
/// on the points with y >= 0; y(t) <= yhat(t) is checked at every breakpoint.
DominationResult domination_check(const PointSet& ps, double x);

/// Radial path only (no full forest), through a prebuilt grid on `ps`.
PathTrace radial_path_query(const PointSet& ps, const GridIndex& grid, std::size_t v, Norm norm = Norm::l2);

/// CSV `hop,x,y,edge_len,progress`; row 0 is the start with zero length and progress.
void write_path_csv(std::ostream& os, const PathTrace& t);

}  // namespace rst
