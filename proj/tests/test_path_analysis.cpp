#include <cmath>
#include <sstream>

#include "doctest.h"
#include "rst/path_analysis.hpp"

using namespace rst;

namespace {

PointSet plane_set(std::vector<Vec2> pts, bool origin = true) {
  PointSet ps;
  ps.points = std::move(pts);
  ps.has_origin = origin;
  ps.window = Window::plane();
  return ps;
}

// m is a Markovian time when no disc B(T_k, |T_{k+1} - T_k|), k <= m - 1,
// reaches beyond the line through T_{m+1} orthogonal to d.
std::vector<std::size_t> disc_oracle(const PathTrace& t) {
  std::vector<std::size_t> out;
  const Vec2 d = t.direction;
  for (std::size_t m = 2; m + 1 < t.positions.size(); ++m) {
    bool clear = true;
    for (std::size_t k = 0; k + 1 <= m; ++k) {
      const double reach = dot(t.positions[k], d) + norm2(t.positions[k + 1] - t.positions[k]);
      if (reach > dot(t.positions[m + 1], d)) clear = false;
    }
    if (clear) out.push_back(m);
  }
  return out;
}

}  // namespace

TEST_SUITE("path_analysis") {

TEST_CASE("xi recursion steps") {
  CHECK(xi_step(1.0, 0.4, 0.9) == doctest::Approx(0.6));
  CHECK(xi_step(0.2, 0.5, 0.3) == 0.0);
  CHECK(xi_step(0.0, 0.1, 0.8) == doctest::Approx(0.7));
}

TEST_CASE("radial path on a chain ends at the origin") {
  const Forest f = build_rst(plane_set({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}}));
  const PathTrace t = radial_path(f, 3);
  CHECK(t.vertices == std::vector<std::size_t>{3, 2, 1, 0});
  CHECK(t.hop_count() == 3);
  double sum = 0.0;
  for (double p : t.progress) sum += p;
  CHECK(sum == doctest::Approx(3.0));
  CHECK(max_deviation(t) == 0.0);
  CHECK_FALSE(t.censored);
}

TEST_CASE("radial path deviation and frame") {
  const Forest f = build_rst(plane_set({{0.0, 0.0}, {0.0, 4.0}, {1.5, 2.0}}));
  const PathTrace t = radial_path(f, 1);
  REQUIRE(t.vertices == std::vector<std::size_t>{1, 2, 0});
  CHECK(max_deviation(t) == doctest::Approx(1.5));
  // First edge U_1 = X_0 - X_1 = (-1.5, 2): forward component 2, transverse 1.5.
  CHECK(std::abs(t.frame_edges[0].x) == doctest::Approx(2.0));
  CHECK(std::abs(t.frame_edges[0].y) == doctest::Approx(1.5));
  CHECK(t.progress[0] == doctest::Approx(1.5));
  CHECK(t.progress[1] == doctest::Approx(2.5));
}

TEST_CASE("radial path needs an RST") {
  const Forest d = build_dsf(plane_set({{0.0, 0.0}, {1.0, 0.0}}));
  CHECK_THROWS_AS(radial_path(d, 1), std::invalid_argument);
}

TEST_CASE("grid query path equals the forest path") {
  SamplerConfig c;
  c.window_radius = 15.0;
  c.seed = 3;
  const PointSet ps = sample_palm_poisson(c);
  const Forest f = build_rst(ps);
  const GridIndex g = make_grid(ps);
  for (std::size_t v = 1; v < ps.size(); v += 37) CHECK(radial_path_query(ps, g, v).vertices == radial_path(f, v).vertices);
}

TEST_CASE("directed paths move forward and respect the hop limit") {
  std::vector<Vec2> pts;
  for (int i = 0; i < 10; ++i) pts.push_back({static_cast<double>(-i), (i % 2) * 0.5});
  const Forest f = build_dsf(plane_set(pts, false));
  const PathTrace t = directed_path(f, 0, 4);
  CHECK(t.hop_count() == 4);
  for (double p : t.progress) CHECK(p > 0.0);
  CHECK(directed_path(f, 0, 100).hop_count() == 9);
}

TEST_CASE("walk through the unbounded field") {
  PoissonField field(1.0, 17, 0);
  const PathTrace t = walk_directed(field, {0.0, 0.0}, 2000);
  CHECK(t.hop_count() == 2000);
  CHECK(t.kind == PathTrace::Kind::directed);
  for (std::size_t k = 0; k < t.hop_count(); ++k) {
    REQUIRE(t.progress[k] > 0.0);
    REQUIRE(t.positions[k + 1].x < t.positions[k].x);
  }
  PoissonField again(1.0, 17, 0);
  CHECK(walk_directed(again, {0.0, 0.0}, 2000).positions == t.positions);
}

TEST_CASE("xi recursion agrees with the disc test") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    PoissonField field(1.0, 100 + s, 0);
    const PathTrace t = walk_directed(field, {0.0, 0.0}, 200);
    const XiState x = xi_sequence(t);
    for (double v : x.xi) REQUIRE(v >= 0.0);
    const auto want = disc_oracle(t);
    REQUIRE(x.markov_times == want);
    REQUIRE(markov_times_geometric(t) == want);
  }
}

TEST_CASE("gaps between Markovian times have a light tail") {
  PoissonField field(1.0, 5, 0);
  const XiState x = xi_sequence(walk_directed(field, {0.0, 0.0}, 20000));
  REQUIRE(x.markov_times.size() > 100);
  std::size_t over5 = 0, over20 = 0, worst = 0;
  for (std::size_t i = 1; i < x.markov_times.size(); ++i) {
    const std::size_t g = x.markov_times[i] - x.markov_times[i - 1];
    over5 += g > 5;
    over20 += g > 20;
    worst = std::max(worst, g);
  }
  CHECK(over20 * 4 < over5 + 4);
  CHECK(worst < 500);
}

TEST_CASE("edge functions and long-run averages") {
  EdgeFunction one;
  one.kind = EdgeFunction::Kind::constant;
  const Estimate e = edge_measure_estimate(one, 2000, 1);
  CHECK(e.value == doctest::Approx(1.0));
  CHECK(e.se == doctest::Approx(0.0));
  EdgeFunction box;
  box.kind = EdgeFunction::Kind::box;
  box.x0 = 0.0;
  box.x1 = 1.0;
  box.y0 = -1.0;
  box.y1 = 1.0;
  CHECK(box({0.5, 0.0}) == 1.0);
  CHECK(box({1.5, 0.0}) == 0.0);
  EdgeFunction pow2;
  pow2.kind = EdgeFunction::Kind::length_pow;
  pow2.alpha = 2.0;
  CHECK(pow2({3.0, 4.0}) == doctest::Approx(25.0));
  CHECK_THROWS_AS(estimate_path_constants(999, 1), std::invalid_argument);
}

TEST_CASE("path constants are reproducible and plausible") {
  const PathConstants a = estimate_path_constants(5000, 9), b = estimate_path_constants(5000, 9);
  CHECK(a.p.value == b.p.value);
  CHECK(a.n_transitions == 5000);
  CHECK(a.p.value > 0.4);
  CHECK(a.p.value < 0.6);
  REQUIRE(a.l_alpha.count(1.0) == 1);
  CHECK(a.l_alpha.at(1.0).value > a.p.value);
}

TEST_CASE("hop ratio is deterministic and near its limit") {
  const HopRatio a = hop_ratio(15.0, 40, 3), b = hop_ratio(15.0, 40, 3);
  CHECK(a.ratio.value == b.ratio.value);
  CHECK(a.paths == 40);
  CHECK(a.ratio.value > 1.5);
  CHECK(a.ratio.value < 2.6);
}

TEST_CASE("radial path is dominated by the upper half-plane DSF path") {
  SamplerConfig c;
  c.window_radius = 25.0;
  for (std::uint32_t r = 0; r < 10; ++r) {
    c.seed = 40 + r;
    const DominationResult d = domination_check(sample_palm_poisson(c), 20.0);
    CHECK(d.ok);
    CHECK(d.violations == 0);
  }
}

TEST_CASE("path CSV") {
  const Forest f = build_rst(plane_set({{0.0, 0.0}, {0.0, 4.0}, {1.5, 2.0}}));
  std::ostringstream os;
  write_path_csv(os, radial_path(f, 1));
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "hop,x,y,edge_len,progress");
  std::getline(in, line);
  CHECK(line == "0,0,4,0,0");
  std::getline(in, line);
  CHECK(line == "1,1.5,2,2.5,1.5");
}

}
