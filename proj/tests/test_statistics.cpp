#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "rst/statistics.hpp"

using namespace rst;

namespace {

PointSet plane_set(std::vector<Vec2> pts) {
  PointSet ps;
  ps.points = std::move(pts);
  ps.has_origin = true;
  ps.window = Window::plane();
  return ps;
}

}  // namespace

TEST_SUITE("statistics") {

TEST_CASE("empirical tails on a small sample") {
  const EmpiricalDist d = EmpiricalDist::from_samples({3.0, 1.0, 2.0});
  CHECK(empirical_ccdf(d, 2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(empirical_ccdf_right(d, 2.0) == doctest::Approx(1.0 / 3.0));
  CHECK(empirical_ccdf(d, 0.0) == 1.0);
  CHECK(empirical_ccdf(d, 3.5) == 0.0);
}

TEST_CASE("atoms are kept apart from the continuous samples") {
  const EmpiricalDist d = EmpiricalDist::from_samples({0.2, 1.0, 0.5, 1.0, 1.0}, {1.0});
  CHECK(d.n == 5);
  CHECK(d.samples.size() == 2);
  REQUIRE(d.atoms.size() == 1);
  CHECK(d.atoms[0].second == 3);
  CHECK(empirical_ccdf(d, 1.0) == doctest::Approx(0.6));
  CHECK(empirical_ccdf_right(d, 1.0) == 0.0);
}

TEST_CASE("KS distance sees an atom jump") {
  // Reference: uniform on (0, 1) with probability 1/2, atom at 1 with probability 1/2.
  ReferenceTail ref;
  ref.ge = [](double r) { return r <= 0 ? 1.0 : r <= 1.0 ? 1.0 - 0.5 * r : 0.0; };
  ref.gt = [](double r) { return r < 0 ? 1.0 : r < 1.0 ? 1.0 - 0.5 * r : 0.0; };
  ref.atoms = {1.0};
  std::mt19937_64 g(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> good, bad;
  for (int i = 0; i < 20000; ++i) {
    good.push_back(u(g) < 0.5 ? 1.0 : u(g));
    bad.push_back(u(g) < 0.3 ? 1.0 : u(g));
  }
  CHECK(ks_distance(EmpiricalDist::from_samples(good, {1.0}), ref) < ks_threshold(20000));
  // Missing atom mass of 0.2 shows up as a distance of at least 0.2 at the atom.
  CHECK(ks_distance(EmpiricalDist::from_samples(bad, {1.0}), ref) > 0.19);
}

TEST_CASE("KS against a sample's own uniform law") {
  std::mt19937_64 g(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> s;
  for (int i = 0; i < 50000; ++i) s.push_back(u(g));
  CHECK(ks_distance_cdf(s, [](double t) { return std::clamp(t, 0.0, 1.0); }) < ks_threshold(50000));
  CHECK(ks_distance_cdf(s, [](double t) { return std::clamp(t * t, 0.0, 1.0); }) > 0.2);
  CHECK(ks_threshold(100000000) == 0.01);
  CHECK(ks_threshold(1000) > 0.01);
}

TEST_CASE("running stats merge equals pooled accumulation") {
  RunningStats a, b, all;
  for (int i = 0; i < 10; ++i) {
    a.add(i);
    all.add(i);
  }
  for (int i = 0; i < 7; ++i) {
    b.add(i * i);
    all.add(i * i);
  }
  a.merge(b);
  CHECK(a.n == all.n);
  CHECK(a.mean() == doctest::Approx(all.mean()));
  CHECK(a.variance() == doctest::Approx(all.variance()));
  RunningStats one;
  one.add(1.0);
  one.add(3.0);
  CHECK(one.variance() == doctest::Approx(2.0));
  CHECK(one.se() == doctest::Approx(1.0));
}

TEST_CASE("batch means on an autocorrelated series") {
  // AR(1) with phi = 0.9: the batch interval must cover the true mean 0.
  std::mt19937_64 g(3);
  std::normal_distribution<double> z;
  std::vector<double> x;
  double v = 0.0;
  for (int i = 0; i < 300000; ++i) x.push_back(v = 0.9 * v + z(g));
  const Estimate e = batch_means(x);
  CHECK(std::abs(e.value) < 2.0 * e.ci_halfwidth);
  // The naive standard error understates the spread by about sqrt((1+phi)/(1-phi)).
  RunningStats s;
  for (double t : x) s.add(t);
  CHECK(e.se / s.se() > 2.5);
  CHECK_THROWS_AS(batch_means({1.0, 2.0}, 30), std::invalid_argument);
}

TEST_CASE("shape statistic on a chain") {
  const Forest f = build_rst(plane_set({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}}));
  const ShapeResult r = shape_statistic(f, 2, 1.0, 0.1, 10.0);
  CHECK(r.generation_size == 3);
  CHECK(r.g_over_k2 == doctest::Approx(0.75));
  CHECK(r.sandwich);
  CHECK_FALSE(shape_statistic(f, 2, 2.0, 0.1, 10.0).sandwich);
  CHECK_THROWS_AS(shape_statistic(f, 0, 1.0, 0.1, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(shape_statistic(f, 20, 1.0, 0.1, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(shape_statistic(build_dsf(plane_set({{0.0, 0.0}})), 1, 1.0, 0.1, 10.0), std::invalid_argument);
}

TEST_CASE("spatial averages") {
  const Forest f = build_rst(plane_set({{0.0, 0.0}, {1.0, 0.0}, {0.0, 3.0}, {5.0, 0.0}}));
  CHECK(spatial_average(f, 4.0, 0.0) == doctest::Approx(2.0 / 16.0));
  CHECK(spatial_average(f, 4.0, 1.0) == doctest::Approx((1.0 + 3.0) / 16.0));
  CHECK(spatial_average(f, 5.0, 2.0) == doctest::Approx((1.0 + 9.0 + 16.0) / 25.0));
  CHECK_THROWS_AS(spatial_average(f, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("crossing intensity") {
  const Forest f = build_rst(plane_set({{0.0, 0.0}, {1.0, 0.0}, {-2.0, 0.0}}));
  CHECK(crossing_count(f, 1.5) == 1);
  CHECK(crossing_intensity(f, 1.5) == doctest::Approx(1.0 / (3.0 * kPi)));
  CHECK(crossing_from_degrees(f, 1.5) == 1);
}

TEST_CASE("regression and median") {
  CHECK(regression_slope({1.0, 2.0, 3.0}, {2.0, 4.5, 7.0}) == doctest::Approx(2.5));
  CHECK(median({5.0, 1.0, 3.0}) == 3.0);
  CHECK(median({4.0, 1.0, 3.0, 2.0}) == 2.5);
  const Estimate e = iid_estimate([] {
    RunningStats s;
    for (int i = 0; i < 100; ++i) s.add(i % 2);
    return s;
  }());
  CHECK(e.value == doctest::Approx(0.5));
  CHECK(e.ci_halfwidth == doctest::Approx(1.96 * e.se).epsilon(0.01));
}

}
