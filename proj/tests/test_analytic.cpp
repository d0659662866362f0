#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "rst/analytic.hpp"

using namespace rst;

namespace {

// Textbook area of the intersection of two disks with radii a, b at distance d.
double circle_intersection(double a, double b, double d) {
  if (d >= a + b) return 0.0;
  if (d <= std::abs(a - b)) return kPi * std::min(a, b) * std::min(a, b);
  const double ta = std::acos((d * d + a * a - b * b) / (2.0 * d * a));
  const double tb = std::acos((d * d + b * b - a * a) / (2.0 * d * b));
  const double k = std::sqrt((-d + a + b) * (d + a - b) * (d - a + b) * (d + a + b));
  return a * a * ta + b * b * tb - 0.5 * k;
}

double overlap(double lo1, double hi1, double lo2, double hi2) {
  return std::max(0.0, std::min(hi1, hi2) - std::max(lo1, lo2));
}

// Composite Simpson rule on [a, b] with n (even) panels.
template <class F>
double simpson(F&& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

TEST_SUITE("analytic") {

TEST_CASE("lens area agrees with the two-circle formula") {
  for (double x : {0.3, 1.0, 2.5, 10.0})
    for (int j = 1; j <= 20; ++j) {
      const double r = x * j / 20.0;
      CHECK(lens_area(x, r) == doctest::Approx(circle_intersection(x, r, x)).epsilon(1e-12));
    }
  CHECK(lens_area(1.0, 0.0) == 0.0);
  CHECK(lens_area(1.0, 1.0) == doctest::Approx(2.0 * kPi / 3.0 - std::sqrt(3.0) / 2.0).epsilon(1e-14));
}

TEST_CASE("lens area agrees with Monte Carlo") {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double x = 2.0, r = 1.3;
  const int n = 400000;
  int hit = 0, inside = 0;
  while (inside < n) {
    const double a = u(g), b = u(g);
    if (a * a + b * b > 1.0) continue;
    ++inside;
    const double px = x + r * a, py = r * b;
    if (px * px + py * py <= x * x) ++hit;
  }
  const double p = static_cast<double>(hit) / n;
  const double mc = kPi * r * r * p;
  const double se = kPi * r * r * std::sqrt(p * (1 - p) / n);
  CHECK(std::abs(lens_area(x, r) - mc) < 4.0 * se);
}

TEST_CASE("L-infinity lens is a rectangle intersection") {
  std::mt19937_64 g(4);
  std::uniform_real_distribution<double> u(-5.0, 5.0), v(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const Vec2 p{u(g), u(g)};
    const double a = norm_inf(p), r = a * v(g);
    const double want = overlap(-a, a, p.x - r, p.x + r) * overlap(-a, a, p.y - r, p.y + r);
    CHECK(lens_area_linf(p, r) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("lens derivative matches finite differences") {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> ux(0.2, 20.0), ur(0.02, 0.98);
  for (int i = 0; i < 100; ++i) {
    const double x = ux(g), r = x * ur(g), h = 1e-6 * x;
    const double fd = (lens_area(x, r + h) - lens_area(x, r - h)) / (2.0 * h);
    CHECK(lens_area_dr(x, r) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("edge length tail and atom") {
  const double a11 = std::exp(-(2.0 * kPi / 3.0 - std::sqrt(3.0) / 2.0));
  CHECK(a11 == doctest::Approx(0.292769).epsilon(1e-5));
  CHECK(edge_length_atom(1.0) == doctest::Approx(a11).epsilon(1e-13));
  CHECK(edge_length_ccdf(1.0, 1.0) == doctest::Approx(a11).epsilon(1e-13));
  CHECK(edge_length_ccdf_right(1.0, 1.0) == 0.0);
  CHECK(edge_length_ccdf(1.0, 0.0) == 1.0);
  CHECK(edge_length_ccdf(1.0, 1.5) == 0.0);
  for (double x : {0.5, 3.0, 8.0})
    for (int j = 1; j < 10; ++j) {
      const double r = x * j / 10.0;
      CHECK(edge_length_ccdf(x, r) == doctest::Approx(std::exp(-circle_intersection(x, r, x))).epsilon(1e-12));
      CHECK(edge_length_ccdf_right(x, r) == edge_length_ccdf(x, r));
      const double h = 1e-6 * x;
      const double fd = (edge_length_ccdf(x, r - h) - edge_length_ccdf(x, r + h)) / (2.0 * h);
      CHECK(edge_length_density(x, r) == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("mean edge length and progress") {
  for (double x : {0.5, 2.0, 6.0}) {
    const double want = simpson([&](double r) { return std::exp(-circle_intersection(x, r, x)); }, 0.0, x, 2000);
    CHECK(mean_edge_length(x).value == doctest::Approx(want).epsilon(1e-8));
    CHECK(mean_progress(x).value > 0.0);
    CHECK(mean_progress(x).value < mean_edge_length(x).value);
  }
  // Both approach the half-plane limits as x grows.
  CHECK(std::abs(mean_edge_length(50.0).value - 1.0 / std::sqrt(2.0)) < 2e-3);
  CHECK(std::abs(mean_edge_length(400.0).value - 1.0 / std::sqrt(2.0)) < 2e-4);
  CHECK(std::abs(mean_progress(400.0).value - std::sqrt(2.0) / kPi) < 2e-4);
}

TEST_CASE("joint density integrates to one") {
  for (double x : {0.5, 1.0, 5.0}) CHECK(std::abs(joint_density_total_mass(x).value - 1.0) < 1e-8);
  const JointAtom a = joint_atom(2.0, 0.7);
  CHECK(a.r == 2.0);
  CHECK(a.mass == doctest::Approx(edge_length_atom(2.0)));
  // The atom is the edge straight to the origin.
  CHECK(std::cos(a.theta - (0.7 + kPi)) == doctest::Approx(1.0));
}

TEST_CASE("joint density is rotation equivariant and vanishes outside the admissible cone") {
  const double x = 3.0, r = 1.2;
  const double psi = std::acos(r / (2.0 * x));
  for (double t : {-0.5, 0.0, 0.3}) {
    const double a = joint_density_L_theta(x, r, kPi + t, 0.0);
    const double b = joint_density_L_theta(x, r, kPi + t + 1.1, 1.1);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
    CHECK(a > 0.0);
  }
  CHECK(joint_density_L_theta(x, r, kPi + psi + 0.05) == 0.0);
}

TEST_CASE("degree means") {
  const double lens11 = 2.0 * kPi / 3.0 - std::sqrt(3.0) / 2.0;
  CHECK(mean_degree_origin() == doctest::Approx(kPi / lens11).epsilon(1e-14));
  CHECK(mean_degree_origin() == doctest::Approx(2.55753).epsilon(1e-5));
  CHECK(mean_degree_limit_integral().value == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(std::abs(mean_degree_at(30.0).value - 2.0) < 0.02);
}

TEST_CASE("asymptotic law") {
  for (double r : {0.1, 0.7, 2.0}) CHECK(asymptotic_length_ccdf(r) == doctest::Approx(std::exp(-kPi * r * r / 2)));
  CHECK(asymptotic_progress_laplace(0.0).value == doctest::Approx(1.0).epsilon(1e-10));
  const double h = 1e-4;
  const double d = (asymptotic_progress_laplace(h).value - asymptotic_progress_laplace(0.0).value) / h;
  CHECK(d == doctest::Approx(-std::sqrt(2.0) / kPi).epsilon(1e-3));
}

TEST_CASE("power-length means") {
  CHECK(lambda_alpha(1.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(lambda_alpha(2.0) == doctest::Approx(2.0 / kPi).epsilon(1e-14));
  CHECK(lambda_alpha(0.0) == doctest::Approx(1.0));
  for (double a : {0.5, 1.0, 1.5, 3.0}) CHECK(lambda_alpha_quadrature(a).value == doctest::Approx(lambda_alpha(a)).epsilon(1e-8));
}

TEST_CASE("Voronoi mean length scales with the intensities") {
  const double base = voronoi_mean_length(1.0, 10.0).value;
  CHECK(base > 0.0);
  CHECK(voronoi_mean_length(4.0, 40.0).value == doctest::Approx(base / 2.0).epsilon(1e-6));
  CHECK(voronoi_mean_length(0.25, 2.5).value == doctest::Approx(base * 2.0).epsilon(1e-6));
}

TEST_CASE("nearest point edge and Gamma radii") {
  // The nearest point attaches to the origin: P(L >= r) = exp(-pi r^2).
  for (double r : {0.1, 0.5, 1.0}) CHECK(nth_point_edge_ccdf(1, r).value == doctest::Approx(std::exp(-kPi * r * r)).epsilon(1e-8));
  for (int n : {1, 2, 5})
    for (double t : {0.05, 0.3, 1.0, 2.0}) {
      const double bt = kPi * 2.0 * t;
      double term = 1.0, sum = 1.0;
      for (int k = 1; k < n; ++k) sum += (term *= bt / k);
      CHECK(radial_chain_sq_cdf(n, 2.0, t) == doctest::Approx(1.0 - std::exp(-bt) * sum).epsilon(1e-12));
    }
}

TEST_CASE("curve output") {
  const AnalyticCurve c = evaluate_curve("edge_length_ccdf", {{"x", 1.0}}, 0.0, 1.0, 101);
  REQUIRE(c.values.size() == 101);
  CHECK(c.values.front() == 1.0);
  CHECK(c.values.back() == 0.0);
  CHECK(c.params.at("atom_mass") == doctest::Approx(0.292769).epsilon(1e-5));
  std::ostringstream csv, side;
  write_curve_csv(csv, c);
  write_curve_sidecar(side, c);
  std::istringstream in(csv.str());
  std::string line;
  int rows = 0;
  std::getline(in, line);
  CHECK(line == "abscissa,value");
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 101);
  const auto j = nlohmann::json::parse(side.str());
  CHECK(j["name"] == "edge_length_ccdf");
  CHECK(j["points"] == 101);
}

TEST_CASE("every named curve evaluates") {
  const std::map<std::string, double> p{{"x", 2.0}, {"px", 1.5}, {"py", -0.5}, {"n", 3.0}, {"lambda", 1.0},
                                        {"lambda0", 1.0}, {"lambda1", 10.0}, {"alpha", 1.0}};
  for (const auto& name : curve_names()) {
    const AnalyticCurve c = evaluate_curve(name, p, 0.1, 1.0, 5);
    CHECK(c.values.size() == 5);
    for (double v : c.values) CHECK(std::isfinite(v));
  }
}

TEST_CASE("curve errors") {
  CHECK_THROWS_AS(evaluate_curve("no_such_curve", {}, 0.0, 1.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_curve("edge_length_ccdf", {}, 0.0, 1.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_curve("edge_length_ccdf", {{"x", 1.0}}, 0.0, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(lens_area(-1.0, 0.5), std::invalid_argument);
}

}
