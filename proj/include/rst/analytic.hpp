#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "rst/geometry.hpp"
#include "rst/quadrature.hpp"

namespace rst {

/// Geometry of the lens B(O, x) cap B(X, r) for |X| = x.
struct LensParams {
  double x = 0.0;
  double r = 0.0;
  double phi = 0.0;  // 2 asin(r / 2x)
  double psi = 0.0;  // acos(r / 2x), half-width of the admissible edge directions

  static LensParams make(double x, double r);
};

/// Area of B(O, x) cap B(X, r), |X| = x, 0 <= r <= x.
double lens_area(double x, double r);

/// d/dr of lens_area: the length of the arc of the circle of radius r around X
/// lying inside B(O, x), i.e. 2 r acos(r / 2x).
double lens_area_dr(double x, double r);

/// Area of the l-inf "lens" B_inf(O, |X|_inf) cap B_inf(X, r).
double lens_area_linf(Vec2 x_point, double r);

/// P(L(X) >= r) for the RST edge at |X| = x (left-continuous: includes the atom at r = x).
double edge_length_ccdf(double x, double r);

/// P(L(X) > r) (right-continuous); equals edge_length_ccdf except at r = x.
double edge_length_ccdf_right(double x, double r);

/// Density of the absolutely continuous part on (0, x).
double edge_length_density(double x, double r);

/// Mass of the atom at r = x, exp(-M(x, x)).
double edge_length_atom(double x);

/// Continuous part of the joint density of (L, theta) for X = x (cos a, sin a),
/// theta being the absolute direction of A(X) - X.
double joint_density_L_theta(double x, double r, double theta, double arg_x = 0.0);

struct JointAtom {
  double r;
  double theta;
  double mass;
};
JointAtom joint_atom(double x, double arg_x = 0.0);

/// Integral of the continuous joint density over r in (0, x) and all theta,
/// plus the atom; should equal 1.
QuadratureResult joint_density_total_mass(double x);

QuadratureResult mean_edge_length(double x);
QuadratureResult mean_progress(double x);

/// pi / (2 pi / 3 - sqrt 3 / 2).
double mean_degree_origin();

/// Mean degree of a vertex at distance x from the origin (double integral).
QuadratureResult mean_degree_at(double x);

/// 1 + integral over a half-plane of exp(-pi |Y|^2 / 2): the large-x limit of
/// mean_degree_at, evaluated with the same 2-D engine.
QuadratureResult mean_degree_limit_integral(double abs_tol = 1e-8);

double asymptotic_length_ccdf(double r);
QuadratureResult asymptotic_progress_laplace(double s);

/// alpha * int_0^inf r^(alpha-1) exp(-pi r^2 / 2) dr = Gamma(alpha/2 + 1) (2/pi)^(alpha/2).
double lambda_alpha(double alpha);
QuadratureResult lambda_alpha_quadrature(double alpha);

/// Mean total edge length of the nodes of the typical cell in the local Voronoi RST.
QuadratureResult voronoi_mean_length(double lambda0, double lambda1);

/// P(L_n >= r) for the n-th nearest point of a unit-intensity Palm process.
QuadratureResult nth_point_edge_ccdf(int n, double r);

/// P(nu_n^2 <= t) for the n-th nearest point at intensity lambda (Gamma(n, pi lambda)).
double radial_chain_sq_cdf(int n, double lambda, double t);

struct AnalyticCurve {
  std::string name;
  std::vector<double> abscissae;
  std::vector<double> values;
  std::vector<double> errors;  // quadrature error estimate per point (0 for closed forms)
  std::map<std::string, double> params;
  std::map<std::string, std::string> notes;
  double tolerance = 0.0;
};

/// Names accepted by evaluate_curve.
const std::vector<std::string>& curve_names();

/// Evaluates the named curve on a uniform grid of n points in [lo, hi].
/// Parameters not used by the curve are ignored; missing ones throw.
AnalyticCurve evaluate_curve(const std::string& name, const std::map<std::string, double>& params, double lo,
                             double hi, int n);

void write_curve_csv(std::ostream& os, const AnalyticCurve& c);
void write_curve_sidecar(std::ostream& os, const AnalyticCurve& c);

}  // namespace rst
