#include "rst/analytic.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <json.hpp>
#include <ostream>
#include <stdexcept>

#include "rst/format.hpp"

namespace rst {
namespace {

// exp(-37) ~ 1e-16: beyond this exponent an integrand is treated as zero.
constexpr double kNegligibleExponent = 37.0;

// M(x, r) >= M(r, r) = c r^2 with c = 2 pi / 3 - sqrt 3 / 2, so e^{-M} is
// negligible once r exceeds this radius, whatever x is.
const double kLensConst = 2.0 * kPi / 3.0 - std::sqrt(3.0) / 2.0;
const double kEdgeCutoff = std::sqrt(kNegligibleExponent / kLensConst);

double clamp_unit(double c) { return std::clamp(c, -1.0, 1.0); }

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument(std::string(name) + " must be > 0");
}

}  // namespace

LensParams LensParams::make(double x, double r) {
  require_positive(x, "x");
  if (!(r >= 0.0) || r > 2.0 * x) throw std::invalid_argument("lens requires 0 <= r <= 2x");
  LensParams p;
  p.x = x;
  p.r = r;
  p.phi = 2.0 * std::asin(r / (2.0 * x));
  p.psi = std::acos(r / (2.0 * x));
  return p;
}

double lens_area(double x, double r) {
  require_positive(x, "x");
  if (!(r >= 0.0)) throw std::invalid_argument("lens_area: r must be >= 0");
  if (r > x) throw std::invalid_argument("lens_area: r must not exceed x");
  const double phi = 2.0 * std::asin(r / (2.0 * x));
  return x * x * (phi - std::sin(2.0 * phi) / 2.0) + r * r * (kPi / 2.0 - phi / 2.0 - std::sin(phi) / 2.0);
}

double lens_area_dr(double x, double r) {
  require_positive(x, "x");
  if (!(r >= 0.0) || r > x) throw std::invalid_argument("lens_area_dr: need 0 <= r <= x");
  return 2.0 * r * std::acos(r / (2.0 * x));
}

double lens_area_linf(Vec2 p, double r) {
  const double t_inf = norm_inf(p);
  require_positive(t_inf, "|X|_inf");
  if (!(r >= 0.0) || r > t_inf) throw std::invalid_argument("lens_area_linf: need 0 <= r <= |X|_inf");
  const double ax = std::abs(p.x), ay = std::abs(p.y);
  const double g = std::max(ax, ay) - std::min(ax, ay);
  return r < g ? 2.0 * r * r : r * r + r * g;
}

double edge_length_ccdf(double x, double r) {
  require_positive(x, "x");
  if (r <= 0.0) return 1.0;
  if (r > x) return 0.0;
  return std::exp(-lens_area(x, r));
}

double edge_length_ccdf_right(double x, double r) {
  require_positive(x, "x");
  if (r < 0.0) return 1.0;
  if (r >= x) return 0.0;
  return std::exp(-lens_area(x, r));
}

double edge_length_density(double x, double r) {
  require_positive(x, "x");
  if (!(r > 0.0) || !(r < x)) return 0.0;
  return lens_area_dr(x, r) * std::exp(-lens_area(x, r));
}

double edge_length_atom(double x) {
  require_positive(x, "x");
  return std::exp(-kLensConst * x * x);
}

double joint_density_L_theta(double x, double r, double theta, double arg_x) {
  require_positive(x, "x");
  if (!(r > 0.0) || !(r < x)) return 0.0;
  const double psi = std::acos(r / (2.0 * x));
  // Angular distance from the direction pointing at the origin, wrapped to [0, pi].
  const double d = std::abs(std::remainder(theta - (kPi + arg_x), 2.0 * kPi));
  if (!(d < psi)) return 0.0;
  return edge_length_density(x, r) / (2.0 * psi);
}

JointAtom joint_atom(double x, double arg_x) { return {x, kPi + arg_x, edge_length_atom(x)}; }

QuadratureResult joint_density_total_mass(double x) {
  require_positive(x, "x");
  const double rmax = std::min(x, kEdgeCutoff);
  auto half = [x](double r) { return r < x ? std::acos(r / (2.0 * x)) : kPi / 3.0; };
  const QuadratureResult cont = integrate2d(
      [x](double r, double th) { return joint_density_L_theta(x, r, th); }, 0.0, rmax,
      [&](double r) { return kPi - half(r); }, [&](double r) { return kPi + half(r); }, 1e-9,
      "joint density normalisation");
  return {cont.value + edge_length_atom(x), cont.error};
}

QuadratureResult mean_edge_length(double x) {
  require_positive(x, "x");
  const double rmax = std::min(x, kEdgeCutoff);
  return integrate([x](double r) { return std::exp(-lens_area(x, r)); }, 0.0, rmax, kTol1D, "mean edge length");
}

QuadratureResult mean_progress(double x) {
  require_positive(x, "x");
  const double rmax = std::min(x, kEdgeCutoff);
  // Given L = r the edge direction makes an angle u with the direction to O,
  // u uniform on (-psi, psi); the ancestor then sits at distance
  // sqrt(x^2 + r^2 - 2 x r cos u) from O. Symmetric in u, so integrate over (0, psi).
  auto f = [x](double r, double u) {
    if (!(r > 0.0) || !(r < x)) return 0.0;
    const double psi = std::acos(r / (2.0 * x));
    const double a = std::sqrt(std::max(0.0, x * x + r * r - 2.0 * x * r * std::cos(u)));
    return edge_length_density(x, r) / psi * (x - a);
  };
  const QuadratureResult cont = integrate2d(
      f, 0.0, rmax, [](double) { return 0.0; }, [x](double r) { return std::acos(std::min(1.0, r / (2.0 * x))); },
      kTol2D, "mean progress");
  return {cont.value + edge_length_atom(x) * x, cont.error};
}

double mean_degree_origin() { return kPi / kLensConst; }

QuadratureResult mean_degree_at(double x) {
  require_positive(x, "x");
  // Substituting u = 1 + s/x, theta = t/x turns 2 x^2 u du dtheta into
  // 2 u ds dt, with s, t of order one whatever x is. Contributions from
  // |T - X| > c are below 1e-13 because the void region there is at least
  // kLensConst |T - X|^2.
  const double c = std::sqrt(kNegligibleExponent / kLensConst);
  auto f = [x](double s, double t) {
    const double u = 1.0 + s / x;
    const double th = t / x;
    const double ca = clamp_unit((1.0 - 1.0 / (u * u)) / 2.0 + std::cos(th) / u);
    const double alpha = std::acos(ca);
    const double e1 = (u * u * x * x / 2.0) * (2.0 * alpha - std::sin(2.0 * alpha));
    const double e2 = (x * x / 2.0) * (1.0 + u * u - 2.0 * u * std::cos(th)) * (kPi - alpha - std::sin(alpha));
    return 2.0 * u * std::exp(-(e1 + e2));
  };
  auto tmax = [x, c](double s) {
    const double u = 1.0 + s / x;
    return x * std::min(std::acos(1.0 / (2.0 * u)), std::asin(std::min(1.0, c / x)));
  };
  const QuadratureResult r = integrate2d(f, 0.0, c, [](double) { return 0.0; }, tmax, kTol2D, "mean degree");
  return {1.0 + r.value, r.error};
}

QuadratureResult mean_degree_limit_integral(double abs_tol) {
  const double c = std::sqrt(2.0 * kNegligibleExponent / kPi);
  const QuadratureResult r = integrate2d(
      [](double s, double t) { return std::exp(-kPi * (s * s + t * t) / 2.0); }, 0.0, c,
      [c](double) { return -c; }, [c](double) { return c; }, abs_tol, "half-plane limit");
  return {1.0 + r.value, r.error};
}

double asymptotic_length_ccdf(double r) {
  if (r <= 0.0) return 1.0;
  return std::exp(-kPi * r * r / 2.0);
}

QuadratureResult asymptotic_progress_laplace(double s) {
  if (!(s >= 0.0)) throw std::invalid_argument("Laplace argument must be >= 0");
  const double rmax = std::sqrt(2.0 * kNegligibleExponent / kPi);
  return integrate2d(
      [s](double r, double th) { return std::exp(-s * r * std::cos(th) - kPi * r * r / 2.0) * r; }, 0.0, rmax,
      [](double) { return -kPi / 2.0; }, [](double) { return kPi / 2.0; }, 1e-10, "progress Laplace transform");
}

double lambda_alpha(double alpha) {
  if (alpha == 0.0) return 1.0;
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be >= 0");
  return std::tgamma(alpha / 2.0 + 1.0) * std::pow(2.0 / kPi, alpha / 2.0);
}

QuadratureResult lambda_alpha_quadrature(double alpha) {
  if (alpha == 0.0) return {1.0, 0.0};
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be >= 0");
  // exp-sinh copes with the r^(alpha - 1) behaviour at the origin.
  boost::math::quadrature::exp_sinh<double> q;
  double err = 0.0;
  const double v = q.integrate(
      [alpha](double r) { return alpha * std::pow(r, alpha - 1.0) * std::exp(-kPi * r * r / 2.0); }, 1e-12, &err);
  if (!(err <= kTol1D * std::max(1.0, v)) || !std::isfinite(v)) throw QuadratureError("lambda_alpha", err, kTol1D);
  return {v, err};
}

QuadratureResult voronoi_mean_length(double lambda0, double lambda1) {
  require_positive(lambda0, "lambda0");
  require_positive(lambda1, "lambda1");
  const double scale = 2.0 * kPi * lambda1;
  const double rmax = std::sqrt(kNegligibleExponent / (kPi * lambda0));
  const QuadratureResult r = integrate2d(
      [lambda0, lambda1](double rr, double u) {
        if (!(rr > 0.0)) return 0.0;
        return std::exp(-lambda0 * kPi * rr * rr - lambda1 * lens_area(rr, std::min(u, rr))) * rr;
      },
      0.0, rmax, [](double) { return 0.0; }, [](double rr) { return rr; }, kTol2D / scale,
      "Voronoi mean length");
  return {scale * r.value, scale * r.error};
}

QuadratureResult nth_point_edge_ccdf(int n, double r) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (r <= 0.0) return {1.0, 0.0};
  const double tmax = (n + 12.0 * std::sqrt(static_cast<double>(n)) + kNegligibleExponent) / kPi;
  if (r * r >= tmax) return {0.0, 0.0};
  const double log_norm = n * std::log(kPi) - std::lgamma(static_cast<double>(n));
  auto f = [n, r, log_norm](double t) {
    if (t <= 0.0) return 0.0;
    const double rho = std::sqrt(t);
    const double keep = 1.0 - lens_area(rho, std::min(r, rho)) / (kPi * t);
    const double dens = std::exp(log_norm + (n - 1) * std::log(t) - kPi * t);
    return std::pow(std::max(0.0, keep), n - 1) * dens;
  };
  return integrate(f, r * r, tmax, kTol1D, "n-th point edge law");
}

double radial_chain_sq_cdf(int n, double lambda, double t) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  require_positive(lambda, "lambda");
  if (t <= 0.0) return 0.0;
  return boost::math::gamma_p(static_cast<double>(n), kPi * lambda * t);
}

const std::vector<std::string>& curve_names() {
  static const std::vector<std::string> names = {
      "lens_area",         "lens_area_linf",  "edge_length_ccdf",         "edge_length_density",
      "mean_edge_length",  "mean_progress",   "mean_degree_at",           "asymptotic_length_ccdf",
      "asymptotic_progress_laplace", "lambda_alpha", "voronoi_mean_length", "nth_point_edge_ccdf",
      "radial_chain_sq_cdf"};
  return names;
}

namespace {

double need(const std::map<std::string, double>& p, const std::string& curve, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw std::invalid_argument("curve '" + curve + "' needs parameter '" + key + "'");
  return it->second;
}

double get_or(const std::map<std::string, double>& p, const std::string& key, double dflt) {
  auto it = p.find(key);
  return it == p.end() ? dflt : it->second;
}

}  // namespace

AnalyticCurve evaluate_curve(const std::string& name, const std::map<std::string, double>& params, double lo,
                             double hi, int n) {
  if (n < 1) throw std::invalid_argument("curve needs at least one point");
  if (n > 1 && !(hi > lo)) throw std::invalid_argument("curve range must satisfy max > min");
  AnalyticCurve c;
  c.name = name;
  c.tolerance = kTol1D;
  for (int i = 0; i < n; ++i)
    c.abscissae.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));

  auto closed = [&](auto fn) {
    for (double a : c.abscissae) {
      c.values.push_back(fn(a));
      c.errors.push_back(0.0);
    }
  };
  auto quad = [&](auto fn) {
    for (double a : c.abscissae) {
      const QuadratureResult r = fn(a);
      c.values.push_back(r.value);
      c.errors.push_back(r.error);
    }
  };

  if (name == "lens_area") {
    const double x = need(params, name, "x");
    c.params["x"] = x;
    closed([x](double r) { return lens_area(x, r); });
  } else if (name == "lens_area_linf") {
    const Vec2 p{need(params, name, "px"), need(params, name, "py")};
    c.params["px"] = p.x;
    c.params["py"] = p.y;
    closed([p](double r) { return lens_area_linf(p, r); });
  } else if (name == "edge_length_ccdf") {
    const double x = need(params, name, "x");
    c.params["x"] = x;
    c.params["atom_location"] = x;
    c.params["atom_mass"] = edge_length_atom(x);
    c.notes["convention"] = "value = P(L > r) (right-continuous); P(L >= x) = atom_mass";
    closed([x](double r) { return edge_length_ccdf_right(x, r); });
  } else if (name == "edge_length_density") {
    const double x = need(params, name, "x");
    c.params["x"] = x;
    c.params["atom_location"] = x;
    c.params["atom_mass"] = edge_length_atom(x);
    c.notes["convention"] = "density of the absolutely continuous part; the atom is reported separately";
    closed([x](double r) { return edge_length_density(x, r); });
  } else if (name == "mean_edge_length") {
    quad([](double x) { return mean_edge_length(x); });
  } else if (name == "mean_progress") {
    c.tolerance = kTol2D;
    quad([](double x) { return mean_progress(x); });
  } else if (name == "mean_degree_at") {
    c.tolerance = kTol2D;
    quad([](double x) { return mean_degree_at(x); });
  } else if (name == "asymptotic_length_ccdf") {
    closed([](double r) { return asymptotic_length_ccdf(r); });
  } else if (name == "asymptotic_progress_laplace") {
    c.tolerance = 1e-10;
    quad([](double s) { return asymptotic_progress_laplace(s); });
  } else if (name == "lambda_alpha") {
    closed([](double a) { return lambda_alpha(a); });
  } else if (name == "voronoi_mean_length") {
    const double l0 = get_or(params, "lambda0", 1.0);
    c.params["lambda0"] = l0;
    c.tolerance = kTol2D;
    quad([l0](double l1) { return voronoi_mean_length(l0, l1); });
  } else if (name == "nth_point_edge_ccdf") {
    const double nn = need(params, name, "n");
    if (nn < 1 || nn != std::floor(nn)) throw std::invalid_argument("curve parameter 'n' must be a positive integer");
    c.params["n"] = nn;
    quad([nn](double r) { return nth_point_edge_ccdf(static_cast<int>(nn), r); });
  } else if (name == "radial_chain_sq_cdf") {
    const double nn = need(params, name, "n");
    if (nn < 1 || nn != std::floor(nn)) throw std::invalid_argument("curve parameter 'n' must be a positive integer");
    const double lambda = get_or(params, "lambda", 1.0);
    c.params["n"] = nn;
    c.params["lambda"] = lambda;
    closed([nn, lambda](double t) { return radial_chain_sq_cdf(static_cast<int>(nn), lambda, t); });
  } else {
    throw std::invalid_argument("unknown curve '" + name + "'");
  }
  return c;
}

void write_curve_csv(std::ostream& os, const AnalyticCurve& c) {
  os << "abscissa,value\n";
  for (std::size_t i = 0; i < c.abscissae.size(); ++i)
    os << format_double(c.abscissae[i]) << ',' << format_double(c.values[i]) << '\n';
}

void write_curve_sidecar(std::ostream& os, const AnalyticCurve& c) {
  nlohmann::ordered_json j;
  j["name"] = c.name;
  j["points"] = c.abscissae.size();
  j["params"] = c.params;
  j["tolerance"] = c.tolerance;
  double worst = 0.0;
  for (double e : c.errors) worst = std::max(worst, e);
  j["max_error_estimate"] = worst;
  j["error_estimates"] = c.errors;
  if (!c.notes.empty()) j["notes"] = c.notes;
  os << j.dump(2) << '\n';
}

}  // namespace rst
