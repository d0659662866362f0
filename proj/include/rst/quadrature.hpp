#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rst {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
};

struct QuadratureError : std::runtime_error {
  QuadratureError(const std::string& what, double achieved, double requested);
  double achieved;
  double requested;
};

inline constexpr double kTol1D = 1e-9;
inline constexpr double kTol2D = 1e-6;

/// Adaptive Gauss-Kronrod (15 points, embedded 7-point Gauss estimate).
/// Throws QuadratureError if the error estimate stays above `abs_tol`.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, double abs_tol = kTol1D, const char* what = "integral") {
  if (a == b) return {0.0, 0.0};
  double err = 0.0, l1 = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 20, 1e-12, &err, &l1);
  if (!(err <= abs_tol) || !std::isfinite(v)) throw QuadratureError(what, err, abs_tol);
  return {v, err};
}

/// Iterated integral of f(u, t) over u in [a, b], t in [lo(u), hi(u)].
/// The reported error adds the outer estimate to the integrated inner estimates.
template <class F, class Lo, class Hi>
QuadratureResult integrate2d(F&& f, double a, double b, Lo&& lo, Hi&& hi, double abs_tol = kTol2D,
                             const char* what = "double integral") {
  const double inner_tol = abs_tol / (4.0 * std::max(1.0, std::abs(b - a)));
  double inner_err_mass = 0.0;
  auto inner = [&](double u) {
    const QuadratureResult r =
        integrate([&](double t) { return f(u, t); }, lo(u), hi(u), inner_tol, what);
    return r.value;
  };
  double err = 0.0, l1 = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(inner, a, b, 15, 1e-10, &err, &l1);
  inner_err_mass = inner_tol * std::abs(b - a);
  const double total = err + inner_err_mass;
  if (!(total <= abs_tol) || !std::isfinite(v)) throw QuadratureError(what, total, abs_tol);
  return {v, total};
}

}  // namespace rst
