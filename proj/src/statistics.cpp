#include "rst/statistics.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <stdexcept>

namespace rst {

double RunningStats::variance() const {
  if (n < 2) return 0.0;
  const double m = mean();
  return std::max(0.0, (sumsq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1));
}

double RunningStats::se() const { return n ? std::sqrt(variance() / static_cast<double>(n)) : 0.0; }

Estimate iid_estimate(const RunningStats& s) {
  Estimate e;
  e.value = s.mean();
  e.se = s.se();
  e.ci_halfwidth = 1.96 * e.se;
  e.n = s.n;
  return e;
}

Estimate batch_means(const std::vector<double>& series, int batches) {
  if (batches < 2) throw std::invalid_argument("batch means needs at least two batches");
  const std::size_t len = series.size() / static_cast<std::size_t>(batches);
  if (len == 0) throw std::invalid_argument("series too short for the requested number of batches");
  RunningStats per_batch;
  for (int b = 0; b < batches; ++b) {
    double s = 0.0;
    for (std::size_t i = 0; i < len; ++i) s += series[static_cast<std::size_t>(b) * len + i];
    per_batch.add(s / static_cast<double>(len));
  }
  // The point estimate uses the whole series; the interval uses the batches.
  double total = 0.0;
  for (double v : series) total += v;
  Estimate e;
  e.value = total / static_cast<double>(series.size());
  e.se = per_batch.se();
  const boost::math::students_t t(batches - 1);
  e.ci_halfwidth = boost::math::quantile(boost::math::complement(t, 0.025)) * e.se;
  e.n = static_cast<std::int64_t>(series.size());
  return e;
}

EmpiricalDist EmpiricalDist::from_samples(std::vector<double> values, const std::vector<double>& atom_locations) {
  EmpiricalDist d;
  d.n = static_cast<std::int64_t>(values.size());
  std::vector<double> locs = atom_locations;
  std::sort(locs.begin(), locs.end());
  locs.erase(std::unique(locs.begin(), locs.end()), locs.end());
  for (double a : locs) d.atoms.emplace_back(a, 0);
  for (double v : values) {
    auto it = std::lower_bound(locs.begin(), locs.end(), v);
    if (it != locs.end() && *it == v)
      ++d.atoms[static_cast<std::size_t>(it - locs.begin())].second;
    else
      d.samples.push_back(v);
  }
  std::sort(d.samples.begin(), d.samples.end());
  return d;
}

double empirical_ccdf(const EmpiricalDist& d, double r) {
  if (d.n == 0) throw std::invalid_argument("empirical distribution is empty");
  const auto below = std::lower_bound(d.samples.begin(), d.samples.end(), r) - d.samples.begin();
  std::int64_t count = static_cast<std::int64_t>(d.samples.size()) - below;
  for (const auto& [loc, c] : d.atoms)
    if (loc >= r) count += c;
  return static_cast<double>(count) / static_cast<double>(d.n);
}

double empirical_ccdf_right(const EmpiricalDist& d, double r) {
  if (d.n == 0) throw std::invalid_argument("empirical distribution is empty");
  const auto upto = std::upper_bound(d.samples.begin(), d.samples.end(), r) - d.samples.begin();
  std::int64_t count = static_cast<std::int64_t>(d.samples.size()) - upto;
  for (const auto& [loc, c] : d.atoms)
    if (loc > r) count += c;
  return static_cast<double>(count) / static_cast<double>(d.n);
}

double ks_distance(const EmpiricalDist& d, const ReferenceTail& ref) {
  if (d.n == 0) throw std::invalid_argument("empirical distribution is empty");
  const auto& gt = ref.gt ? ref.gt : ref.ge;
  const double n = static_cast<double>(d.n);

  // Walk the sorted continuous samples once; atoms are few and handled directly.
  double worst = 0.0;
  const std::size_t m = d.samples.size();
  std::size_t i = 0;
  while (i < m) {
    const double v = d.samples[i];
    std::size_t j = i;
    while (j < m && d.samples[j] == v) ++j;
    double atoms_ge = 0.0, atoms_gt = 0.0;
    for (const auto& [loc, c] : d.atoms) {
      if (loc >= v) atoms_ge += static_cast<double>(c);
      if (loc > v) atoms_gt += static_cast<double>(c);
    }
    const double emp_ge = (static_cast<double>(m - i) + atoms_ge) / n;
    const double emp_gt = (static_cast<double>(m - j) + atoms_gt) / n;
    worst = std::max({worst, std::abs(emp_ge - ref.ge(v)), std::abs(emp_gt - gt(v))});
    i = j;
  }
  std::vector<double> extra = ref.atoms;
  for (const auto& a : d.atoms) extra.push_back(a.first);
  for (double a : extra) {
    worst = std::max({worst, std::abs(empirical_ccdf(d, a) - ref.ge(a)), std::abs(empirical_ccdf_right(d, a) - gt(a))});
  }
  return worst;
}

double ks_threshold(std::int64_t n, double delta) {
  if (n <= 0) throw std::invalid_argument("ks_threshold needs n >= 1");
  return std::max(0.01, 3.0 * std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n))));
}

double ks_distance_cdf(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    worst = std::max({worst, std::abs(static_cast<double>(i + 1) / n - f), std::abs(f - static_cast<double>(i) / n)});
  }
  return worst;
}

ShapeResult shape_statistic(const Forest& f, std::int64_t k, double p, double eps, double trusted_radius) {
  return shape_statistic(f, generations(f), k, p, eps, trusted_radius);
}

ShapeResult shape_statistic(const Forest& f, const std::vector<std::int64_t>& gen, std::int64_t k, double p,
                            double eps, double trusted_radius) {
  if (k < 1) throw std::invalid_argument("shape statistic needs k >= 1");
  if (f.kind != ForestKind::rst) throw std::invalid_argument("shape statistic needs an RST");
  const double outer = (1.0 + eps) * static_cast<double>(k) * p;
  if (outer > trusted_radius) throw std::invalid_argument("k too large for the window: (1+eps) k p exceeds the trusted radius");
  const double inner = (1.0 - eps) * static_cast<double>(k) * p;
  ShapeResult res;
  res.sandwich = true;
  for (std::size_t v = 0; v < f.size(); ++v) {
    const double r = norm2(f.position(v));
    const bool in_tk = gen[v] >= 0 && gen[v] <= k;
    if (in_tk) ++res.generation_size;
    if (r <= inner && !in_tk) res.sandwich = false;
    if (in_tk && r > outer) res.sandwich = false;
  }
  res.g_over_k2 = static_cast<double>(res.generation_size) / static_cast<double>(k * k);
  return res;
}

double spatial_average(const Forest& f, double x, double alpha) {
  if (!(x > 0.0)) throw std::invalid_argument("spatial average needs x > 0");
  double s = 0.0;
  for (std::size_t v = 0; v < f.size(); ++v) {
    if (!f.has_edge(v) || length(f.norm, f.position(v)) > x) continue;
    s += alpha == 0.0 ? 1.0 : std::pow(f.edge_length(v), alpha);
  }
  return s / (x * x);
}

double crossing_intensity(const Forest& f, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("crossing intensity needs r > 0");
  return static_cast<double>(crossing_count(f, r)) / (2.0 * kPi * r);
}

std::int64_t crossing_from_degrees(const Forest& f, double x) {
  if (!f.points->has_origin) throw std::invalid_argument("degree identity needs the origin");
  std::int64_t c = degree(f, 0);
  for (std::size_t v = 1; v < f.size(); ++v)
    if (length(f.norm, f.position(v)) <= x) c += static_cast<std::int64_t>(degree(f, v)) - 2;
  return c;
}

double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("regression needs two or more paired values");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of an empty sample");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  if (v.size() % 2 == 1) return v[mid];
  const double hi = v[mid];
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

}  // namespace rst
