#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rst/forest.hpp"

namespace rst {

/// Count, sum and sum of squares; merging two accumulators gives the pooled one.
struct RunningStats {
  std::int64_t n = 0;
  double sum = 0.0;
  double sumsq = 0.0;

  void add(double v) {
    ++n;
    sum += v;
    sumsq += v * v;
  }
  void merge(const RunningStats& o) {
    n += o.n;
    sum += o.sum;
    sumsq += o.sumsq;
  }
  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
  double variance() const;  // unbiased
  double se() const;        // standard error of the mean
};

struct Estimate {
  double value = 0.0;
  double se = 0.0;
  double ci_halfwidth = 0.0;  // 95%
  std::int64_t n = 0;
};

/// Plain i.i.d. estimate with a normal 95% interval.
Estimate iid_estimate(const RunningStats& s);

/// Batch-means estimate for a serially correlated series (at least 30 batches).
Estimate batch_means(const std::vector<double>& series, int batches = 30);

/// Sorted continuous samples plus a register of point masses.
struct EmpiricalDist {
  std::vector<double> samples;                       // sorted
  std::vector<std::pair<double, std::int64_t>> atoms;  // (location, count), sorted by location
  std::int64_t n = 0;

  /// Samples equal to one of `atom_locations` go to the atom register.
  static EmpiricalDist from_samples(std::vector<double> values, const std::vector<double>& atom_locations = {});
};

/// P(S >= r) under the empirical law.
double empirical_ccdf(const EmpiricalDist& d, double r);
/// P(S > r) under the empirical law.
double empirical_ccdf_right(const EmpiricalDist& d, double r);

/// Reference law given by both one-sided tail functions, so atoms are honoured.
struct ReferenceTail {
  std::function<double(double)> ge;  // P(L >= r)
  std::function<double(double)> gt;  // P(L > r); may be empty for continuous laws
  std::vector<double> atoms;         // atom locations of the reference
};

/// Kolmogorov-Smirnov distance, comparing P(>= r) and P(> r) at every sample
/// value and every reference atom.
double ks_distance(const EmpiricalDist& d, const ReferenceTail& ref);

/// max(0.01, 3 sqrt(ln(2/delta) / (2n))).
double ks_threshold(std::int64_t n, double delta = 1e-3);

/// CDF-based KS distance of raw samples against a continuous CDF.
double ks_distance_cdf(std::vector<double> samples, const std::function<double(double)>& cdf);

struct ShapeResult {
  double g_over_k2 = 0.0;
  std::size_t generation_size = 0;
  bool sandwich = false;
};

/// |T(k)| / k^2 and the check N cap B(O,(1-eps)kp) in T(k) in B(O,(1+eps)kp).
/// Throws if (1+eps)kp leaves the trusted part of the window.
ShapeResult shape_statistic(const Forest& f, std::int64_t k, double p, double eps, double trusted_radius);

/// Same, reusing precomputed generations.
ShapeResult shape_statistic(const Forest& f, const std::vector<std::int64_t>& gen, std::int64_t k, double p,
                            double eps, double trusted_radius);

/// Sum of |X - A(X)|^alpha over vertices with an edge and |X| <= x, divided by x^2.
double spatial_average(const Forest& f, double x, double alpha);

/// C(r) / (2 pi r).
double crossing_intensity(const Forest& f, double r);

/// D(O) + sum over vertices T != O with |T| <= x of (D(T) - 2).
std::int64_t crossing_from_degrees(const Forest& f, double x);

/// Least-squares slope of y on x.
double regression_slope(const std::vector<double>& x, const std::vector<double>& y);

double median(std::vector<double> v);

}  // namespace rst
