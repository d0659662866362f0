#include "rst/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include "rst/format.hpp"

namespace rst {
namespace {

Vec2 uniform_in_disk(Philox4x32& g, double radius, Vec2 center) {
  const double r = radius * std::sqrt(uniform01(g));
  const double t = 2.0 * kPi * uniform01(g);
  return {center.x + r * std::cos(t), center.y + r * std::sin(t)};
}

}  // namespace

std::string to_string(SamplerKind k) {
  switch (k) {
    case SamplerKind::palm_poisson_disk: return "palm_poisson_disk";
    case SamplerKind::binomial_disk: return "binomial_disk";
    case SamplerKind::radial_chain: return "radial_chain";
  }
  return "?";
}

SamplerKind parse_sampler_kind(const std::string& s) {
  if (s == "palm_poisson_disk") return SamplerKind::palm_poisson_disk;
  if (s == "binomial_disk") return SamplerKind::binomial_disk;
  if (s == "radial_chain") return SamplerKind::radial_chain;
  throw std::invalid_argument("unknown sampler kind '" + s + "'");
}

void SamplerConfig::validate() const {
  if (!(intensity > 0.0) || !std::isfinite(intensity))
    throw std::invalid_argument("sampler.intensity must be > 0");
  if (kind != SamplerKind::radial_chain && (!(window_radius > 0.0) || !std::isfinite(window_radius)))
    throw std::invalid_argument("sampler.window_radius must be > 0");
  if (!(guard_margin >= 0.0 && guard_margin < 1.0))
    throw std::invalid_argument("sampler.guard_margin must lie in [0, 1)");
  if (kind == SamplerKind::binomial_disk && count < 0)
    throw std::invalid_argument("sampler.count must be >= 0 for binomial_disk");
  if (kind == SamplerKind::radial_chain && count < 1)
    throw std::invalid_argument("sampler.count must be >= 1 for radial_chain");
}

DuplicatePointError::DuplicatePointError(std::size_t a, std::size_t b)
    : std::runtime_error("points " + std::to_string(a) + " and " + std::to_string(b) +
                         " have identical coordinates; resample"),
      first(a),
      second(b) {}

PointSet sample_poisson_disk(double lambda, double radius, Vec2 center, std::uint64_t seed,
                             std::uint32_t replicate_id, Stream stream) {
  if (!(lambda > 0.0)) throw std::invalid_argument("intensity must be > 0");
  if (!(radius > 0.0)) throw std::invalid_argument("window radius must be > 0");
  Philox4x32 g = make_stream(seed, replicate_id, stream);
  std::poisson_distribution<std::int64_t> count(lambda * kPi * radius * radius);
  const std::int64_t n = count(g);

  PointSet ps;
  ps.window = Window::disk(radius, center);
  ps.intensity = lambda;
  ps.seed = seed;
  ps.replicate_id = replicate_id;
  ps.points.reserve(static_cast<std::size_t>(n) + 2);
  for (std::int64_t i = 0; i < n; ++i) ps.points.push_back(uniform_in_disk(g, radius, center));
  return ps;
}

PointSet sample_palm_poisson(const SamplerConfig& cfg, std::uint32_t replicate_id) {
  cfg.validate();
  PointSet sampled = sample_poisson_disk(cfg.intensity, cfg.window_radius, {}, cfg.seed, replicate_id);
  PointSet ps = sampled;
  ps.points.clear();
  ps.points.reserve(sampled.points.size() + 1);
  ps.points.push_back({0.0, 0.0});
  ps.points.insert(ps.points.end(), sampled.points.begin(), sampled.points.end());
  ps.has_origin = true;
  return ps;
}

PointSet sample_binomial_disk(const SamplerConfig& cfg, std::uint32_t replicate_id) {
  cfg.validate();
  Philox4x32 g = make_stream(cfg.seed, replicate_id, Stream::points);
  PointSet ps;
  ps.window = Window::disk(cfg.window_radius);
  ps.intensity = static_cast<double>(cfg.count) / ps.window.area();
  ps.seed = cfg.seed;
  ps.replicate_id = replicate_id;
  ps.has_origin = true;
  ps.points.reserve(static_cast<std::size_t>(cfg.count) + 1);
  ps.points.push_back({0.0, 0.0});
  for (std::int64_t i = 0; i < cfg.count; ++i) ps.points.push_back(uniform_in_disk(g, cfg.window_radius, {}));
  if (cfg.count == 0) ps.intensity = 0.0;
  return ps;
}

PointSet sample_radial_chain(std::int64_t n, double lambda, std::uint64_t seed, std::uint32_t replicate_id) {
  if (n < 1) throw std::invalid_argument("radial chain length must be >= 1");
  if (!(lambda > 0.0)) throw std::invalid_argument("intensity must be > 0");
  Philox4x32 g = make_stream(seed, replicate_id, Stream::chain);
  PointSet ps;
  ps.intensity = lambda;
  ps.seed = seed;
  ps.replicate_id = replicate_id;
  ps.points.reserve(static_cast<std::size_t>(n));
  double nu_sq = 0.0;
  for (std::int64_t k = 0; k < n; ++k) {
    // 1 - u lies in (0, 1], so the logarithm is finite.
    nu_sq += -std::log(1.0 - uniform01(g)) / (lambda * kPi);
    const double r = std::sqrt(nu_sq);
    const double t = 2.0 * kPi * uniform01(g);
    ps.points.push_back({r * std::cos(t), r * std::sin(t)});
  }
  ps.window = Window::disk(std::sqrt(nu_sq));
  return ps;
}

PointSet sample(const SamplerConfig& cfg, std::uint32_t replicate_id) {
  switch (cfg.kind) {
    case SamplerKind::palm_poisson_disk: return sample_palm_poisson(cfg, replicate_id);
    case SamplerKind::binomial_disk: return sample_binomial_disk(cfg, replicate_id);
    case SamplerKind::radial_chain:
      cfg.validate();
      return sample_radial_chain(cfg.count, cfg.intensity, cfg.seed, replicate_id);
  }
  throw std::logic_error("unreachable sampler kind");
}

PointSet enforce_nonequidistance(PointSet ps) {
  std::vector<std::size_t> order(ps.points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto lex = [&](std::size_t a, std::size_t b) {
    const Vec2 p = ps.points[a], q = ps.points[b];
    if (p.x != q.x) return p.x < q.x;
    if (p.y != q.y) return p.y < q.y;
    return a < b;
  };
  std::sort(order.begin(), order.end(), lex);
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (ps.points[order[k - 1]] == ps.points[order[k]]) throw DuplicatePointError(order[k - 1], order[k]);
  }
  if (ps.has_origin && (ps.points.empty() || !(ps.points[0] == Vec2{})))
    throw std::invalid_argument("point set claims an origin but points[0] is not (0, 0)");
  ps.tie_break_checked = true;
  return ps;
}

PointSet with_point(const PointSet& ps, Vec2 p, std::size_t* index) {
  PointSet out = ps;
  out.points.push_back(p);
  out.tie_break_checked = false;
  if (index) *index = out.points.size() - 1;
  return out;
}

void write_points_csv(std::ostream& os, const PointSet& ps) {
  os << "id,x,y,is_origin\n";
  for (std::size_t i = 0; i < ps.points.size(); ++i) {
    const bool origin = ps.has_origin && i == 0;
    os << i << ',' << format_double(ps.points[i].x) << ',' << format_double(ps.points[i].y) << ','
       << (origin ? 1 : 0) << '\n';
  }
}

PointSet read_points_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("points CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "id,x,y,is_origin") throw std::invalid_argument("points CSV header must be 'id,x,y,is_origin'");

  PointSet ps;
  std::size_t row = 1;
  double max_r = 0.0;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv(line);
    if (f.size() != 4) throw std::invalid_argument("points CSV row " + std::to_string(row) + ": expected 4 fields");
    const long long id = parse_int(f[0], "id");
    if (id != static_cast<long long>(ps.points.size()))
      throw std::invalid_argument("points CSV row " + std::to_string(row) + ": ids must be 0, 1, 2, ...");
    const Vec2 p{parse_double(f[1], "x"), parse_double(f[2], "y")};
    const long long origin = parse_int(f[3], "is_origin");
    if (origin != 0 && origin != 1)
      throw std::invalid_argument("points CSV row " + std::to_string(row) + ": is_origin must be 0 or 1");
    if (origin == 1) {
      if (id != 0 || !(p == Vec2{}))
        throw std::invalid_argument("points CSV row " + std::to_string(row) + ": only row 0 at (0,0) may be the origin");
      ps.has_origin = true;
    }
    max_r = std::max(max_r, norm2(p));
    ps.points.push_back(p);
  }
  // The smallest centred disk holding every point; RST queries stay exact in it.
  ps.window = Window::disk(max_r);
  if (max_r > 0.0) ps.intensity = static_cast<double>(ps.points.size()) / ps.window.area();
  return ps;
}

PoissonField::PoissonField(double lambda, std::uint64_t seed, std::uint32_t replicate_id)
    : lambda_(lambda), side_(1.0 / std::sqrt(lambda)), key_(mix64(seed ^ mix64(replicate_id + 0x5151ULL))) {
  if (!(lambda > 0.0)) throw std::invalid_argument("intensity must be > 0");
}

const std::vector<Vec2>& PoissonField::cell(std::int64_t i, std::int64_t j) {
  auto [it, inserted] = cells_.try_emplace({i, j});
  if (inserted) {
    Philox4x32 g(key_, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    std::poisson_distribution<int> count(lambda_ * side_ * side_);
    const int n = count(g);
    it->second.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      const double u = uniform01(g), v = uniform01(g);
      it->second.push_back({(static_cast<double>(i) + u) * side_, (static_cast<double>(j) + v) * side_});
    }
  }
  return it->second;
}

void PoissonField::evict_columns_above(std::int64_t i) {
  std::erase_if(cells_, [i](const auto& kv) { return kv.first.first > i; });
}

}  // namespace rst
