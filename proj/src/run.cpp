#include "rst/run.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "rst/analytic.hpp"
#include "rst/format.hpp"
#include "rst/parallel.hpp"
#include "rst/path_analysis.hpp"
#include "rst/statistics.hpp"

namespace fs = std::filesystem;

namespace rst {

std::string to_string(Command c) {
  switch (c) {
    case Command::sample: return "sample";
    case Command::build: return "build";
    case Command::curve: return "curve";
    case Command::paths: return "paths";
    case Command::estimate: return "estimate";
    case Command::shape: return "shape";
    case Command::validate: return "validate";
  }
  return "?";
}

Command parse_command(const std::string& s) {
  for (Command c : {Command::sample, Command::build, Command::curve, Command::paths, Command::estimate,
                    Command::shape, Command::validate})
    if (to_string(c) == s) return c;
  throw std::invalid_argument("unknown command '" + s + "'");
}

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ConfigError(path + ": " + what); }

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(path, "expected a finite number");
  return d;
}

double get_positive(const json& v, const std::string& path) {
  const double d = get_number(v, path);
  if (!(d > 0.0)) fail(path, "must be > 0, got " + format_double(d));
  return d;
}

std::int64_t get_int(const json& v, const std::string& path, std::int64_t min) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  const auto i = v.get<std::int64_t>();
  if (i < min) fail(path, "must be >= " + std::to_string(min) + ", got " + std::to_string(i));
  return i;
}

std::uint64_t get_uint(const json& v, const std::string& path) {
  if (!v.is_number_unsigned()) fail(path, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

template <class F>
auto parse_enum(const json& v, const std::string& path, F&& f) {
  const std::string s = get_string(v, path);
  try {
    return f(s);
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

void require_object(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
}

[[noreturn]] void unknown(const std::string& path, const std::string& key) { fail(path, "unknown key '" + key + "'"); }

void parse_sampler(const json& j, const std::string& path, SamplerConfig& s) {
  require_object(j, path);
  for (const auto& [k, v] : j.items()) {
    const std::string p = path + "." + k;
    if (k == "kind")
      s.kind = parse_enum(v, p, parse_sampler_kind);
    else if (k == "lambda")
      s.intensity = get_positive(v, p);
    else if (k == "window_radius")
      s.window_radius = get_positive(v, p);
    else if (k == "guard_margin") {
      s.guard_margin = get_number(v, p);
      if (!(s.guard_margin >= 0.0 && s.guard_margin < 1.0)) fail(p, "must lie in [0, 1)");
    } else if (k == "count")
      s.count = get_int(v, p, 0);
    else
      unknown(path, k);
  }
  if (s.kind == SamplerKind::radial_chain && s.count < 1) fail(path + ".count", "radial_chain needs count >= 1");
}

void parse_forest(const json& j, const std::string& path, RunConfig::ForestOptions& f) {
  require_object(j, path);
  for (const auto& [k, v] : j.items()) {
    const std::string p = path + "." + k;
    if (k == "kind")
      f.kind = parse_enum(v, p, parse_forest_kind);
    else if (k == "norm")
      f.norm = parse_enum(v, p, parse_norm);
    else if (k == "direction") {
      if (!v.is_array() || v.size() != 2) fail(p, "expected [x, y]");
      f.direction = {get_number(v[0], p + "[0]"), get_number(v[1], p + "[1]")};
      if (!(norm2(f.direction) > 0.0)) fail(p, "must be nonzero");
    } else if (k == "node_lambda")
      f.node_intensity = get_positive(v, p);
    else if (k == "input")
      f.input = get_string(v, p);
    else
      unknown(path, k);
  }
}

void parse_curve(const json& j, const std::string& path, RunConfig::CurveOptions& c) {
  require_object(j, path);
  for (const auto& [k, v] : j.items()) {
    const std::string p = path + "." + k;
    if (k == "name") {
      c.name = get_string(v, p);
      const auto& names = curve_names();
      if (std::find(names.begin(), names.end(), c.name) == names.end()) fail(p, "unknown curve '" + c.name + "'");
    } else if (k == "params") {
      require_object(v, p);
      for (const auto& [pk, pv] : v.items()) c.params[pk] = get_number(pv, p + "." + pk);
    } else if (k == "min")
      c.min = get_number(v, p);
    else if (k == "max")
      c.max = get_number(v, p);
    else if (k == "points")
      c.points = static_cast<int>(get_int(v, p, 1));
    else
      unknown(path, k);
  }
}

void parse_paths(const json& j, const std::string& path, RunConfig::PathOptions& o) {
  require_object(j, path);
  for (const auto& [k, v] : j.items()) {
    const std::string p = path + "." + k;
    if (k == "count")
      o.count = get_int(v, p, 1);
    else if (k == "start_radius")
      o.start_radius = get_positive(v, p);
    else if (k == "max_hops")
      o.max_hops = get_int(v, p, 1);
    else
      unknown(path, k);
  }
}

void parse_estimate(const json& j, const std::string& path, RunConfig::EstimateOptions& o) {
  require_object(j, path);
  for (const auto& [k, v] : j.items()) {
    const std::string p = path + "." + k;
    if (k == "transitions")
      o.transitions = get_int(v, p, 1000);
    else if (k == "alphas") {
      if (!v.is_array()) fail(p, "expected an array of numbers");
      o.alphas.clear();
      for (std::size_t i = 0; i < v.size(); ++i) {
        const double a = get_number(v[i], p + "[" + std::to_string(i) + "]");
        if (a < 0.0) fail(p + "[" + std::to_string(i) + "]", "must be >= 0");
        o.alphas.push_back(a);
      }
    } else
      unknown(path, k);
  }
}

void parse_shape(const json& j, const std::string& path, RunConfig::ShapeOptions& o) {
  require_object(j, path);
  for (const auto& [k, v] : j.items()) {
    const std::string p = path + "." + k;
    if (k == "k")
      o.k = get_int(v, p, 1);
    else if (k == "eps") {
      o.eps = get_number(v, p);
      if (!(o.eps > 0.0 && o.eps < 1.0)) fail(p, "must lie in (0, 1)");
    } else if (k == "p")
      o.p = get_positive(v, p);
    else
      unknown(path, k);
  }
}

void parse_validate(const json& j, const std::string& path, RunConfig::ValidateOptions& o) {
  require_object(j, path);
  for (const auto& [k, v] : j.items()) {
    const std::string p = path + "." + k;
    if (k == "suite") {
      o.suite = get_string(v, p);
      const auto& names = suite_names();
      if (std::find(names.begin(), names.end(), o.suite) == names.end()) fail(p, "unknown suite '" + o.suite + "'");
    } else if (k == "checks") {
      if (!v.is_array()) fail(p, "expected an array of check names");
      std::vector<std::string> checks;
      for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string name = get_string(v[i], p + "[" + std::to_string(i) + "]");
        const auto& names = check_names();
        if (std::find(names.begin(), names.end(), name) == names.end())
          fail(p + "[" + std::to_string(i) + "]", "unknown check '" + name + "'");
        checks.push_back(name);
      }
      o.checks = checks;
    } else if (k == "options") {
      try {
        o.options = SuiteConfig::from_json(json{{"options", v}}).options;
      } catch (const std::invalid_argument& e) {
        fail(p, e.what());
      }
    } else
      unknown(path, k);
  }
}

}  // namespace

RunConfig config_from_json(const json& j) {
  const std::string root = "config";
  require_object(j, root);
  RunConfig c;
  bool have_command = false;
  for (const auto& [k, v] : j.items()) {
    const std::string p = root + "." + k;
    if (k == "command") {
      c.command = parse_enum(v, p, parse_command);
      have_command = true;
    } else if (k == "seed")
      c.seed = get_uint(v, p);
    else if (k == "output_dir")
      c.output_dir = get_string(v, p);
    else if (k == "replicates")
      c.replicates = get_int(v, p, 1);
    else if (k == "workers")
      c.workers = static_cast<unsigned>(get_int(v, p, 0));
    else if (k == "sampler")
      parse_sampler(v, p, c.sampler);
    else if (k == "forest")
      parse_forest(v, p, c.forest);
    else if (k == "curve")
      parse_curve(v, p, c.curve);
    else if (k == "paths")
      parse_paths(v, p, c.paths);
    else if (k == "estimate")
      parse_estimate(v, p, c.estimate);
    else if (k == "shape")
      parse_shape(v, p, c.shape);
    else if (k == "validate")
      parse_validate(v, p, c.validate);
    else
      unknown(root, k);
  }
  if (!have_command) fail(root + ".command", "missing required field");
  if (c.command == Command::curve && c.curve.name.empty()) fail(root + ".curve.name", "missing required field");
  if (c.command == Command::curve && c.curve.points > 1 && !(c.curve.max > c.curve.min))
    fail(root + ".curve.max", "must exceed curve.min");
  c.sampler.seed = c.seed;
  return c;
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  return config_from_json(j);
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = to_string(command);
  j["seed"] = seed;
  j["output_dir"] = output_dir;
  j["replicates"] = replicates;
  j["workers"] = workers;
  j["sampler"] = {{"kind", to_string(sampler.kind)},
                  {"lambda", sampler.intensity},
                  {"window_radius", sampler.window_radius},
                  {"guard_margin", sampler.guard_margin},
                  {"count", sampler.count}};
  j["forest"] = {{"kind", to_string(forest.kind)},
                 {"norm", to_string(forest.norm)},
                 {"direction", {forest.direction.x, forest.direction.y}},
                 {"node_lambda", forest.node_intensity},
                 {"input", forest.input}};
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : curve.params) params[k] = v;
  j["curve"] = {{"params", params}, {"min", curve.min}, {"max", curve.max}, {"points", curve.points}};
  if (!curve.name.empty()) j["curve"]["name"] = curve.name;
  j["paths"] = {{"count", paths.count}, {"start_radius", paths.start_radius}, {"max_hops", paths.max_hops}};
  j["estimate"] = {{"transitions", estimate.transitions}, {"alphas", estimate.alphas}};
  j["shape"] = {{"k", shape.k}, {"eps", shape.eps}};
  if (shape.p) j["shape"]["p"] = *shape.p;
  nlohmann::ordered_json v;
  v["suite"] = validate.suite;
  if (validate.checks) v["checks"] = *validate.checks;
  SuiteConfig sc;
  sc.options = validate.options;
  v["options"] = sc.to_json()["options"];
  j["validate"] = v;
  return j;
}

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["config"] = config;
  j["version"] = version;
  j["timestamp"] = timestamp;
  nlohmann::ordered_json outs = nlohmann::ordered_json::array();
  for (const auto& [file, sum] : outputs) outs.push_back({{"file", file}, {"sha256", sum}});
  j["outputs"] = outs;
  j["seeds"] = seeds;
  j["exit_code"] = exit_code;
  return j;
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("sha256 initialisation failed");
  }
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

namespace {

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Collects output files; each is written fully before it is hashed.
struct Outputs {
  fs::path dir;
  RunManifest& manifest;

  template <class Writer>
  void write(const std::string& name, Writer&& w) {
    const fs::path p = dir / name;
    {
      std::ofstream os(p, std::ios::binary);
      if (!os) throw std::runtime_error("cannot write " + p.string());
      w(os);
      if (!os) throw std::runtime_error("write failed for " + p.string());
    }
    manifest.outputs.emplace_back(name, sha256_file(p.string()));
  }
  void write_json(const std::string& name, const nlohmann::ordered_json& j) {
    write(name, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  }
};

std::string indexed(const std::string& stem, std::int64_t k, std::int64_t total, const std::string& ext) {
  return total == 1 ? stem + ext : stem + "_" + std::to_string(k) + ext;
}

nlohmann::ordered_json estimate_json(const Estimate& e) {
  return {{"value", e.value}, {"se", e.se}, {"ci_halfwidth", e.ci_halfwidth}, {"n", e.n}};
}

GreedySpec forest_spec(const RunConfig::ForestOptions& f) {
  switch (f.kind) {
    case ForestKind::rst: return {Level::radial(f.norm), f.norm};
    case ForestKind::dsf: return {Level::along((1.0 / norm2(f.direction)) * f.direction), Norm::l2};
    case ForestKind::greedy: return {Level::along((1.0 / norm2(f.direction)) * f.direction), f.norm};
    default: break;
  }
  throw ConfigError("config.forest.kind: voronoi kinds are built from cluster scenes");
}

PointSet load_or_sample(const RunConfig& cfg, std::uint32_t replicate) {
  if (!cfg.forest.input.empty()) {
    std::ifstream in(cfg.forest.input);
    if (!in) throw std::runtime_error("cannot read " + cfg.forest.input);
    return enforce_nonequidistance(read_points_csv(in));
  }
  return enforce_nonequidistance(sample(cfg.sampler, replicate));
}

void write_summary_line(const std::string& what) { std::cout << what << '\n'; }

void cmd_sample(const RunConfig& cfg, Outputs& out) {
  for (std::int64_t k = 0; k < cfg.replicates; ++k) {
    const PointSet ps = sample(cfg.sampler, static_cast<std::uint32_t>(k));
    const std::string name = indexed("points", k, cfg.replicates, ".csv");
    out.write(name, [&](std::ostream& os) { write_points_csv(os, ps); });
    write_summary_line(name + ": " + std::to_string(ps.size()) + " points");
  }
}

void cmd_build(const RunConfig& cfg, Outputs& out) {
  const bool voronoi = cfg.forest.kind == ForestKind::voronoi_local || cfg.forest.kind == ForestKind::voronoi_internal;
  if (voronoi && !cfg.forest.input.empty())
    throw ConfigError("config.forest.input: voronoi kinds sample their own cluster scenes");
  for (std::int64_t k = 0; k < cfg.replicates; ++k) {
    const auto rep = static_cast<std::uint32_t>(k);
    Forest f;
    if (voronoi) {
      const ClusterScene scene = sample_cluster_scene(cfg.sampler.intensity, cfg.forest.node_intensity,
                                                      cfg.sampler.window_radius, cfg.seed, rep);
      f = cfg.forest.kind == ForestKind::voronoi_local ? build_voronoi_local(scene) : build_voronoi_internal(scene);
    } else {
      f = build_greedy(load_or_sample(cfg, rep), forest_spec(cfg.forest));
    }
    out.write(indexed("points", k, cfg.replicates, ".csv"), [&](std::ostream& os) { write_points_csv(os, *f.points); });
    const std::string name = indexed("forest", k, cfg.replicates, ".csv");
    out.write(name, [&](std::ostream& os) { write_forest_csv(os, f); });
    write_summary_line(name + ": " + std::to_string(f.size()) + " vertices, " + std::to_string(f.edge_count()) +
                       " edges, " + std::to_string(f.root_count()) + " roots, " + std::to_string(f.censored_count()) +
                       " censored");
  }
}

void cmd_curve(const RunConfig& cfg, Outputs& out) {
  const AnalyticCurve c = evaluate_curve(cfg.curve.name, cfg.curve.params, cfg.curve.min, cfg.curve.max, cfg.curve.points);
  out.write("curve.csv", [&](std::ostream& os) { write_curve_csv(os, c); });
  out.write("curve.json", [&](std::ostream& os) { write_curve_sidecar(os, c); });
  write_summary_line("curve.csv: " + c.name + ", " + std::to_string(c.values.size()) + " points");
}

void cmd_paths(const RunConfig& cfg, Outputs& out) {
  const bool radial = cfg.forest.kind == ForestKind::rst;
  const Forest f = build_greedy(load_or_sample(cfg, 0), forest_spec(cfg.forest));
  std::vector<std::size_t> order;
  for (std::size_t v = 0; v < f.size(); ++v)
    if (!(f.points->has_origin && v == 0)) order.push_back(v);
  auto gap = [&](std::size_t v) { return std::abs(norm2(f.position(v)) - cfg.paths.start_radius); };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return gap(a) < gap(b); });
  if (order.size() > static_cast<std::size_t>(cfg.paths.count)) order.resize(static_cast<std::size_t>(cfg.paths.count));

  nlohmann::ordered_json summary = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < order.size(); ++k) {
    const PathTrace t = radial ? radial_path(f, order[k]) : directed_path(f, order[k], static_cast<std::size_t>(cfg.paths.max_hops));
    const std::string name = "path_" + std::to_string(k) + ".csv";
    out.write(name, [&](std::ostream& os) { write_path_csv(os, t); });
    summary.push_back({{"file", name},
                       {"start", order[k]},
                       {"hops", t.hop_count()},
                       {"max_deviation", max_deviation(t)},
                       {"censored", t.censored}});
  }
  out.write_json("paths.json", summary);
  write_summary_line("paths.json: " + std::to_string(order.size()) + " paths");
}

void cmd_estimate(const RunConfig& cfg, Outputs& out) {
  const PathConstants c = estimate_path_constants(cfg.estimate.transitions, cfg.seed, cfg.estimate.alphas);
  nlohmann::ordered_json j;
  j["p"] = c.p.value;
  j["p_y"] = c.p_y.value;
  nlohmann::ordered_json la = nlohmann::ordered_json::object(), lci = nlohmann::ordered_json::object();
  for (const auto& [a, e] : c.l_alpha) {
    la[format_double(a)] = e.value;
    lci[format_double(a)] = e.ci_halfwidth;
  }
  j["l_alpha"] = la;
  j["n"] = c.n_transitions;
  j["ci"] = {{"p", c.p.ci_halfwidth}, {"p_y", c.p_y.ci_halfwidth}, {"l_alpha", lci}};
  j["method"] = "batch means, 30 batches, 95% t interval";
  out.write_json("constants.json", j);
  std::cout << "p   = " << format_double(c.p.value) << " +- " << format_double(c.p.ci_halfwidth) << '\n'
            << "p_y = " << format_double(c.p_y.value) << " +- " << format_double(c.p_y.ci_halfwidth) << '\n';
  for (const auto& [a, e] : c.l_alpha)
    std::cout << "l_" << format_double(a) << " = " << format_double(e.value) << " +- " << format_double(e.ci_halfwidth) << '\n';
}

void cmd_shape(const RunConfig& cfg, Outputs& out, RunManifest& m) {
  if (cfg.sampler.kind != SamplerKind::palm_poisson_disk) throw ConfigError("config.sampler.kind: shape needs palm_poisson_disk");
  double p = 0.0;
  if (cfg.shape.p) {
    p = *cfg.shape.p;
  } else {
    const std::uint64_t s = mix64(cfg.seed ^ 0x5eed);
    p = estimate_path_constants(20000, s).p.value;
    m.seeds["progress_estimate"] = s;
  }
  const double outer = (1.0 + cfg.shape.eps) * static_cast<double>(cfg.shape.k) * p;
  if (outer > cfg.sampler.trusted_radius())
    throw ConfigError("config.shape.k: (1+eps) k p = " + format_double(outer) + " exceeds the trusted radius " +
                      format_double(cfg.sampler.trusted_radius()));
  std::vector<ShapeResult> res(static_cast<std::size_t>(cfg.replicates));
  parallel_for(res.size(), [&](std::size_t i) {
    const Forest f = build_rst(sample_palm_poisson(cfg.sampler, static_cast<std::uint32_t>(i)));
    res[i] = shape_statistic(f, cfg.shape.k, p, cfg.shape.eps, cfg.sampler.trusted_radius());
  });
  RunningStats g;
  std::int64_t held = 0;
  out.write("shape.csv", [&](std::ostream& os) {
    os << "replicate,k,generation_size,g_over_k2,sandwich\n";
    for (std::size_t i = 0; i < res.size(); ++i) {
      os << i << ',' << cfg.shape.k << ',' << res[i].generation_size << ',' << format_double(res[i].g_over_k2) << ','
         << (res[i].sandwich ? 1 : 0) << '\n';
      g.add(res[i].g_over_k2);
      held += res[i].sandwich ? 1 : 0;
    }
  });
  const Estimate e = iid_estimate(g);
  nlohmann::ordered_json j;
  j["k"] = cfg.shape.k;
  j["p"] = p;
  j["g_over_k2"] = estimate_json(e);
  j["pi_p_squared"] = kPi * p * p;
  j["sandwich_frequency"] = static_cast<double>(held) / static_cast<double>(res.size());
  out.write_json("shape.json", j);
  std::cout << "G_k/k^2 = " << format_double(e.value) << " +- " << format_double(e.ci_halfwidth)
            << " (pi p^2 = " << format_double(kPi * p * p) << ")\n";
}

void cmd_validate(const RunConfig& cfg, Outputs& out, RunManifest& m) {
  SuiteConfig suite = named_suite(cfg.validate.suite, cfg.seed);
  if (cfg.validate.checks) {
    suite.checks = *cfg.validate.checks;
    suite.options.clear();
  }
  for (const auto& [name, o] : cfg.validate.options) suite.options[name] = o;
  for (const auto& name : suite.checks) {
    auto it = suite.options.find(name);
    m.seeds[name] = it != suite.options.end() && it->second.seed ? *it->second.seed : check_seed(suite.seed, name);
  }
  const auto reports = run_validation_suite(suite);
  out.write_json("report.json", reports_to_json(reports));
  print_report_table(std::cout, reports);
  if (!all_pass(reports)) m.exit_code = 1;
}

}  // namespace

RunManifest run(const RunConfig& cfg) {
  RunManifest m;
  m.config = cfg.to_json();
  m.timestamp = utc_timestamp();
  m.seeds["seed"] = cfg.seed;
  if (cfg.workers) set_default_workers(cfg.workers);

  std::string dir = cfg.output_dir;
  if (dir.empty()) {
    const char* env = std::getenv(kOutputDirEnv);
    dir = env && *env ? env : ".";
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create output directory " + dir);
  Outputs out{dir, m};

  SamplerConfig s = cfg.sampler;
  s.validate();
  switch (cfg.command) {
    case Command::sample: cmd_sample(cfg, out); break;
    case Command::build: cmd_build(cfg, out); break;
    case Command::curve: cmd_curve(cfg, out); break;
    case Command::paths: cmd_paths(cfg, out); break;
    case Command::estimate: cmd_estimate(cfg, out); break;
    case Command::shape: cmd_shape(cfg, out, m); break;
    case Command::validate: cmd_validate(cfg, out, m); break;
  }

  const fs::path mp = fs::path(dir) / "manifest.json";
  std::ofstream os(mp);
  if (!os) throw std::runtime_error("cannot write " + mp.string());
  os << m.to_json().dump(2) << '\n';
  return m;
}

}  // namespace rst
