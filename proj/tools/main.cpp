#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rst/format.hpp"
#include "rst/run.hpp"

namespace {

using nlohmann::json;

constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

// Each flag writes into the JSON config only when given, so flags override the file.
struct Flag {
  CLI::Option* opt = nullptr;
  std::vector<std::string> path;
  enum Kind { number, integer, text, pair, list, names } kind = text;
  std::string value;
};

struct FlagSet {
  std::vector<Flag> flags;
  std::vector<std::string> params;  // curve key=value pairs
  CLI::Option* params_opt = nullptr;

  void add(CLI::App* app, const std::string& name, std::vector<std::string> path, Flag::Kind kind,
           const std::string& help) {
    flags.push_back({nullptr, std::move(path), kind, {}});
    flags.back().opt = app->add_option(name, flags.back().value, help)->type_name(type_name(kind));
  }

  static const char* type_name(Flag::Kind k) {
    switch (k) {
      case Flag::number: return "NUM";
      case Flag::integer: return "INT";
      case Flag::text: return "TEXT";
      case Flag::pair: return "X,Y";
      case Flag::list: return "NUM,...";
      case Flag::names: return "NAME,...";
    }
    return "TEXT";
  }

  void apply(json& cfg) const {
    for (const auto& f : flags) {
      if (!f.opt || f.opt->count() == 0) continue;
      json* node = &cfg;
      for (std::size_t i = 0; i + 1 < f.path.size(); ++i) {
        json& child = (*node)[f.path[i]];
        if (child.is_null()) child = json::object();
        node = &child;
      }
      (*node)[f.path.back()] = convert(f);
    }
    if (params_opt && params_opt->count() > 0) {
      json& p = cfg["curve"]["params"];
      if (p.is_null()) p = json::object();
      for (const auto& kv : params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--param", "expected key=value, got '" + kv + "'");
        p[kv.substr(0, eq)] = parse(kv.substr(eq + 1), "--param " + kv.substr(0, eq));
      }
    }
  }

  static double parse(std::string_view s, const std::string& flag) {
    try {
      return rst::parse_double(s, flag.c_str());
    } catch (const std::exception&) {
      throw CLI::ValidationError(flag, "expected a number, got '" + std::string(s) + "'");
    }
  }

  static json convert(const Flag& f) {
    const std::string name = f.opt->get_name();
    switch (f.kind) {
      case Flag::number: return parse(f.value, name);
      case Flag::integer:
        try {
          const std::int64_t v = rst::parse_int(f.value, name.c_str());
          if (v >= 0) return static_cast<std::uint64_t>(v);  // seeds must read back as unsigned
          return v;
        } catch (const std::exception&) {
          throw CLI::ValidationError(name, "expected an integer, got '" + f.value + "'");
        }
      case Flag::text: return f.value;
      case Flag::pair: {
        const auto parts = rst::split_csv(f.value);
        if (parts.size() != 2) throw CLI::ValidationError(name, "expected x,y");
        return json::array({parse(parts[0], name), parse(parts[1], name)});
      }
      case Flag::list: {
        json arr = json::array();
        for (const auto& s : rst::split_csv(f.value)) arr.push_back(parse(s, name));
        return arr;
      }
      case Flag::names: {
        json arr = json::array();
        if (!f.value.empty())
          for (const auto& s : rst::split_csv(f.value)) arr.push_back(std::string(s));
        return arr;
      }
    }
    return nullptr;
  }
};

void add_sampler_flags(CLI::App* s, FlagSet& fs) {
  fs.add(s, "--kind", {"sampler", "kind"}, Flag::text, "palm_poisson_disk | binomial_disk | radial_chain");
  fs.add(s, "--lambda", {"sampler", "lambda"}, Flag::number, "intensity (points per unit area)");
  fs.add(s, "--radius", {"sampler", "window_radius"}, Flag::number, "window radius");
  fs.add(s, "--guard", {"sampler", "guard_margin"}, Flag::number, "guard margin as a fraction of the radius");
  fs.add(s, "--count", {"sampler", "count"}, Flag::integer, "point count (binomial_disk, radial_chain)");
}

void add_forest_flags(CLI::App* s, FlagSet& fs) {
  fs.add(s, "--forest", {"forest", "kind"}, Flag::text, "rst | dsf | greedy | voronoi_local | voronoi_internal");
  fs.add(s, "--norm", {"forest", "norm"}, Flag::text, "l2 | linf");
  fs.add(s, "--direction", {"forest", "direction"}, Flag::pair, "direction x,y for dsf and greedy");
  fs.add(s, "--node-lambda", {"forest", "node_lambda"}, Flag::number, "node intensity for voronoi kinds");
  fs.add(s, "--input", {"forest", "input"}, Flag::text, "points CSV to use instead of sampling");
}

void add_common_flags(CLI::App* s, FlagSet& fs) {
  fs.add(s, "--seed", {"seed"}, Flag::integer, "base seed");
  fs.add(s, "--output-dir,-o", {"output_dir"}, Flag::text, "output directory (default $RST_OUTPUT_DIR or .)");
  fs.add(s, "--replicates", {"replicates"}, Flag::integer, "number of replicates");
  fs.add(s, "--workers", {"workers"}, Flag::integer, "worker threads (0 = all cores)");
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rst::ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw rst::ConfigError(path + ": invalid JSON: " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial spanning trees and directed spanning forests on Poisson point processes"};
  app.require_subcommand(1);
  std::string config_path, suite_config_path;
  app.add_option("--config,-c", config_path, "JSON config file; flags override its values");

  FlagSet fs;
  fs.flags.reserve(128);  // options hold pointers into this vector

  auto* sample = app.add_subcommand("sample", "sample point sets and write points CSV");
  add_common_flags(sample, fs);
  add_sampler_flags(sample, fs);

  auto* build = app.add_subcommand("build", "build a forest and write points and forest CSV");
  add_common_flags(build, fs);
  add_sampler_flags(build, fs);
  add_forest_flags(build, fs);

  auto* curve = app.add_subcommand("curve", "evaluate a closed-form curve");
  add_common_flags(curve, fs);
  fs.add(curve, "--name", {"curve", "name"}, Flag::text, "curve name");
  fs.add(curve, "--x", {"curve", "params", "x"}, Flag::number, "distance |X| of the reference point");
  fs.add(curve, "--rmin,--min", {"curve", "min"}, Flag::number, "first abscissa");
  fs.add(curve, "--rmax,--max", {"curve", "max"}, Flag::number, "last abscissa");
  fs.add(curve, "--n,--points", {"curve", "points"}, Flag::integer, "number of abscissae");
  fs.params_opt = curve->add_option("--param", fs.params, "extra curve parameter key=value")->type_name("KEY=NUM");

  auto* paths = app.add_subcommand("paths", "extract ancestor paths");
  add_common_flags(paths, fs);
  add_sampler_flags(paths, fs);
  add_forest_flags(paths, fs);
  fs.add(paths, "--paths", {"paths", "count"}, Flag::integer, "number of paths");
  fs.add(paths, "--start-radius", {"paths", "start_radius"}, Flag::number, "paths start at vertices nearest this radius");
  fs.add(paths, "--max-hops", {"paths", "max_hops"}, Flag::integer, "hop limit for directed paths");

  auto* estimate = app.add_subcommand("estimate", "estimate long-run path constants along a DSF path");
  add_common_flags(estimate, fs);
  fs.add(estimate, "--transitions", {"estimate", "transitions"}, Flag::integer, "number of hops");
  fs.add(estimate, "--alphas", {"estimate", "alphas"}, Flag::list, "exponents for the power-length means");

  auto* shape = app.add_subcommand("shape", "generation sizes of RST replicates");
  add_common_flags(shape, fs);
  add_sampler_flags(shape, fs);
  fs.add(shape, "--k", {"shape", "k"}, Flag::integer, "generation");
  fs.add(shape, "--eps", {"shape", "eps"}, Flag::number, "sandwich tolerance");
  fs.add(shape, "--p", {"shape", "p"}, Flag::number, "mean progress (estimated when omitted)");

  auto* validate = app.add_subcommand("validate", "run validation checks");
  add_common_flags(validate, fs);
  fs.add(validate, "--suite", {"validate", "suite"}, Flag::text, "acceptance | core");
  fs.add(validate, "--checks", {"validate", "checks"}, Flag::names, "comma-separated checks replacing the suite");
  validate->add_option("--suite-config", suite_config_path, "JSON with checks, seed and per-check options");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  rst::RunConfig cfg;
  try {
    json j = config_path.empty() ? json::object() : load_config_file(config_path);
    if (!j.is_object()) throw rst::ConfigError("config: expected a JSON object");
    if (!suite_config_path.empty()) {
      const rst::SuiteConfig sc = rst::SuiteConfig::from_json(load_config_file(suite_config_path));
      j["seed"] = sc.seed;
      j["validate"]["checks"] = sc.checks;
      j["validate"]["options"] = json::parse(sc.to_json()["options"].dump());
    }
    fs.apply(j);
    j["command"] = app.get_subcommands().front()->get_name();
    cfg = rst::config_from_json(j);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const rst::RunManifest m = rst::run(cfg);
    return m.exit_code == 0 ? 0 : kExitValidation;
  } catch (const rst::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
