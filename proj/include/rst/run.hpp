#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rst/forest.hpp"
#include "rst/point_process.hpp"
#include "rst/validation.hpp"

namespace rst {

inline constexpr const char* kVersion = "0.1.0";

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "RST_OUTPUT_DIR";

enum class Command { sample, build, curve, paths, estimate, shape, validate };

std::string to_string(Command c);
Command parse_command(const std::string& s);

/// Raised for malformed or out-of-range configuration; the message starts with
/// the path of the offending field, e.g. "config.sampler.lambda".
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  Command command = Command::sample;
  std::uint64_t seed = 1;
  std::string output_dir;  // empty: $RST_OUTPUT_DIR, then the working directory
  std::int64_t replicates = 1;
  unsigned workers = 0;  // 0: all hardware threads

  SamplerConfig sampler;

  struct ForestOptions {
    ForestKind kind = ForestKind::rst;
    Norm norm = Norm::l2;
    Vec2 direction{-1.0, 0.0};
    double node_intensity = 10.0;  // voronoi kinds: lambda1 (heads use sampler.lambda)
    std::string input;             // optional points CSV replacing the sampler
  } forest;

  struct CurveOptions {
    std::string name;
    std::map<std::string, double> params;
    double min = 0.0;
    double max = 1.0;
    int points = 101;
  } curve;

  struct PathOptions {
    std::int64_t count = 10;
    double start_radius = 10.0;
    std::int64_t max_hops = 100000;
  } paths;

  struct EstimateOptions {
    std::int64_t transitions = 20000;
    std::vector<double> alphas{0.5, 1.0, 2.0};
  } estimate;

  struct ShapeOptions {
    std::int64_t k = 80;
    double eps = 0.3;
    std::optional<double> p;  // estimated from a DSF walk when absent
  } shape;

  struct ValidateOptions {
    std::string suite = "core";
    std::optional<std::vector<std::string>> checks;  // replaces the suite's list when set
    std::map<std::string, CheckOptions> options;
  } validate;

  nlohmann::ordered_json to_json() const;
};

/// Strict parsing of a JSON config; unknown keys, type mismatches and range
/// violations raise ConfigError naming the field.
RunConfig parse_config(const std::string& text);
RunConfig config_from_json(const nlohmann::json& j);

struct RunManifest {
  nlohmann::ordered_json config;
  std::string version = kVersion;
  std::string timestamp;
  std::vector<std::pair<std::string, std::string>> outputs;  // (file name, sha256 hex)
  std::map<std::string, std::uint64_t> seeds;
  int exit_code = 0;  // 0 success, 1 validation failure

  nlohmann::ordered_json to_json() const;
};

std::string sha256_file(const std::string& path);

/// Executes the command, writes its outputs and manifest.json into the output
/// directory, and prints a short summary to stdout.
RunManifest run(const RunConfig& cfg);

}  // namespace rst
