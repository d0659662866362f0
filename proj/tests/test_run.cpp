#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "rst/run.hpp"

using namespace rst;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("rst_test_run_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_SUITE("run") {

TEST_CASE("minimal config takes the defaults") {
  const RunConfig c = parse_config(R"({"command": "sample"})");
  CHECK(c.command == Command::sample);
  CHECK(c.seed == 1);
  CHECK(c.replicates == 1);
  CHECK(c.sampler.intensity == 1.0);
  CHECK(c.forest.kind == ForestKind::rst);
  CHECK(c.estimate.transitions == 20000);
  CHECK(c.validate.suite == "core");
}

TEST_CASE("config round trips through JSON") {
  const RunConfig c = parse_config(
      R"({"command": "build", "seed": 12, "sampler": {"lambda": 2.5, "window_radius": 7},
          "forest": {"kind": "dsf", "direction": [0, 1]}})");
  CHECK(c.sampler.intensity == 2.5);
  CHECK(c.forest.direction == Vec2{0.0, 1.0});
  const RunConfig back = config_from_json(nlohmann::json::parse(c.to_json().dump()));
  CHECK(back.to_json() == c.to_json());
}

TEST_CASE("config errors name the offending field") {
  CHECK(error_of(R"({"command": "sample", "sampler": {"lamda": 1}})").find("config.sampler") != std::string::npos);
  CHECK(error_of(R"({"command": "sample", "sampler": {"lamda": 1}})").find("lamda") != std::string::npos);
  CHECK(error_of(R"({"command": "sample", "sampler": {"lambda": -1}})").find("config.sampler.lambda") != std::string::npos);
  CHECK(error_of(R"({"seed": 3})").find("config.command") != std::string::npos);
  CHECK(error_of(R"({"command": "sample", "seed": "x"})").find("config.seed") != std::string::npos);
  CHECK(error_of(R"({"command": "fly"})").find("config.command") != std::string::npos);
  CHECK(error_of(R"({"command": "curve"})").find("config.curve.name") != std::string::npos);
  CHECK(error_of(R"({"command": "estimate", "estimate": {"transitions": 10}})").find("config.estimate.transitions") !=
        std::string::npos);
  CHECK(error_of("{not json").find("invalid JSON") != std::string::npos);
}

TEST_CASE("manifest checksums match the written files") {
  const fs::path dir = scratch_dir("manifest");
  RunConfig c = parse_config(R"({"command": "build", "seed": 4, "sampler": {"window_radius": 6}})");
  c.output_dir = dir.string();
  const RunManifest m = run(c);
  REQUIRE(m.outputs.size() == 2);
  for (const auto& [name, sum] : m.outputs) CHECK(sha256_file((dir / name).string()) == sum);
  const auto j = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(j["version"] == kVersion);
  CHECK(j["exit_code"] == 0);
  CHECK(j["config"]["seed"] == 4);
  fs::remove_all(dir);
}

TEST_CASE("sha256 of a known file") {
  const fs::path dir = scratch_dir("sha");
  fs::create_directories(dir);
  std::ofstream(dir / "abc.txt", std::ios::binary) << "abc";
  CHECK(sha256_file((dir / "abc.txt").string()) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  fs::remove_all(dir);
}

TEST_CASE("reruns write identical outputs") {
  const fs::path a = scratch_dir("rerun_a"), b = scratch_dir("rerun_b");
  for (const char* cmd : {"sample", "build", "paths", "estimate"}) {
    RunConfig c = parse_config(std::string(R"({"command": ")") + cmd +
                               R"(", "seed": 9, "sampler": {"window_radius": 12},
                                  "paths": {"count": 3, "start_radius": 8}, "estimate": {"transitions": 2000}})");
    c.output_dir = a.string();
    const RunManifest ma = run(c);
    c.output_dir = b.string();
    const RunManifest mb = run(c);
    REQUIRE(ma.outputs == mb.outputs);
    for (const auto& [name, sum] : ma.outputs) CHECK(slurp(a / name) == slurp(b / name));
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("curve command writes the grid and a sidecar") {
  const fs::path dir = scratch_dir("curve");
  RunConfig c = parse_config(R"({"command": "curve", "curve": {"name": "edge_length_ccdf", "params": {"x": 1}}})");
  c.output_dir = dir.string();
  run(c);
  std::istringstream in(slurp(dir / "curve.csv"));
  std::string line, last;
  int rows = -1;
  while (std::getline(in, line)) {
    ++rows;
    last = line;
  }
  CHECK(rows == 101);
  CHECK(last == "1,0");
  CHECK(nlohmann::json::parse(slurp(dir / "curve.json"))["name"] == "edge_length_ccdf");
  fs::remove_all(dir);
}

TEST_CASE("output directory falls back to the environment") {
  const fs::path dir = scratch_dir("env");
  setenv(kOutputDirEnv, dir.string().c_str(), 1);
  run(parse_config(R"({"command": "sample", "sampler": {"window_radius": 3}})"));
  unsetenv(kOutputDirEnv);
  CHECK(fs::exists(dir / "points.csv"));
  CHECK(fs::exists(dir / "manifest.json"));
  fs::remove_all(dir);
}

}
