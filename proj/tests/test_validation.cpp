#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "rst/parallel.hpp"
#include "rst/validation.hpp"

using namespace rst;

TEST_SUITE("validation") {

TEST_CASE("empty selection succeeds with no reports") {
  SuiteConfig c;
  const auto r = run_validation_suite(c);
  CHECK(r.empty());
  CHECK(all_pass(r));
}

TEST_CASE("unknown checks are rejected") {
  CHECK_THROWS_AS(run_check("no_such_check", {}, 1), std::invalid_argument);
  SuiteConfig c;
  c.checks = {"point_count", "bogus"};
  CHECK_THROWS_AS(run_validation_suite(c), std::invalid_argument);
  CHECK_THROWS_AS(named_suite("nightly"), std::invalid_argument);
}

TEST_CASE("every suite entry is a registered check") {
  for (const auto& s : suite_names())
    for (const auto& name : named_suite(s).checks)
      CHECK(std::find(check_names().begin(), check_names().end(), name) != check_names().end());
}

TEST_CASE("a single check yields its own reports") {
  CheckOptions o;
  o.samples = 2000;
  const auto r = run_check("mean_degree_origin", o, 3);
  REQUIRE(r.size() == 1);
  CHECK(r[0].registry == "mean_degree_origin");
  CHECK(r[0].reference == doctest::Approx(2.55753).epsilon(1e-5));
  CHECK(r[0].n == 2000);
  CHECK(r[0].ci_halfwidth.has_value());
  CHECK(r[0].pass == (std::abs(r[0].estimate - r[0].reference) <= r[0].threshold));
}

TEST_CASE("threshold overrides apply per report") {
  CheckOptions o;
  o.samples = 200;
  o.thresholds["mean_degree_origin/mean"] = 0.0;
  const auto r = run_check("mean_degree_origin", o, 3);
  REQUIRE(r.size() == 1);
  CHECK(r[0].threshold == 0.0);
  CHECK_FALSE(r[0].pass);
}

TEST_CASE("reports are reproducible and independent of the worker count") {
  SuiteConfig c;
  c.seed = 7;
  c.checks = {"point_count", "crossing_identity"};
  c.options["point_count"].samples = 50;
  c.options["crossing_identity"].samples = 4;
  set_default_workers(1);
  const std::string one = reports_to_json(run_validation_suite(c)).dump();
  set_default_workers(4);
  const std::string four = reports_to_json(run_validation_suite(c)).dump();
  set_default_workers(0);
  CHECK(one == four);
  CHECK(one.find("runtime") == std::string::npos);
  CHECK(reports_to_json(run_validation_suite(c), true).dump().find("runtime") != std::string::npos);
}

TEST_CASE("explicit seeds override derived ones") {
  CHECK(check_seed(1, "a") != check_seed(1, "b"));
  CHECK(check_seed(1, "a") != check_seed(2, "a"));
  CheckOptions o;
  o.samples = 20;
  o.seed = 99;
  const auto r = run_check("point_count", o, 1);
  REQUIRE_FALSE(r.empty());
  CHECK(r[0].seed == 99);
}

TEST_CASE("suite config parsing is strict") {
  using nlohmann::json;
  const SuiteConfig c = SuiteConfig::from_json(
      json::parse(R"({"checks": ["point_count"], "seed": 5, "options": {"point_count": {"samples": 10, "thresholds": {"point_count/mean": 3}}}})"));
  CHECK(c.seed == 5);
  CHECK(c.options.at("point_count").samples == 10);
  CHECK(c.options.at("point_count").thresholds.at("point_count/mean") == 3.0);
  CHECK(SuiteConfig::from_json(c.to_json()).to_json() == c.to_json());

  auto fails_with = [](const char* text, const char* needle) {
    try {
      SuiteConfig::from_json(json::parse(text));
    } catch (const std::invalid_argument& e) {
      return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
  };
  CHECK(fails_with(R"({"checks": ["point_count"], "sed": 1})", "sed"));
  CHECK(fails_with(R"({"checks": "point_count"})", "checks"));
  CHECK(fails_with(R"({"checks": ["nope"]})", "nope"));
  CHECK(fails_with(R"({"options": {"point_count": {"samples": -3}}})", "samples"));
}

TEST_CASE("report table lists every report") {
  CheckOptions o;
  o.samples = 20;
  const auto r = run_check("point_count", o, 1);
  std::ostringstream os;
  print_report_table(os, r);
  for (const auto& rep : r) CHECK(os.str().find(rep.check) != std::string::npos);
}

}
