#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace rst {

/// One compared quantity. pass holds exactly when |estimate - reference| <= threshold;
/// KS reports store the distance as the estimate against a reference of 0, and
/// count-type reports store the number of violations against 0.
struct ValidationReport {
  std::string check;      // report name, "<registry check>/<part>"
  std::string registry;   // registry check that produced it
  double estimate = 0.0;
  double reference = 0.0;
  std::string provenance;  // where the reference value comes from
  std::optional<double> ci_halfwidth;
  std::optional<double> ks_distance;
  double threshold = 0.0;
  bool pass = false;
  double runtime = 0.0;  // seconds, for the whole registry check
  std::uint64_t seed = 0;
  std::int64_t n = 0;
  std::string detail;
};

struct CheckOptions {
  std::optional<std::int64_t> samples;         // primary replicate count
  std::optional<std::uint64_t> seed;           // replaces the derived per-check seed
  std::map<std::string, double> thresholds;    // keyed by report name
};

struct SuiteConfig {
  std::vector<std::string> checks;
  std::uint64_t seed = 1;
  std::map<std::string, CheckOptions> options;

  /// Strict JSON: {"checks": [...], "seed": n, "options": {name: {"samples", "seed", "thresholds"}}}.
  static SuiteConfig from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
};

/// Every registered check name.
const std::vector<std::string>& check_names();

/// Named suites: "acceptance" (full-size criteria) and "core" (reduced sample sizes).
SuiteConfig named_suite(const std::string& name, std::uint64_t seed = 1);
const std::vector<std::string>& suite_names();

/// Seed used by a check when no explicit seed is configured.
std::uint64_t check_seed(std::uint64_t suite_seed, const std::string& check);

/// Runs one registered check. Throws std::invalid_argument for unknown names.
std::vector<ValidationReport> run_check(const std::string& name, const CheckOptions& opts, std::uint64_t suite_seed);

/// Runs the checks in order; reports are concatenated.
std::vector<ValidationReport> run_validation_suite(const SuiteConfig& cfg);

bool all_pass(const std::vector<ValidationReport>& reports);

/// Runtime is omitted unless requested so that reports are byte-reproducible.
nlohmann::ordered_json reports_to_json(const std::vector<ValidationReport>& reports, bool include_runtime = false);

void print_report_table(std::ostream& os, const std::vector<ValidationReport>& reports);

}  // namespace rst
