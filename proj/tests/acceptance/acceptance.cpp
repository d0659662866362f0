// Runs the acceptance suite and prints one PASS/FAIL line per criterion.
// Usage: acceptance [seed]
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "rst/validation.hpp"

namespace {

struct Criterion {
  int id;
  const char* title;
  std::vector<std::string> checks;
};

const std::vector<Criterion> kCriteria = {
    {1, "edge length law matches the closed form (KS)", {"edge_length_law"}},
    {2, "origin degree mean and bound", {"mean_degree_origin", "degree_origin_bound"}},
    {3, "large-distance edge constants", {"asymptotic_constants"}},
    {4, "directed path constants p, p_y, l_1", {"path_constants"}},
    {5, "hop count over distance tends to 1/p", {"hop_ratio"}},
    {6, "generation sets grow like pi p^2 k^2", {"shape_theorem"}},
    {7, "spatial averages of edge length powers", {"spatial_averages"}},
    {8, "structural oracles", {"structural_oracles"}},
    {9, "maximal deviation scales like r^(1/2)", {"deviation_scaling"}},
    {10, "analytic self-checks", {"analytic_self_checks"}},
};

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t seed = 1;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  const rst::SuiteConfig suite = rst::named_suite("acceptance", seed);

  bool all = true;
  std::vector<rst::ValidationReport> everything;
  for (const Criterion& c : kCriteria) {
    std::vector<rst::ValidationReport> reports;
    for (const auto& name : c.checks) {
      const auto it = suite.options.find(name);
      const auto r = rst::run_check(name, it == suite.options.end() ? rst::CheckOptions{} : it->second, seed);
      reports.insert(reports.end(), r.begin(), r.end());
    }
    const bool ok = !reports.empty() && rst::all_pass(reports);
    all = all && ok;
    std::printf("criterion %2d %s: %s\n", c.id, ok ? "PASS" : "FAIL", c.title);
    for (const auto& r : reports)
      std::printf("    %-44s est %-12.6g ref %-12.6g tol %-10.4g %s%s%s\n", r.check.c_str(), r.estimate, r.reference,
                  r.threshold, r.pass ? "ok" : "FAIL", r.detail.empty() ? "" : "  ", r.detail.c_str());
    std::fflush(stdout);
    everything.insert(everything.end(), reports.begin(), reports.end());
  }
  std::printf("%s: %zu reports, seed %llu\n", all ? "ALL PASS" : "SOME FAILED", everything.size(),
              static_cast<unsigned long long>(seed));
  return all ? 0 : 1;
}
