// Runs every verification suite and prints one pass/fail line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "witt/suites.hpp"

using namespace witt;

namespace {

struct Requirement {
  std::string prefix;
  std::size_t min_cases;
  bool allow_unknown;
};

struct Criterion {
  int number;
  std::string suite;
  std::vector<Requirement> requirements;
  double time_limit = 0;  // seconds; 0 for none
};

std::string describe(const Requirement& q, const Totals& t) {
  return q.prefix + " has " + std::to_string(t.total()) + " cases (" + std::to_string(t.fail) + " fail, " +
         std::to_string(t.unknown) + " unknown), needs " + std::to_string(q.min_cases) +
         (q.allow_unknown ? "" : " with none unknown");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "products", {{"H/pair/", 500, false}, {"S11/pair/", 500, false}, {"S27/pair/", 500, false},
                       {"H/anticommuting/", 50, false}, {"S11/anticommuting/", 50, false}, {"S27/anticommuting/", 50, false}}, 30},
      {2, "morita", {{"S11/", 200, false}, {"S27/", 200, false}, {"S3m3/", 200, false}}},
      {3, "lambda", {{"division/H/", 200, false}, {"division/I3/", 200, false}, {"split/S11/", 200, false},
                     {"split/S27/", 200, false}}},
      {4, "relations", {{"even/H/r1/i0/", 50, false}, {"even/H/r1/i1/", 50, false}, {"even/H/r2/i0/", 50, false},
                        {"even/H/r2/i1/", 50, false}, {"even/H/r2/i2/", 50, false}, {"even/H/r3/i0/", 50, false},
                        {"even/H/r3/i1/", 50, false}, {"even/H/r3/i2/", 50, false}, {"even/H/r3/i3/", 50, false},
                        {"odd/H/nq-i", 1, false}, {"odd/H/nq-i+j", 1, false}, {"odd/H/nq-i+j+ij", 1, false},
                        {"odd/H/", 6, false}}},
      // Every versal case draws two specializations.
      {5, "constancy", {{"constant/", 100, false}, {"versal/", 25, true}, {"control/", 10, false}}},
      {6, "splitting", {{"phi/", 200, false}, {"w0/", 200, false}, {"kernel/", 30, false}, {"identity/", 3, false}}},
      {7, "witt", {{"cancel/", 500, false}, {"isotropy/", 200, false}}},
      {8, "residues", {{"calculus/", 200, false}, {"equality/", 100, false}}},
  };

  RunConfig cfg;
  bool all_ok = true;
  double total_seconds = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Report r;
    std::string problem;
    try {
      r = run_suite(c.suite, cfg);
    } catch (const std::exception& e) {
      problem = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    total_seconds += seconds;
    const Totals t = r.totals();
    if (problem.empty()) {
      for (const auto& q : c.requirements) {
        const Totals sub = r.totals(q.prefix);
        if (sub.total() < q.min_cases || sub.fail > 0 || (!q.allow_unknown && sub.unknown > 0)) {
          problem = describe(q, sub);
          break;
        }
      }
    }
    if (problem.empty() && t.fail > 0) problem = std::to_string(t.fail) + " failing cases";
    if (problem.empty() && c.time_limit > 0 && seconds > c.time_limit) problem = "exceeded the time limit";
    char line[256];
    std::snprintf(line, sizeof line, "criterion %d %s: %s (%zu cases, %zu fail, %zu unknown, %.1f s)", c.number,
                  c.suite.c_str(), problem.empty() ? "PASS" : "FAIL", t.total(), t.fail, t.unknown, seconds);
    std::cout << line << (problem.empty() ? "" : "; " + problem) << "\n";
    if (!problem.empty()) {
      all_ok = false;
      std::cout << emit_report(r, OutputMode::Text);
    }
  }
  std::printf("total %.1f s\n", total_seconds);
  return all_ok ? 0 : 1;
}
