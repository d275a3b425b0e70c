#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "witt/json_io.hpp"

namespace witt {

enum class OutputMode { Text, Json };

struct RunConfig {
  FieldSpec field = FieldSpec::rationals();
  Rational a = -1, b = -1;
  std::uint64_t seed = 0;
  std::uint64_t search_bound = kDefaultSearchBound;
  std::uint64_t factor_bound = kDefaultFactorBound;
  OutputMode output = OutputMode::Text;

  ParseContext context() const;
};

enum class CaseStatus { Pass, Fail, Unknown };
std::string to_string(CaseStatus s);

struct CaseResult {
  std::string id;
  CaseStatus status = CaseStatus::Pass;
  std::optional<Json> witness;
};

struct Totals {
  std::size_t pass = 0, fail = 0, unknown = 0;
  std::size_t total() const { return pass + fail + unknown; }
};

struct Report {
  std::string suite;
  std::vector<CaseResult> cases;

  Totals totals() const;
  /// Cases whose id starts with `prefix`.
  Totals totals(const std::string& prefix) const;
  int exit_code() const { return totals().fail == 0 ? 0 : 1; }
};

/// products, morita, lambda, relations, constancy, splitting, witt, residues.
const std::vector<std::string>& suite_names();

/// Runs a named suite ("all" runs every suite, ids prefixed by suite name).
/// Cases come back sorted by id.  Throws UnknownSuite.
Report run_suite(const std::string& name, const RunConfig& config);

std::string emit_report(const Report& r, OutputMode mode);

}  // namespace witt
