#pragma once

// Property suite: seeded randomized trials for every identity and inequality
// the library implements, each producing a pass/fail report with the worst
// observed metric and the empirical constants.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace otfa {

enum class PropertyId {
  LemmaT,
  ConvLemma,
  PropnCond,
  PropInvariance,
  Collapse,
  GaborRecon,
  FrameEquiv,
  URemark,
  ThmAop,
  Lemma1Compose,
  Factorization,
  CalcTransfer,
  WignerRank1,
  DualityLink,
  ThmPseudoCont,
  ThmPseudoCont2Part1,
  ThmPseudoCont2Part2,
  ThmMain,
};

const std::vector<PropertyId>& all_properties();
std::string_view property_name(PropertyId id);
/// Throws ParseError for unknown names.
PropertyId parse_property(std::string_view name);

struct VerifyConfig {
  std::uint64_t seed = 7;
  std::size_t trials = 0;  ///< 0 selects each property's default
  std::size_t L = 0;       ///< 0 selects each property's default group order
};

using ParamValue = std::variant<double, std::string>;

struct TrialReport {
  std::string property;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::map<std::string, ParamValue> params;
  std::string metric_name;
  double metric_max = 0.0;
  double tolerance = 0.0;
  std::map<std::string, double> constants;
  bool pass = false;
  /// Band-type (≍) verdicts are not hard; only hard failures change the suite exit code.
  bool hard = true;
};

/// Runs one property. Deterministic for a fixed (property, config).
TrialReport run(PropertyId id, const VerifyConfig& config);

struct SuiteResult {
  std::vector<TrialReport> reports;
  int exit_code = 0;  ///< 2 when a hard property fails, 0 otherwise
};

/// Every property at its default configuration, in parallel.
SuiteResult run_all(const VerifyConfig& config);

std::string report_to_json(const TrialReport& report, int indent = 2);
TrialReport report_from_json(std::string_view text);
/// Accepts a single report object or an array of them.
std::vector<TrialReport> reports_from_json(std::string_view text);
std::string reports_to_json(const std::vector<TrialReport>& reports, int indent = 2);

/// CSV with header property,L,metric_max,tolerance,pass.
std::string reports_to_csv(const std::vector<TrialReport>& reports);

}  // namespace otfa
