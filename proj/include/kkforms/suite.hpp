#pragma once

// Full verification of catalog instances: every applicable residual at a
// seeded sample of points, folded into per-equation reports.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kkforms/catalog.hpp"
#include "kkforms/parallel.hpp"
#include "kkforms/verify.hpp"

namespace kkforms {

inline constexpr int kReportSchemaVersion = 1;

struct VerifyOptions {
  int points = 50;
  std::uint64_t seed = 42;
  double tolerance = 1e-7;
  std::map<std::string, double> tolerance_overrides;  // equation id → tolerance
  std::optional<int> lift_eps_d;  // lift with this sign instead of the instance's own
  Exec exec = Exec::parallel;

  double tolerance_for(const std::string& equation) const;
};

struct SolutionReport {
  std::string label;
  Family family{};
  ParamMap params;
  int dim = 0;
  int eps_d = 1;
  int lift_eps_d = 1;
  std::vector<ResidualReport> equations;  // fixed order
  std::optional<KEstimate> k_estimate;
  double expected_k = 0.0;
  bool pass = false;
  std::string error;  // set when evaluation aborted
  double wall_seconds = 0.0;

  const ResidualReport* find(const std::string& equation) const;
  nlohmann::ordered_json to_json() const;
};

struct SuiteReport {
  std::vector<SolutionReport> solutions;
  bool pass = false;
  nlohmann::ordered_json to_json(const VerifyOptions& opt, const nlohmann::ordered_json& config_echo = {}) const;
};

/// Equation ids the suite reports for an instance, in report order.
std::vector<std::string> suite_equations(const SolutionInstance& inst);

SolutionReport verify_instance(const SolutionInstance& inst, const VerifyOptions& opt);
SuiteReport run_suite(const std::vector<SolutionInstance>& instances, const VerifyOptions& opt);

}  // namespace kkforms
