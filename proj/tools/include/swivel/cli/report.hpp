#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swivel/optimizer.hpp"

namespace swivel::cli {

/// Shortest round-trip decimal; "nan", "inf" and "-inf" for non-finite values.
std::string format_double(double x);

struct CheckSummary {
  std::string name;
  double tolerance = 0.0;
  bool existential = false;  // passes if some trial meets the tolerance
  int trials = 0;
  int passes = 0;
  double worst_violation = 0.0;
  bool passed = false;
};

struct VerificationReport {
  std::string claim_id;
  int trials = 0;
  int passes = 0;
  double worst_violation = 0.0;  // of the primary check
  double tolerance = 0.0;        // of the primary check
  std::vector<std::uint64_t> seeds;
  double wall_time_s = 0.0;
  int numerical_failures = 0;
  std::vector<std::string> failure_messages;
  std::vector<CheckSummary> checks;
  OptimizerBudget budget;
  std::uint64_t master_seed = 0;
  std::string tool_version;
  std::string input_digest;

  bool all_passed() const;
  /// 0 pass, 1 property violation, 3 numerical failure.
  int exit_code() const;
};

std::string report_to_json(const VerificationReport& report, bool include_wall_time = true);

}  // namespace swivel::cli
