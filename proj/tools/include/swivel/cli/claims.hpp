#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swivel/cli/report.hpp"
#include "swivel/optimizer.hpp"

namespace swivel::cli {

struct ClaimInfo {
  std::string id;
  std::string description;
  int default_trials = 50;
};

const std::vector<ClaimInfo>& claim_list();
bool has_claim(const std::string& id);

struct ClaimConfig {
  std::optional<int> trials;
  std::uint64_t seed = 0;
  std::optional<double> tolerance;  // replaces the primary check's tolerance
  int jobs = 1;
  OptimizerBudget budget;
};

/// Runs `trials` seeded trials of the claim. Trial i uses seed mix_seed(seed, i);
/// the report is independent of `jobs` apart from wall_time_s.
/// Throws Error(UnknownClaim).
VerificationReport run_claim(const std::string& id, const ClaimConfig& config);

}  // namespace swivel::cli
