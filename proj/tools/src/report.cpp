#include "swivel/cli/report.hpp"

#include <charconv>
#include <cmath>

#include "json.hpp"

namespace swivel::cli {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

bool VerificationReport::all_passed() const {
  if (passes != trials || numerical_failures > 0) return false;
  for (const CheckSummary& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

int VerificationReport::exit_code() const {
  if (numerical_failures > 0) return 3;
  return all_passed() ? 0 : 1;
}

namespace {

nlohmann::json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

}  // namespace

std::string report_to_json(const VerificationReport& r, bool include_wall_time) {
  using nlohmann::json;
  json j;
  j["claim_id"] = r.claim_id;
  j["trials"] = r.trials;
  j["passes"] = r.passes;
  j["worst_violation"] = number(r.worst_violation);
  j["tolerance"] = r.tolerance;
  j["seeds"] = r.seeds;
  if (include_wall_time) j["wall_time_s"] = r.wall_time_s;
  j["numerical_failures"] = r.numerical_failures;
  j["failure_messages"] = r.failure_messages;
  json checks = json::array();
  for (const CheckSummary& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"tolerance", c.tolerance},
                      {"existential", c.existential},
                      {"trials", c.trials},
                      {"passes", c.passes},
                      {"worst_violation", number(c.worst_violation)},
                      {"passed", c.passed}});
  }
  j["checks"] = std::move(checks);
  j["budget"] = {{"restarts", r.budget.restarts}, {"max_evals", r.budget.max_evals}};
  j["master_seed"] = r.master_seed;
  j["tool_version"] = r.tool_version;
  j["input_digest"] = r.input_digest;
  j["passed"] = r.all_passed();
  return j.dump(1) + "\n";
}

}  // namespace swivel::cli
