#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swivel/cli/gen.hpp"
#include "swivel/optimizer.hpp"

namespace swivel::cli {

enum class SweepQuantity {
  DeltaPrime,
  DeltaTildePrime,
  CmiPrime,
  CmiTildePrime,
  LPrime,
  LTildePrime,
  TraceQuantity,
  RecoveryCurves,
};

SweepQuantity parse_quantity(const std::string& name);
const char* quantity_name(SweepQuantity q);

/// Grid used when none is given: α-grids for the Rényi quantities, the p-grid
/// for the trace quantity and the t-grid for recovery curves.
std::vector<double> default_grid(SweepQuantity q);

/// "a,b,c" or "start:stop:step" (inclusive, step > 0).
std::vector<double> parse_grid(const std::string& text);

struct SweepSpec {
  SweepQuantity quantity = SweepQuantity::DeltaPrime;
  std::vector<double> grid;  // empty: default grid
  std::string instance_path;  // either a file ...
  std::optional<GenSpec> gen;  // ... or a generator spec
  std::string combo_path;      // l_prime / l_tilde_prime
  OptimizerBudget budget;
  std::string curve = "d0";  // recovery_curves: d0 or d2
};

/// CSV with `#` comment lines (tool version, input digest) followed by
/// `param,value,certified,optimum_params_hash,error` and one row per grid point.
std::string run_sweep(const SweepSpec& spec);

}  // namespace swivel::cli
