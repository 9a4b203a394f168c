#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace swivel {

struct OptimizerBudget {
  int restarts = 8;
  long max_evals = 65536;  // grid evaluations on torus spaces
  std::uint64_t seed = 0;
};

struct SearchSpace {
  int dim = 0;
  bool torus = true;  // every coordinate is a 2π-periodic phase
};

struct OptimizeResult {
  double value = 0.0;
  std::vector<double> params;
  int restarts_used = 0;
  bool certified = false;
  bool budget_exceeded = false;
  long evaluations = 0;
};

using Objective = std::function<double(std::span<const double>)>;

/// Derivative-free maximisation.
///
/// The origin (identity swivels) and any warm starts are always candidates,
/// so the result never falls below them. Torus spaces of dimension ≤ 4 get an
/// exhaustive grid with n = min(2000, floor(max_evals^{1/k})) points per
/// angle; the best local grid maxima seed Nelder–Mead refinement. Other
/// spaces use the origin plus seeded random starts. A result is certified
/// only for grid searches on tori of dimension ≤ 3.
OptimizeResult maximize(const SearchSpace& space, const Objective& objective, const OptimizerBudget& budget,
                        std::span<const std::vector<double>> warm_starts = {});

/// Points per angle the grid search would use for this space and budget (0 if no grid).
int grid_points_per_angle(const SearchSpace& space, const OptimizerBudget& budget);

/// Stable 64-bit hash of a parameter vector (hex rendered by callers).
std::uint64_t params_hash(std::span<const double> params);

}  // namespace swivel
