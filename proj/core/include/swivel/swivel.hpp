#pragma once

#include <optional>
#include <span>
#include <vector>

#include "swivel/commutant.hpp"
#include "swivel/norm_chain.hpp"
#include "swivel/optimizer.hpp"
#include "swivel/qstate.hpp"

namespace swivel {

/// Which operator chain is maximised.
///   F:     ([N(ρ)]^{(1−α)/2} V_out [N(σ)]^{(α−1)/2} ⊗ I_E) U σ^{(1−α)/2} V_in ρ^{α/2}, 2-norm
///   G:     same with exponents ∓α′/2 (α′ = (α−1)/α) and ρ^{1/2}, 2α-norm
///   Trace: (N(ρ)^{1/p} V_out N(σ)^{−1/p} ⊗ I_E) U σ^{1/p}, p-norm (parameter is p)
enum class NormFamily { F, G, Trace };

/// Swivel groups: `out` acts on the channel output, `in` on the input.
/// By default these are the full commutants of N(σ) and σ; structured
/// problems (the CMI) pass subgroups explicitly.
struct SwivelGroups {
  Commutant out;
  Commutant in;
};

SwivelGroups default_groups(const Instance& inst, double cluster_tol = kClusterTol);

struct SwivelPoint {
  Matrix v_out;
  Matrix v_in;
  std::vector<double> params;
};

SwivelPoint identity_point(const Instance& inst);

struct SwivelOptions {
  OptimizerBudget budget;
  std::optional<SwivelGroups> groups;
  double cluster_tol = kClusterTol;
  std::vector<std::vector<double>> warm_starts;
};

struct SwivelOptimum {
  double value = 0.0;  // log-norm at the optimum (before the prefactor)
  SwivelPoint point;
  int restarts_used = 0;
  bool certified = false;
  bool budget_exceeded = false;
  long evaluations = 0;
};

struct SwivelValue {
  double value = 0.0;
  SwivelOptimum optimum;
  bool support_violation = false;
};

/// Throws DegenerateAlpha when |α − 1| < 1e-6.
void require_alpha_away_from_one(double alpha);

/// α′ = (α − 1)/α, with α′ = 1 at α = +inf.
double alpha_prime(double alpha);

/// Chain for a family; `param` is α for F and G and p for Trace.
NormChain build_chain(const Instance& inst, double param, NormFamily family, const SwivelGroups& groups);
/// Schatten index used with the chain.
double family_norm_index(NormFamily family, double param);

/// Direct evaluations at an explicit point (independent of NormChain).
double objective_f(const Instance& inst, double alpha, const SwivelPoint& point);
double objective_g(const Instance& inst, double alpha, const SwivelPoint& point);
double f_at_one(const Instance& inst, const SwivelPoint& point);

/// Maximises the log-norm of the family's chain over the swivel groups.
SwivelOptimum maximize_norm(const Instance& inst, double param, NormFamily family, const SwivelOptions& opts = {});

SwivelValue delta_prime(const Instance& inst, double alpha, const SwivelOptions& opts = {});
SwivelValue delta_tilde_prime(const Instance& inst, double alpha, const SwivelOptions& opts = {});

struct OneSidedLimits {
  double left = 0.0;   // min over swivels of f(1, ·)
  double right = 0.0;  // max over swivels of f(1, ·)
  SwivelOptimum left_opt;
  SwivelOptimum right_opt;
};

OneSidedLimits limits_at_one(const Instance& inst, const SwivelOptions& opts = {});

/// ‖chain_F(α) at identity swivels‖_2²; α = 1 is allowed and gives the projector chain.
double q_alpha(const Instance& inst, double alpha);
double delta_alpha_unswiveled(const Instance& inst, double alpha);
double delta_tilde_alpha_unswiveled(const Instance& inst, double alpha);

}  // namespace swivel
