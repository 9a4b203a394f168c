#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "swivel/cmi_recovery.hpp"
#include "swivel/qstate.hpp"
#include "swivel/swivel.hpp"

namespace swivel {

/// Subset of systems as a bitmask (bit k = system k).
using Subset = std::uint32_t;

struct ComboSystem {
  std::string label;  // a single character
  int dim = 1;
};

/// L = Σ_S a_S H(S) with a_S ∈ {−1, 0, +1}. `order` fixes the product order
/// of the marginals in the swiveled chains and must list exactly the proper
/// subsets with non-zero coefficient.
struct EntropyCombo {
  std::vector<ComboSystem> systems;
  std::map<Subset, int> coeffs;
  std::vector<Subset> order;

  Subset full() const { return (Subset(1) << systems.size()) - 1; }
  int coeff(Subset s) const;
  std::vector<int> dims() const;
};

void validate_combo(const EntropyCombo& combo);

/// Canonical encoding: labels sorted, concatenated ("AC").
std::string subset_label(const EntropyCombo& combo, Subset s);
Subset parse_subset(const EntropyCombo& combo, std::string_view label);

/// I(A;B|C) = H(AC) + H(BC) − H(C) − H(ABC) with order (BC, C, AC).
EntropyCombo cmi_combo(int d_a, int d_b, int d_c);

inline constexpr double kDefaultMixing = 1e-6;

struct ComboProvenance {
  bool factored_minus_one = false;
  bool purified = false;
  bool mixed = false;
};

struct NormalizedCombo {
  EntropyCombo combo;  // a_full = −1
  DensityOperator state;
  double epsilon = 0.0;
  ComboProvenance provenance;
};

/// Sign flip when a_full = +1; ε-mixing when a marginal entering the chain
/// (or, without purification, the state itself) is not positive definite;
/// purification onto an extra system R with a_{full} = −1 when a_full = 0.
/// Mixing is applied before purification so the purified state stays pure.
NormalizedCombo normalize_combo(const EntropyCombo& combo, const DensityOperator& state,
                                double epsilon = kDefaultMixing);

struct LValueParts {
  double direct = 0.0;  // Σ a_S H(S)
  double relent = 0.0;  // D(ρ ‖ exp{Σ_{S≠full} a_S log ρ_S})
};

LValueParts l_value_parts(const NormalizedCombo& nc);
/// Direct sum; throws NonConvergence if the two evaluation paths differ by more than 1e-8.
double l_value(const NormalizedCombo& nc);

NormChain build_combo_chain(const NormalizedCombo& nc, double alpha, NormFamily family);

SwivelValue l_prime(const NormalizedCombo& nc, double alpha, const SwivelOptions& opts = {});
SwivelValue l_tilde_prime(const NormalizedCombo& nc, double alpha, const SwivelOptions& opts = {});

/// Extremes over swivels of d/dα of the chain's log-norm² at α = 1.
OneSidedLimits l_limits_at_one(const NormalizedCombo& nc, const SwivelOptions& opts = {});

/// max_V ‖[N(ρ)^{1/p} V N(σ)^{−1/p} ⊗ I_E] U σ^{1/p}‖_p^p, p ≥ 2; `value` is the p-th power.
SwivelValue trace_quantity(const Instance& inst, double p, const SwivelOptions& opts = {});

/// CMI trace quantity with p = 2/(1−α); α ∈ (1,2] is evaluated at β = 2 − α
/// and needs a positive definite state.
SwivelValue cmi_trace_quantity(const TripartiteState& state, double alpha, const SwivelOptions& opts = {});

/// Tr{(ρ_AC^{a} V ρ_C^{−a} ρ_BC^{2a} ρ_C^{−a} V† ρ_AC^{a})^{1/(1−α)}}, a = (1−α)/2,
/// evaluated directly for a unitary V on C (positive definite state).
double cmi_trace_direct(const TripartiteState& state, double alpha, const Matrix& v_c);

std::string combo_to_json(const EntropyCombo& combo);
EntropyCombo combo_from_json(std::string_view text);

}  // namespace swivel
