#pragma once

#include <cstdint>
#include <vector>

#include "swivel/cmi_recovery.hpp"
#include "swivel/qstate.hpp"

namespace swivel::cli {

/// Default α-grids: [0, 2] step 0.1 without 1, and {0.5..0.9} ∪ {1.25, 1.5, 2, 4, 8, inf}.
std::vector<double> prime_alpha_grid();
std::vector<double> tilde_alpha_grid();
std::vector<double> default_p_grid();

/// Qubit-to-qubit channel with two Kraus operators; ρ and σ have full rank.
Instance qubit_instance(std::uint64_t seed);

/// Input dimension 2 or 3 into a qubit, 2 or 3 Kraus operators, ρ of random
/// rank and σ of full rank.
Instance small_instance(std::uint64_t seed);

/// Positive definite ρ_AB, σ_AB and N = Tr_A.
Instance partial_trace_instance(std::uint64_t seed, int d_a = 2, int d_b = 2);

/// N = Tr on dimension 2..4, σ with trace in [0.5, 2].
Instance trace_channel_instance(std::uint64_t seed);

TripartiteState random_tripartite(std::uint64_t seed, int d_a = 2, int d_b = 2, int d_c = 2);

/// Probability vector with entries bounded away from zero.
std::vector<double> random_distribution(int n, std::uint64_t seed, double floor = 0.05);
/// P[y][x] = P(y|x) with positive entries.
std::vector<std::vector<double>> random_stochastic(int n_out, int n_in, std::uint64_t seed);
/// Kraus operators sqrt(P(y|x)) |y><x|.
QuantumChannel classical_channel(const std::vector<std::vector<double>>& p);
Matrix diagonal(const std::vector<double>& values);

/// Applies N_{B→B'} (local on B) to ρ_ABC.
TripartiteState apply_on_b(const TripartiteState& state, const QuantumChannel& channel);

}  // namespace swivel::cli
