#pragma once

#include <optional>

#include "swivel/matlib.hpp"
#include "swivel/qstate.hpp"

namespace swivel {

// All values are in nats. Arguments are positive semidefinite operators;
// sigma-type arguments need not be normalised. A failed support condition
// is reported as +infinity, not as an error.

enum class EntropyKind { H, H_alpha, D, D_alpha, D_tilde_alpha, D0, D2, Dmin, Dmax, Delta };

struct EntropyValue {
  double value = 0.0;
  std::optional<double> alpha;
  EntropyKind kind = EntropyKind::D;
};

double vn_entropy(const HermitianOperator& rho);
/// H_α = log(Tr ρ^α) / (1 − α).
double renyi_entropy(const HermitianOperator& rho, double alpha);

double relative_entropy(const HermitianOperator& rho, const HermitianOperator& sigma);
/// Petz–Rényi D_α via (2/(α−1)) log‖σ^{(1−α)/2} ρ^{α/2}‖_2.
double renyi_rel(const HermitianOperator& rho, const HermitianOperator& sigma, double alpha);
/// Sandwiched D̃_α via (2α/(α−1)) log‖σ^{(1−α)/2α} ρ^{1/2}‖_{2α}; α = +inf gives dmax.
double sandwiched_rel(const HermitianOperator& rho, const HermitianOperator& sigma, double alpha);

double dmax(const HermitianOperator& rho, const HermitianOperator& sigma);
double fidelity(const HermitianOperator& rho, const HermitianOperator& sigma);
/// D_2 = log Tr{ρ² σ^{-1}} = log‖ρ σ^{-1/2}‖_2², i.e. D_α at α = 2.
double d2(const HermitianOperator& rho, const HermitianOperator& sigma);
double d0(const HermitianOperator& rho, const HermitianOperator& sigma);

/// D(ρ‖σ) − D(N(ρ)‖N(σ)). Throws SupportViolation unless supp ρ ⊆ supp σ.
double delta(const Instance& inst);

EntropyValue evaluate(EntropyKind kind, const HermitianOperator& rho, const HermitianOperator& sigma,
                      std::optional<double> alpha = std::nullopt);

}  // namespace swivel
