#pragma once

#include <array>
#include <vector>

#include "swivel/qstate.hpp"
#include "swivel/swivel.hpp"

namespace swivel {

/// ρ_ABC with cached marginals. Marginals keep the natural factor order
/// (ρ_AC on A⊗C, ρ_BC on B⊗C, ...).
class TripartiteState {
 public:
  TripartiteState(DensityOperator state, int d_a, int d_b, int d_c);

  const DensityOperator& state() const { return state_; }
  const std::array<int, 3>& dims() const { return dims_; }
  const DensityOperator& rho_ac() const { return ac_; }
  const DensityOperator& rho_bc() const { return bc_; }
  const DensityOperator& rho_c() const { return c_; }
  const DensityOperator& rho_ab() const { return ab_; }
  const DensityOperator& rho_a() const { return a_; }
  const DensityOperator& rho_b() const { return b_; }

 private:
  DensityOperator state_;
  std::array<int, 3> dims_;
  DensityOperator ac_, bc_, c_, ab_, a_, b_;
};

double cmi(const TripartiteState& state);

/// Exchanges the roles of A and B (the swiveled CMI is not symmetric).
TripartiteState swap_ab(const TripartiteState& state);

/// The instance (ρ_ABC, ρ_AC ⊗ I_B, Tr_A) together with its swivel groups:
/// V_{ρ_C} ⊗ I_B on the output BC and V_{ρ_AC} ⊗ I_B on ABC.
struct CmiProblem {
  Instance instance;
  SwivelGroups groups;
};

CmiProblem cmi_instance(const TripartiteState& state, double cluster_tol = kClusterTol);

SwivelValue cmi_prime(const TripartiteState& state, double alpha, SwivelOptions opts = {});
SwivelValue cmi_tilde_prime(const TripartiteState& state, double alpha, SwivelOptions opts = {});

enum class RecoveryKind { Petz, Rotated, Swiveled };

/// Recovery channel from the output of N back to its input, stored in Kraus
/// form R_i = W σ^{1/2} K_i† N(σ)^{−1/2} V. The Petz map has V = W = I, the
/// rotated map uses V = N(σ)^{−it}, W = σ^{it}, and the swiveled map takes
/// V on the N(σ) side and W on the σ side from the caller.
class RecoveryMap {
 public:
  static RecoveryMap petz(const PositiveOperator& sigma, const QuantumChannel& channel);
  static RecoveryMap rotated(const PositiveOperator& sigma, const QuantumChannel& channel, double t);
  static RecoveryMap swiveled(const PositiveOperator& sigma, const QuantumChannel& channel, const Matrix& v,
                              const Matrix& w);
  /// Map paired with a maximising swivel point: V = v_out†, W = v_in†.
  static RecoveryMap from_point(const PositiveOperator& sigma, const QuantumChannel& channel,
                                const SwivelPoint& point);

  RecoveryKind kind() const { return kind_; }
  double t() const { return t_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  int dim_in() const { return static_cast<int>(kraus_.front().cols()); }
  int dim_out() const { return static_cast<int>(kraus_.front().rows()); }

  Matrix apply(const Matrix& y) const;
  Matrix choi() const;

 private:
  RecoveryMap(RecoveryKind kind, double t, std::vector<Matrix> kraus);

  RecoveryKind kind_;
  double t_ = 0.0;
  std::vector<Matrix> kraus_;
};

RecoveryMap build_recovery(RecoveryKind kind, const PositiveOperator& sigma, const QuantumChannel& channel,
                           double t = 0.0, const SwivelPoint* point = nullptr);

/// Default rotation grid [−10, 10] with step 0.05.
std::vector<double> default_t_grid();

struct RecoveryReport {
  double delta = 0.0;

  // −log max F(ρ, R(N(ρ))) and min D_0(ρ‖R(N(ρ))), from the optimiser and
  // re-evaluated on the explicit recovery map at the optimum.
  double fidelity_bound = 0.0;
  double fidelity_bound_explicit = 0.0;
  double d0_bound = 0.0;
  double d0_bound_explicit = 0.0;

  std::vector<double> t_grid;
  std::vector<double> rotated_d0;
  std::vector<double> rotated_d2;

  bool has_upper = false;
  double dmax_bound = 0.0;
  double dmax_bound_explicit = 0.0;
  double d2_bound = 0.0;
  double d2_bound_explicit = 0.0;

  bool certified = false;
};

/// Upper bounds need a unitary dilation and a positive definite instance;
/// `need_upper` turns their absence into StructureRequired.
RecoveryReport recovery_bounds(const Instance& inst, const std::vector<double>& t_grid,
                               const SwivelOptions& opts = {}, bool need_upper = false);

/// Recovery bounds for the CMI instance; `delta` is I(A;B|C). Upper bounds
/// are included when ρ_ABC is positive definite.
RecoveryReport ssa_refinement(const TripartiteState& state, const SwivelOptions& opts = {});

}  // namespace swivel
