#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swivel/matlib.hpp"

namespace swivel {

/// Unit-trace positive semidefinite operator.
class DensityOperator {
 public:
  explicit DensityOperator(const Matrix& m);
  explicit DensityOperator(HermitianOperator op);

  const HermitianOperator& op() const { return op_; }
  operator const HermitianOperator&() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  int dim() const { return op_.dim(); }

 private:
  HermitianOperator op_;
};

/// Non-zero positive semidefinite operator, trace unconstrained.
class PositiveOperator {
 public:
  explicit PositiveOperator(const Matrix& m);
  explicit PositiveOperator(HermitianOperator op);
  PositiveOperator(const DensityOperator& rho) : op_(rho.op()) {}  // NOLINT: a state is a positive operator

  const HermitianOperator& op() const { return op_; }
  operator const HermitianOperator&() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  int dim() const { return op_.dim(); }

 private:
  HermitianOperator op_;
};

/// CPTP map in Kraus form. The Stinespring isometry U = Σ_i K_i ⊗ |i⟩_E is
/// built once; row index of U is out * env_dim + i.
class QuantumChannel {
 public:
  explicit QuantumChannel(std::vector<Matrix> kraus);

  static QuantumChannel identity(int d);
  /// Trace over `traced` subsystems of ⊗dims. The environment is the traced
  /// factors in their natural order, so the dilation is a permutation.
  static QuantumChannel partial_trace(std::vector<int> dims, std::vector<int> traced);
  static QuantumChannel trace(int d);
  static QuantumChannel dephasing(int d);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  int env_dim() const { return static_cast<int>(kraus_.size()); }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  const Matrix& isometry() const { return isometry_; }
  bool has_unitary_dilation() const { return dim_out_ * env_dim() == dim_in_; }

  Matrix apply(const Matrix& x) const;
  Matrix adjoint_apply(const Matrix& y) const;
  /// Tr_E{U X U†}; an independent evaluation path to apply().
  Matrix apply_via_dilation(const Matrix& x) const;
  /// Σ_ij |i⟩⟨j| ⊗ N(|i⟩⟨j|), input factor first.
  Matrix choi() const;

 private:
  int dim_in_ = 0;
  int dim_out_ = 0;
  std::vector<Matrix> kraus_;
  Matrix isometry_;
};

Matrix isometric_extension(const QuantumChannel& channel);

struct PdFlags {
  bool rho = false;
  bool sigma = false;
  bool n_rho = false;
  bool n_sigma = false;
  bool all() const { return rho && sigma && n_rho && n_sigma; }
};

/// supp(a) ⊆ supp(b), decided by ‖(I − Π_b) a (I − Π_b)‖_∞ ≤ tol.
bool support_contained(const HermitianOperator& a, const HermitianOperator& b, double tol = 1e-10);

/// A validated (ρ, σ, N) triple. Support relations and definiteness flags
/// are decided once here; downstream code reads the flags.
class Instance {
 public:
  Instance(DensityOperator rho, PositiveOperator sigma, QuantumChannel channel);

  const DensityOperator& rho() const { return rho_; }
  const PositiveOperator& sigma() const { return sigma_; }
  const QuantumChannel& channel() const { return channel_; }
  const HermitianOperator& n_rho() const { return n_rho_; }
  const HermitianOperator& n_sigma() const { return n_sigma_; }

  bool support_ok() const { return support_ok_; }
  bool output_support_ok() const { return output_support_ok_; }
  const PdFlags& pd_flags() const { return pd_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  DensityOperator rho_;
  PositiveOperator sigma_;
  QuantumChannel channel_;
  HermitianOperator n_rho_;
  HermitianOperator n_sigma_;
  bool support_ok_ = false;
  bool output_support_ok_ = false;
  PdFlags pd_;
  std::vector<std::string> warnings_;
};

/// Pure state Σ_i √λ_i |e_i⟩ ⊗ |i⟩_R on the doubled space (system first, reference second).
DensityOperator purify(const DensityOperator& rho);

/// (1 − ε) ρ + ε I/d.
DensityOperator mix_with_maximally_mixed(const DensityOperator& rho, double epsilon);

DensityOperator random_density(int dim, int rank, std::uint64_t seed);
/// Ginibre positive operator scaled to the requested trace.
PositiveOperator random_positive(int dim, int rank, std::uint64_t seed, double trace = 1.0);
QuantumChannel random_channel(int dim_in, int dim_out, int n_kraus, std::uint64_t seed);
Matrix random_unitary(int d, std::uint64_t seed);

}  // namespace swivel
