#pragma once

#include <span>
#include <vector>

#include "swivel/matlib.hpp"

namespace swivel {

inline constexpr double kClusterTol = 1e-8;

/// One eigenvalue cluster. The block acts as U(active) ⊗ I(spectator);
/// its basis columns are start + a * spectator + t (active index major).
struct CommutantBlock {
  int start = 0;
  int active = 1;
  int spectator = 1;
  int size() const { return active * spectator; }
};

/// Unitaries commuting with a Hermitian ω, written V = Q · ⊕_b (e^{iH_b} ⊗ I) · Q†.
///
/// Parameters: block 0 carries only its su(m) coordinates (this removes the
/// global phase); every later block has one phase coordinate followed by
/// m² − 1 su(m) coordinates. The free dimension is Σ_b m_b² − 1.
class Commutant {
 public:
  Commutant(Matrix base, Matrix basis, std::vector<CommutantBlock> blocks);

  int dim() const { return static_cast<int>(basis_.rows()); }
  const Matrix& base() const { return base_; }
  const Matrix& basis() const { return basis_; }
  const std::vector<CommutantBlock>& blocks() const { return blocks_; }
  int free_dim() const { return free_dim_; }
  bool is_torus() const { return torus_; }

  /// Per-block m × m unitaries e^{iH_b}.
  std::vector<Matrix> block_unitaries(std::span<const double> params) const;
  /// Torus only: one phase per block (block 0 has phase 1).
  Eigen::VectorXcd block_phases(std::span<const double> params) const;
  /// Block-diagonal unitary in basis coordinates.
  Matrix local(std::span<const double> params) const;
  Matrix member(std::span<const double> params) const;

  /// Same group acting on (this space) ⊗ C^s.
  Commutant with_spectator(int s) const;

  /// ‖Vω − ωV‖_∞ (entrywise max) for a candidate member.
  double commutator_residual(const Matrix& v) const;

 private:
  Matrix base_;
  Matrix basis_;
  std::vector<CommutantBlock> blocks_;
  std::vector<int> offsets_;
  int free_dim_ = 0;
  bool torus_ = true;
};

Commutant commutant_of(const HermitianOperator& omega, double cluster_tol = kClusterTol);

/// Lift a commutant of an operator on ⊗_{systems} to the full space ⊗dims
/// (identity on the remaining factors).
Commutant embed_commutant(const Commutant& local, std::span<const int> dims, std::span<const int> systems);

/// Trivial group on C^d (only the identity).
Commutant trivial_commutant(int d);

}  // namespace swivel
