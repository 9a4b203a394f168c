#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace swivel {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kReconstructionTol = 1e-10;
inline constexpr double kSupportTol = 1e-10;

/// Eigenvalues sorted descending, eigenvectors as columns.
///
/// Each eigenvector is phase-normalised so that its largest-magnitude entry
/// is real and positive, which makes the decomposition reproducible bit for
/// bit (swivel block bases are derived from it).
struct SpectralDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;
  int support_rank = 0;

  /// Absolute cutoff τ_supp · max|λ|; eigenvalues at or below it are treated as zero.
  double cutoff() const;
  bool in_support(int i) const;
  double max_abs() const;
};

SpectralDecomposition eig_hermitian(const Matrix& m);

/// Square complex matrix certified Hermitian at construction. The stored
/// matrix is the exact Hermitian part and its spectrum is computed eagerly.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(const Matrix& m, double tol = kHermitianTol);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  const SpectralDecomposition& spectrum() const { return eig_; }

  double trace() const;
  double min_eigenvalue() const;
  double max_eigenvalue() const;
  int support_rank() const { return eig_.support_rank; }
  bool positive_definite() const;
  bool positive_semidefinite() const;

 private:
  Matrix m_;
  SpectralDecomposition eig_;
};

struct MatrixFunction {
  enum class Kind { Power, Log, Projector };
  Kind kind = Kind::Power;
  double exponent = 1.0;

  static MatrixFunction power(double t) { return {Kind::Power, t}; }
  static MatrixFunction log() { return {Kind::Log, 0.0}; }
  static MatrixFunction projector() { return {Kind::Projector, 0.0}; }
};

/// f applied to the support eigenvalues only; kernel eigenvalues map to 0.
/// power(0) is therefore the support projector.
Matrix on_support(const SpectralDecomposition& eig, MatrixFunction f);
HermitianOperator func_on_support(const HermitianOperator& m, MatrixFunction f);

Matrix power(const HermitianOperator& m, double t);
Matrix log_support(const HermitianOperator& m);
Matrix support_projector(const HermitianOperator& m);

/// ω^{it} restricted to the support of a positive semidefinite ω (zero on the kernel).
Matrix imaginary_power(const HermitianOperator& omega, double t);

/// Schatten p-norm from singular values; p = +inf gives the operator norm.
double schatten(const Matrix& a, double p);

/// p-norm from the eigenvalues of A†A (or AA†). Negative round-off is clipped.
double schatten_from_gram(const RealVector& gram_eigenvalues, double p);

double max_abs_entry(const Matrix& m);
Matrix identity(int d);
Matrix kron(const Matrix& a, const Matrix& b);

/// Trace out the listed subsystems. Ordering convention: the first factor is
/// the most significant index.
Matrix partial_trace(const Matrix& m, std::span<const int> dims, std::span<const int> traced);

/// Place `op`, acting on the tensor product of `systems` (in the listed
/// order), into the full space with identity on everything else.
Matrix embed(const Matrix& op, std::span<const int> dims, std::span<const int> systems);

/// Reorder tensor factors: factor k of the result is factor perm[k] of the input.
Matrix permute_systems(const Matrix& m, std::span<const int> dims, std::span<const int> perm);

int product(std::span<const int> dims);

}  // namespace swivel
