#include "swivel/matlib.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "swivel/error.hpp"

namespace swivel {

namespace {

std::vector<int> digits_of(int index, std::span<const int> dims) {
  std::vector<int> d(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    d[k] = index % dims[k];
    index /= dims[k];
  }
  return d;
}

void check_dims(const Matrix& m, std::span<const int> dims) {
  for (int d : dims) {
    if (d < 1) fail(ErrorKind::DimensionMismatch, "subsystem dimensions must be positive");
  }
  if (m.rows() != m.cols() || m.rows() != product(dims)) {
    fail(ErrorKind::DimensionMismatch, "matrix dimension does not match product of subsystem dims");
  }
}

void check_system_list(std::span<const int> systems, std::size_t n) {
  std::vector<bool> seen(n, false);
  for (int s : systems) {
    if (s < 0 || static_cast<std::size_t>(s) >= n || seen[s]) {
      fail(ErrorKind::DimensionMismatch, "invalid subsystem index list");
    }
    seen[s] = true;
  }
}

}  // namespace

double SpectralDecomposition::max_abs() const {
  return eigenvalues.size() == 0 ? 0.0 : eigenvalues.cwiseAbs().maxCoeff();
}

double SpectralDecomposition::cutoff() const { return kSupportTol * max_abs(); }

bool SpectralDecomposition::in_support(int i) const {
  return std::abs(eigenvalues[i]) > cutoff();
}

SpectralDecomposition eig_hermitian(const Matrix& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::DimensionMismatch, "eig_hermitian needs a square matrix");
  const int n = static_cast<int>(m.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) {
    fail(ErrorKind::NonConvergence, "Hermitian eigensolver did not converge");
  }
  const RealVector& ev = solver.eigenvalues();
  const Matrix& vec = solver.eigenvectors();

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return ev[a] > ev[b]; });

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues[k] = ev[order[k]];
    Vector col = vec.col(order[k]);
    int pivot = 0;
    double best = -1.0;
    for (int r = 0; r < n; ++r) {
      const double a = std::abs(col[r]);
      if (a > best * (1.0 + 1e-12)) {
        best = a;
        pivot = r;
      }
    }
    if (best > 0.0) col *= std::conj(col[pivot]) / best;
    out.eigenvectors.col(k) = col;
  }

  const double scale = std::max(1.0, out.max_abs());
  const Matrix recon =
      out.eigenvectors * out.eigenvalues.cast<Complex>().asDiagonal() * out.eigenvectors.adjoint();
  const double recon_err = max_abs_entry(recon - m);
  const double unit_err = max_abs_entry(out.eigenvectors.adjoint() * out.eigenvectors - Matrix::Identity(n, n));
  if (recon_err > kReconstructionTol * scale || unit_err > kReconstructionTol) {
    fail(ErrorKind::NonConvergence, "eigendecomposition residual above tolerance");
  }

  const double cut = out.cutoff();
  out.support_rank = 0;
  for (int k = 0; k < n; ++k) {
    if (std::abs(out.eigenvalues[k]) > cut) ++out.support_rank;
  }
  return out;
}

HermitianOperator::HermitianOperator(const Matrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    fail(ErrorKind::DimensionMismatch, "Hermitian operator must be square and non-empty");
  }
  if (!m.allFinite()) fail(ErrorKind::InvalidArgument, "matrix has non-finite entries");
  const double asym = max_abs_entry(m - m.adjoint());
  if (asym > tol * std::max(1.0, max_abs_entry(m))) {
    fail(ErrorKind::InvalidArgument, "matrix is not Hermitian within tolerance");
  }
  m_ = 0.5 * (m + m.adjoint());
  eig_ = eig_hermitian(m_);
}

double HermitianOperator::trace() const { return m_.trace().real(); }

double HermitianOperator::min_eigenvalue() const { return eig_.eigenvalues[dim() - 1]; }

double HermitianOperator::max_eigenvalue() const { return eig_.eigenvalues[0]; }

bool HermitianOperator::positive_definite() const {
  return min_eigenvalue() > 0.0 && eig_.support_rank == dim();
}

bool HermitianOperator::positive_semidefinite() const { return min_eigenvalue() >= -eig_.cutoff(); }

Matrix on_support(const SpectralDecomposition& eig, MatrixFunction f) {
  const int n = static_cast<int>(eig.eigenvalues.size());
  const double cut = eig.cutoff();
  Eigen::VectorXcd values = Eigen::VectorXcd::Zero(n);
  const bool integer_power =
      f.kind == MatrixFunction::Kind::Power && f.exponent >= 0 && std::floor(f.exponent) == f.exponent;
  for (int k = 0; k < n; ++k) {
    const double lam = eig.eigenvalues[k];
    if (std::abs(lam) <= cut) continue;
    switch (f.kind) {
      case MatrixFunction::Kind::Projector:
        values[k] = 1.0;
        break;
      case MatrixFunction::Kind::Log:
        if (lam < 0) fail(ErrorKind::NegativeEigenvalue, "log of an operator with a negative eigenvalue");
        values[k] = std::log(lam);
        break;
      case MatrixFunction::Kind::Power:
        if (lam < 0 && !integer_power) {
          fail(ErrorKind::NegativeEigenvalue, "fractional or negative power of an indefinite operator");
        }
        values[k] = std::pow(lam, f.exponent);
        break;
    }
  }
  return eig.eigenvectors * values.asDiagonal() * eig.eigenvectors.adjoint();
}

HermitianOperator func_on_support(const HermitianOperator& m, MatrixFunction f) {
  return HermitianOperator(on_support(m.spectrum(), f));
}

Matrix power(const HermitianOperator& m, double t) {
  return on_support(m.spectrum(), MatrixFunction::power(t));
}

Matrix log_support(const HermitianOperator& m) { return on_support(m.spectrum(), MatrixFunction::log()); }

Matrix support_projector(const HermitianOperator& m) {
  return on_support(m.spectrum(), MatrixFunction::projector());
}

Matrix imaginary_power(const HermitianOperator& omega, double t) {
  const SpectralDecomposition& eig = omega.spectrum();
  const int n = omega.dim();
  const double cut = eig.cutoff();
  Eigen::VectorXcd values = Eigen::VectorXcd::Zero(n);
  for (int k = 0; k < n; ++k) {
    const double lam = eig.eigenvalues[k];
    if (std::abs(lam) <= cut) continue;
    if (lam < 0) fail(ErrorKind::NegativeEigenvalue, "imaginary power of an indefinite operator");
    values[k] = std::polar(1.0, t * std::log(lam));
  }
  return eig.eigenvectors * values.asDiagonal() * eig.eigenvectors.adjoint();
}

double schatten(const Matrix& a, double p) {
  if (!(p > 0)) fail(ErrorKind::InvalidArgument, "Schatten index must be positive");
  if (!a.allFinite()) fail(ErrorKind::InvalidArgument, "matrix has non-finite entries");
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const RealVector& s = svd.singularValues();
  if (std::isinf(p)) return s.maxCoeff();
  if (p == 2.0) return std::sqrt(s.squaredNorm());
  const double cut = kSupportTol * s.maxCoeff();
  double acc = 0.0;
  for (int i = 0; i < s.size(); ++i) {
    if (s[i] > cut) acc += std::pow(s[i], p);
  }
  return std::pow(acc, 1.0 / p);
}

double schatten_from_gram(const RealVector& gram_eigenvalues, double p) {
  if (std::isinf(p)) return std::sqrt(std::max(0.0, gram_eigenvalues.maxCoeff()));
  double acc = 0.0;
  const double half = 0.5 * p;
  const double cut = kSupportTol * gram_eigenvalues.cwiseAbs().maxCoeff();
  for (int i = 0; i < gram_eigenvalues.size(); ++i) {
    const double g = gram_eigenvalues[i];
    if (g > cut) acc += std::pow(g, half);
  }
  return std::pow(acc, 1.0 / p);
}

double max_abs_entry(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Matrix identity(int d) { return Matrix::Identity(d, d); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

int product(std::span<const int> dims) {
  int p = 1;
  for (int d : dims) p *= d;
  return p;
}

Matrix partial_trace(const Matrix& m, std::span<const int> dims, std::span<const int> traced) {
  check_dims(m, dims);
  check_system_list(traced, dims.size());
  const int n = static_cast<int>(m.rows());
  std::vector<bool> is_traced(dims.size(), false);
  for (int s : traced) is_traced[s] = true;

  int kept_dim = 1;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (!is_traced[k]) kept_dim *= dims[k];
  }
  std::vector<int> kept_index(n), traced_index(n);
  for (int i = 0; i < n; ++i) {
    const std::vector<int> d = digits_of(i, dims);
    int kk = 0, tt = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (is_traced[k]) {
        tt = tt * dims[k] + d[k];
      } else {
        kk = kk * dims[k] + d[k];
      }
    }
    kept_index[i] = kk;
    traced_index[i] = tt;
  }

  Matrix out = Matrix::Zero(kept_dim, kept_dim);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (traced_index[i] == traced_index[j]) out(kept_index[i], kept_index[j]) += m(i, j);
    }
  }
  return out;
}

Matrix embed(const Matrix& op, std::span<const int> dims, std::span<const int> systems) {
  check_system_list(systems, dims.size());
  int sub_dim = 1;
  for (int s : systems) sub_dim *= dims[s];
  if (op.rows() != sub_dim || op.cols() != sub_dim) {
    fail(ErrorKind::DimensionMismatch, "operator does not match the listed subsystems");
  }
  const int n = product(dims);
  std::vector<bool> in_sub(dims.size(), false);
  for (int s : systems) in_sub[s] = true;

  std::vector<int> sub_index(n), rest_index(n);
  for (int i = 0; i < n; ++i) {
    const std::vector<int> d = digits_of(i, dims);
    int ss = 0, rr = 0;
    for (int s : systems) ss = ss * dims[s] + d[s];
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (!in_sub[k]) rr = rr * dims[k] + d[k];
    }
    sub_index[i] = ss;
    rest_index[i] = rr;
  }

  Matrix out = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (rest_index[i] == rest_index[j]) out(i, j) = op(sub_index[i], sub_index[j]);
    }
  }
  return out;
}

Matrix permute_systems(const Matrix& m, std::span<const int> dims, std::span<const int> perm) {
  check_dims(m, dims);
  if (perm.size() != dims.size()) fail(ErrorKind::DimensionMismatch, "permutation length mismatch");
  check_system_list(perm, dims.size());
  const int n = static_cast<int>(m.rows());
  std::vector<int> new_dims(dims.size());
  for (std::size_t k = 0; k < perm.size(); ++k) new_dims[k] = dims[perm[k]];

  std::vector<int> target(n);
  for (int i = 0; i < n; ++i) {
    const std::vector<int> d = digits_of(i, dims);
    int t = 0;
    for (std::size_t k = 0; k < perm.size(); ++k) t = t * new_dims[k] + d[perm[k]];
    target[i] = t;
  }
  Matrix out(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) out(target[i], target[j]) = m(i, j);
  }
  return out;
}

}  // namespace swivel
