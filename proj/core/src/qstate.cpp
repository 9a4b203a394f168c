#include "swivel/qstate.hpp"

#include <cmath>
#include <sstream>

#include "swivel/error.hpp"
#include "swivel/random.hpp"

namespace swivel {

namespace {

constexpr double kTraceTol = 1e-10;
constexpr double kChannelTol = 1e-10;

// Stream identifiers keep the random objects drawn from one seed independent.
constexpr std::uint64_t kStreamDensity = 11;
constexpr std::uint64_t kStreamPositive = 12;
constexpr std::uint64_t kStreamChannel = 13;
constexpr std::uint64_t kStreamUnitary = 14;

void check_state(const HermitianOperator& op) {
  if (op.min_eigenvalue() < -kSupportTol) {
    fail(ErrorKind::InvalidState, "density operator has a negative eigenvalue");
  }
  if (std::abs(op.trace() - 1.0) > kTraceTol) {
    fail(ErrorKind::InvalidState, "density operator trace differs from one");
  }
}

void check_positive(const HermitianOperator& op) {
  if (op.min_eigenvalue() < -kSupportTol * std::max(1.0, op.spectrum().max_abs())) {
    fail(ErrorKind::InvalidState, "positive operator has a negative eigenvalue");
  }
  if (op.spectrum().support_rank == 0 || op.max_eigenvalue() <= 0) {
    fail(ErrorKind::InvalidState, "positive operator must be non-zero");
  }
}

void collect_warnings(const char* name, const HermitianOperator& op, std::vector<std::string>& out) {
  const SpectralDecomposition& eig = op.spectrum();
  const double cut = eig.cutoff();
  for (int k = 0; k < eig.eigenvalues.size(); ++k) {
    const double a = std::abs(eig.eigenvalues[k]);
    if (a > 0.1 * cut && a <= 10.0 * cut) {
      std::ostringstream msg;
      msg << name << ": eigenvalue " << eig.eigenvalues[k] << " is within a factor 10 of the support cutoff";
      out.push_back(msg.str());
    }
  }
}

double operator_norm_psd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

DensityOperator::DensityOperator(const Matrix& m) : op_(m) { check_state(op_); }

DensityOperator::DensityOperator(HermitianOperator op) : op_(std::move(op)) { check_state(op_); }

PositiveOperator::PositiveOperator(const Matrix& m) : op_(m) { check_positive(op_); }

PositiveOperator::PositiveOperator(HermitianOperator op) : op_(std::move(op)) { check_positive(op_); }

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) fail(ErrorKind::InvalidArgument, "channel needs at least one Kraus operator");
  dim_out_ = static_cast<int>(kraus_.front().rows());
  dim_in_ = static_cast<int>(kraus_.front().cols());
  if (dim_in_ < 1 || dim_out_ < 1) fail(ErrorKind::DimensionMismatch, "empty Kraus operator");
  Matrix sum = Matrix::Zero(dim_in_, dim_in_);
  for (const Matrix& k : kraus_) {
    if (k.rows() != dim_out_ || k.cols() != dim_in_) {
      fail(ErrorKind::DimensionMismatch, "Kraus operators have inconsistent shapes");
    }
    if (!k.allFinite()) fail(ErrorKind::InvalidArgument, "Kraus operator has non-finite entries");
    sum.noalias() += k.adjoint() * k;
  }
  if (max_abs_entry(sum - Matrix::Identity(dim_in_, dim_in_)) > kChannelTol) {
    fail(ErrorKind::InvalidArgument, "Kraus operators are not trace preserving");
  }
  const int env = env_dim();
  isometry_ = Matrix::Zero(dim_out_ * env, dim_in_);
  for (int i = 0; i < env; ++i) {
    for (int o = 0; o < dim_out_; ++o) isometry_.row(o * env + i) = kraus_[i].row(o);
  }
}

QuantumChannel QuantumChannel::identity(int d) { return QuantumChannel({Matrix::Identity(d, d)}); }

QuantumChannel QuantumChannel::partial_trace(std::vector<int> dims, std::vector<int> traced) {
  const int n = product(dims);
  std::vector<bool> is_traced(dims.size(), false);
  for (int s : traced) {
    if (s < 0 || static_cast<std::size_t>(s) >= dims.size() || is_traced[s]) {
      fail(ErrorKind::DimensionMismatch, "invalid traced subsystem list");
    }
    is_traced[s] = true;
  }
  int env = 1, out = 1;
  for (std::size_t k = 0; k < dims.size(); ++k) (is_traced[k] ? env : out) *= dims[k];

  std::vector<Matrix> kraus(env, Matrix::Zero(out, n));
  for (int i = 0; i < n; ++i) {
    int rem = i;
    std::vector<int> digit(dims.size());
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
      digit[k] = rem % dims[k];
      rem /= dims[k];
    }
    int e = 0;
    for (int s : traced) e = e * dims[s] + digit[s];
    int o = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (!is_traced[k]) o = o * dims[k] + digit[k];
    }
    kraus[e](o, i) = 1.0;
  }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel QuantumChannel::trace(int d) {
  std::vector<Matrix> kraus(d, Matrix::Zero(1, d));
  for (int i = 0; i < d; ++i) kraus[i](0, i) = 1.0;
  return QuantumChannel(std::move(kraus));
}

QuantumChannel QuantumChannel::dephasing(int d) {
  std::vector<Matrix> kraus(d, Matrix::Zero(d, d));
  for (int i = 0; i < d; ++i) kraus[i](i, i) = 1.0;
  return QuantumChannel(std::move(kraus));
}

Matrix QuantumChannel::apply(const Matrix& x) const {
  if (x.rows() != dim_in_ || x.cols() != dim_in_) fail(ErrorKind::DimensionMismatch, "channel input shape");
  Matrix out = Matrix::Zero(dim_out_, dim_out_);
  for (const Matrix& k : kraus_) out.noalias() += k * x * k.adjoint();
  return out;
}

Matrix QuantumChannel::adjoint_apply(const Matrix& y) const {
  if (y.rows() != dim_out_ || y.cols() != dim_out_) fail(ErrorKind::DimensionMismatch, "adjoint input shape");
  Matrix out = Matrix::Zero(dim_in_, dim_in_);
  for (const Matrix& k : kraus_) out.noalias() += k.adjoint() * y * k;
  return out;
}

Matrix QuantumChannel::apply_via_dilation(const Matrix& x) const {
  if (x.rows() != dim_in_ || x.cols() != dim_in_) fail(ErrorKind::DimensionMismatch, "channel input shape");
  const Matrix big = isometry_ * x * isometry_.adjoint();
  const int dims[2] = {dim_out_, env_dim()};
  const int traced[1] = {1};
  return swivel::partial_trace(big, dims, traced);
}

Matrix QuantumChannel::choi() const {
  const int n = dim_in_ * dim_out_;
  Matrix c = Matrix::Zero(n, n);
  for (int i = 0; i < dim_in_; ++i) {
    for (int j = 0; j < dim_in_; ++j) {
      Matrix e = Matrix::Zero(dim_in_, dim_in_);
      e(i, j) = 1.0;
      c.block(i * dim_out_, j * dim_out_, dim_out_, dim_out_) = apply(e);
    }
  }
  return c;
}

Matrix isometric_extension(const QuantumChannel& channel) { return channel.isometry(); }

bool support_contained(const HermitianOperator& a, const HermitianOperator& b, double tol) {
  if (a.dim() != b.dim()) fail(ErrorKind::DimensionMismatch, "support check on different dimensions");
  const Matrix off = Matrix::Identity(b.dim(), b.dim()) - support_projector(b);
  return operator_norm_psd(off * a.matrix() * off) <= tol;
}

Instance::Instance(DensityOperator rho, PositiveOperator sigma, QuantumChannel channel)
    : rho_(std::move(rho)), sigma_(std::move(sigma)), channel_(std::move(channel)) {
  if (rho_.dim() != sigma_.dim()) fail(ErrorKind::DimensionMismatch, "rho and sigma dimensions differ");
  if (channel_.dim_in() != rho_.dim()) fail(ErrorKind::DimensionMismatch, "channel input dimension");
  n_rho_ = HermitianOperator(channel_.apply(rho_.matrix()));
  n_sigma_ = HermitianOperator(channel_.apply(sigma_.matrix()));
  support_ok_ = support_contained(rho_.op(), sigma_.op());
  output_support_ok_ = support_contained(n_rho_, n_sigma_);
  pd_.rho = rho_.op().positive_definite();
  pd_.sigma = sigma_.op().positive_definite();
  pd_.n_rho = n_rho_.positive_definite();
  pd_.n_sigma = n_sigma_.positive_definite();
  collect_warnings("rho", rho_.op(), warnings_);
  collect_warnings("sigma", sigma_.op(), warnings_);
  collect_warnings("N(rho)", n_rho_, warnings_);
  collect_warnings("N(sigma)", n_sigma_, warnings_);
}

DensityOperator purify(const DensityOperator& rho) {
  const int d = rho.dim();
  const SpectralDecomposition& eig = rho.op().spectrum();
  Vector psi = Vector::Zero(d * d);
  for (int k = 0; k < d; ++k) {
    if (!eig.in_support(k)) continue;
    const double w = std::sqrt(std::max(0.0, eig.eigenvalues[k]));
    for (int i = 0; i < d; ++i) psi[i * d + k] += w * eig.eigenvectors(i, k);
  }
  psi /= psi.norm();
  return DensityOperator(Matrix(psi * psi.adjoint()));
}

DensityOperator mix_with_maximally_mixed(const DensityOperator& rho, double epsilon) {
  if (epsilon < 0 || epsilon > 1) fail(ErrorKind::InvalidArgument, "mixing weight outside [0,1]");
  const int d = rho.dim();
  return DensityOperator(Matrix((1.0 - epsilon) * rho.matrix() + (epsilon / d) * Matrix::Identity(d, d)));
}

DensityOperator random_density(int dim, int rank, std::uint64_t seed) {
  if (dim < 1 || rank < 1 || rank > dim) fail(ErrorKind::InvalidArgument, "need 1 <= rank <= dim");
  Rng rng(seed, kStreamDensity);
  const Matrix g = ginibre(dim, rank, rng);
  Matrix r = g * g.adjoint();
  r /= r.trace().real();
  return DensityOperator(Matrix(0.5 * (r + r.adjoint())));
}

PositiveOperator random_positive(int dim, int rank, std::uint64_t seed, double trace) {
  if (dim < 1 || rank < 1 || rank > dim) fail(ErrorKind::InvalidArgument, "need 1 <= rank <= dim");
  if (!(trace > 0)) fail(ErrorKind::InvalidArgument, "trace must be positive");
  Rng rng(seed, kStreamPositive);
  const Matrix g = ginibre(dim, rank, rng);
  Matrix s = g * g.adjoint();
  s *= trace / s.trace().real();
  return PositiveOperator(Matrix(0.5 * (s + s.adjoint())));
}

QuantumChannel random_channel(int dim_in, int dim_out, int n_kraus, std::uint64_t seed) {
  if (dim_in < 1 || dim_out < 1 || n_kraus < 1) fail(ErrorKind::InvalidArgument, "channel dimensions");
  if (dim_out * n_kraus < dim_in) {
    fail(ErrorKind::InvalidArgument, "dim_out * n_kraus must be at least dim_in");
  }
  Rng rng(seed, kStreamChannel);
  const Matrix g = ginibre(dim_out * n_kraus, dim_in, rng);
  const HermitianOperator gram(Matrix(g.adjoint() * g));
  const Matrix u = g * power(gram, -0.5);
  std::vector<Matrix> kraus(n_kraus, Matrix::Zero(dim_out, dim_in));
  for (int i = 0; i < n_kraus; ++i) {
    for (int o = 0; o < dim_out; ++o) kraus[i].row(o) = u.row(o * n_kraus + i);
  }
  return QuantumChannel(std::move(kraus));
}

Matrix random_unitary(int d, std::uint64_t seed) {
  Rng rng(seed, kStreamUnitary);
  return haar_unitary(d, rng);
}

}  // namespace swivel
