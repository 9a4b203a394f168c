#include "swivel/commutant.hpp"

#include <cmath>

#include "swivel/error.hpp"

namespace swivel {

namespace {

int block_param_count(const CommutantBlock& b, bool first) {
  return (first ? 0 : 1) + b.active * b.active - 1;
}

// exp(iH) for the su(m) element encoded by m² − 1 coordinates plus a phase.
Matrix block_exp(int m, double phase, std::span<const double> su) {
  if (m == 1) return Matrix::Constant(1, 1, std::polar(1.0, phase));
  Matrix h = Matrix::Zero(m, m);
  std::size_t k = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      h(i, j) = Complex(su[k], su[k + 1]);
      h(j, i) = std::conj(h(i, j));
      k += 2;
    }
  }
  double tr = 0.0;
  for (int i = 0; i + 1 < m; ++i) {
    h(i, i) = su[k + i];
    tr += su[k + i];
  }
  h(m - 1, m - 1) = -tr;
  for (int i = 0; i < m; ++i) h(i, i) += phase;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Eigen::VectorXcd e(m);
  for (int i = 0; i < m; ++i) e[i] = std::polar(1.0, es.eigenvalues()[i]);
  return es.eigenvectors() * e.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Commutant::Commutant(Matrix base, Matrix basis, std::vector<CommutantBlock> blocks)
    : base_(std::move(base)), basis_(std::move(basis)), blocks_(std::move(blocks)) {
  int total = 0;
  offsets_.reserve(blocks_.size());
  int offset = 0;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const CommutantBlock& blk = blocks_[b];
    if (blk.start != total || blk.active < 1 || blk.spectator < 1) {
      fail(ErrorKind::InvalidArgument, "commutant blocks must tile the basis in order");
    }
    total += blk.size();
    offsets_.push_back(offset);
    offset += block_param_count(blk, b == 0);
    if (blk.active > 1) torus_ = false;
  }
  if (total != basis_.cols() || basis_.rows() != basis_.cols()) {
    fail(ErrorKind::DimensionMismatch, "commutant blocks do not cover the basis");
  }
  free_dim_ = offset;
}

std::vector<Matrix> Commutant::block_unitaries(std::span<const double> params) const {
  if (static_cast<int>(params.size()) != free_dim_) {
    fail(ErrorKind::DimensionMismatch, "wrong number of swivel parameters");
  }
  std::vector<Matrix> out;
  out.reserve(blocks_.size());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const int m = blocks_[b].active;
    const int off = offsets_[b];
    const double phase = b == 0 ? 0.0 : params[off];
    const std::size_t su_off = off + (b == 0 ? 0 : 1);
    out.push_back(block_exp(m, phase, params.subspan(su_off, m * m - 1)));
  }
  return out;
}

Eigen::VectorXcd Commutant::block_phases(std::span<const double> params) const {
  if (!torus_) fail(ErrorKind::InvalidArgument, "block phases requested on a non-torus commutant");
  if (static_cast<int>(params.size()) != free_dim_) {
    fail(ErrorKind::DimensionMismatch, "wrong number of swivel parameters");
  }
  Eigen::VectorXcd ph(blocks_.size());
  ph[0] = 1.0;
  for (std::size_t b = 1; b < blocks_.size(); ++b) ph[b] = std::polar(1.0, params[offsets_[b]]);
  return ph;
}

Matrix Commutant::local(std::span<const double> params) const {
  const std::vector<Matrix> u = block_unitaries(params);
  Matrix out = Matrix::Zero(dim(), dim());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const CommutantBlock& blk = blocks_[b];
    const int s = blk.spectator;
    for (int a = 0; a < blk.active; ++a) {
      for (int c = 0; c < blk.active; ++c) {
        for (int t = 0; t < s; ++t) out(blk.start + a * s + t, blk.start + c * s + t) = u[b](a, c);
      }
    }
  }
  return out;
}

Matrix Commutant::member(std::span<const double> params) const {
  return basis_ * local(params) * basis_.adjoint();
}

Commutant Commutant::with_spectator(int s) const {
  if (s < 1) fail(ErrorKind::InvalidArgument, "spectator dimension must be positive");
  std::vector<CommutantBlock> blocks = blocks_;
  for (CommutantBlock& b : blocks) {
    b.start *= s;
    b.spectator *= s;
  }
  return Commutant(kron(base_, Matrix::Identity(s, s)), kron(basis_, Matrix::Identity(s, s)), std::move(blocks));
}

double Commutant::commutator_residual(const Matrix& v) const {
  return max_abs_entry(v * base_ - base_ * v);
}

Commutant commutant_of(const HermitianOperator& omega, double cluster_tol) {
  const SpectralDecomposition& eig = omega.spectrum();
  const int n = omega.dim();
  RealVector lam = eig.eigenvalues;
  for (int k = 0; k < n; ++k) {
    if (!eig.in_support(k)) lam[k] = 0.0;
  }
  const double gap = cluster_tol * std::max(1.0, eig.max_abs());
  std::vector<CommutantBlock> blocks;
  int start = 0;
  for (int k = 1; k <= n; ++k) {
    if (k == n || lam[k - 1] - lam[k] > gap) {
      blocks.push_back({start, k - start, 1});
      start = k;
    }
  }
  return Commutant(omega.matrix(), eig.eigenvectors, std::move(blocks));
}

Commutant embed_commutant(const Commutant& local, std::span<const int> dims, std::span<const int> systems) {
  const int n = product(dims);
  int sub = 1;
  for (int s : systems) {
    if (s < 0 || static_cast<std::size_t>(s) >= dims.size()) fail(ErrorKind::DimensionMismatch, "system index");
    sub *= dims[s];
  }
  if (sub != local.dim()) fail(ErrorKind::DimensionMismatch, "commutant does not match the listed subsystems");
  const int rest = n / sub;
  const Commutant lifted = local.with_spectator(rest);

  // Ordering "systems first, then the remaining factors in natural order".
  std::vector<int> perm(systems.begin(), systems.end());
  std::vector<bool> used(dims.size(), false);
  for (int s : systems) used[s] = true;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (!used[k]) perm.push_back(static_cast<int>(k));
  }
  std::vector<int> pdims(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) pdims[k] = dims[perm[k]];

  // Row i of the lifted basis (permuted ordering) maps to natural index nat[i].
  std::vector<int> nat(n);
  for (int i = 0; i < n; ++i) {
    int rem = i;
    std::vector<int> digit(perm.size());
    for (int k = static_cast<int>(perm.size()) - 1; k >= 0; --k) {
      digit[k] = rem % pdims[k];
      rem /= pdims[k];
    }
    std::vector<int> natural(dims.size());
    for (std::size_t k = 0; k < perm.size(); ++k) natural[perm[k]] = digit[k];
    int idx = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + natural[k];
    nat[i] = idx;
  }
  Matrix basis(n, n), base(n, n);
  for (int i = 0; i < n; ++i) basis.row(nat[i]) = lifted.basis().row(i);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) base(nat[i], nat[j]) = lifted.base()(i, j);
  }
  return Commutant(std::move(base), std::move(basis), lifted.blocks());
}

Commutant trivial_commutant(int d) {
  return Commutant(Matrix::Identity(d, d), Matrix::Identity(d, d), {CommutantBlock{0, 1, d}});
}

}  // namespace swivel
