#include "swivel/norm_chain.hpp"

#include <cmath>
#include <limits>

#include "swivel/error.hpp"

namespace swivel {

namespace {

constexpr std::size_t kMaxGramTerms = 64;

RealVector gram_eigenvalues(const Matrix& x) {
  const Matrix h = x.rows() < x.cols() ? Matrix(x * x.adjoint()) : Matrix(x.adjoint() * x);
  const Eigen::Index m = h.rows();
  RealVector ev(m);
  if (m == 1) {
    ev[0] = h(0, 0).real();
  } else if (m == 2) {
    const double a = h(0, 0).real(), d = h(1, 1).real();
    const double mean = 0.5 * (a + d);
    const double half = 0.5 * (a - d);
    const double r = std::sqrt(half * half + std::norm(h(0, 1)));
    ev[0] = mean + r;
    ev[1] = mean - r;
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    ev = es.eigenvalues();
  }
  return ev;
}

}  // namespace

SwivelSpace::SwivelSpace(std::vector<Commutant> groups) : groups_(std::move(groups)) {
  int off = 0;
  for (const Commutant& g : groups_) {
    offsets_.push_back(off);
    off += g.free_dim();
  }
  free_dim_ = off;
}

bool SwivelSpace::torus() const {
  for (const Commutant& g : groups_) {
    if (!g.is_torus()) return false;
  }
  return true;
}

std::span<const double> SwivelSpace::slice(std::span<const double> params, std::size_t group) const {
  if (static_cast<int>(params.size()) != free_dim_) {
    fail(ErrorKind::DimensionMismatch, "wrong number of swivel parameters");
  }
  return params.subspan(offsets_[group], groups_[group].free_dim());
}

std::vector<Matrix> SwivelSpace::members(std::span<const double> params) const {
  std::vector<Matrix> out;
  for (std::size_t j = 0; j < groups_.size(); ++j) out.push_back(groups_[j].member(slice(params, j)));
  return out;
}

NormChain::NormChain(std::vector<Matrix> factors, SwivelSpace space) : space_(std::move(space)) {
  const std::vector<Commutant>& groups = space_.groups();
  const std::size_t k = groups.size();
  if (factors.size() != k + 1) fail(ErrorKind::DimensionMismatch, "chain needs one more factor than groups");
  for (std::size_t j = 0; j < k; ++j) {
    if (factors[j].cols() != groups[j].dim() || factors[j + 1].rows() != groups[j].dim()) {
      fail(ErrorKind::DimensionMismatch, "chain factor does not match swivel dimension");
    }
  }
  g_.resize(k + 1);
  for (std::size_t j = 0; j <= k; ++j) {
    Matrix m = factors[j];
    if (j > 0) m = groups[j - 1].basis().adjoint() * m;
    if (j < k) m = m * groups[j].basis();
    g_[j] = std::move(m);
  }
  coord_block_.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    coord_block_[j].resize(groups[j].dim());
    const auto& blocks = groups[j].blocks();
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (int c = 0; c < blocks[b].size(); ++c) coord_block_[j][blocks[b].start + c] = static_cast<int>(b);
    }
  }

  if (!space_.torus() || k == 0) return;
  std::size_t count = 1;
  for (const Commutant& g : groups) {
    count *= g.blocks().size();
    if (count > kMaxGramTerms) return;
  }
  // Enumerate block choices and build M_t = G_0 P_{b1} G_1 … P_{bk} G_k.
  std::vector<Matrix> terms;
  std::vector<int> choice(k, 0);
  for (std::size_t t = 0; t < count; ++t) {
    std::size_t rem = t;
    for (std::size_t j = k; j-- > 0;) {
      const std::size_t nb = groups[j].blocks().size();
      choice[j] = static_cast<int>(rem % nb);
      rem /= nb;
    }
    Matrix y = g_[k];
    for (std::size_t j = k; j-- > 0;) {
      const CommutantBlock& blk = groups[j].blocks()[choice[j]];
      Matrix masked = Matrix::Zero(y.rows(), y.cols());
      masked.middleRows(blk.start, blk.size()) = y.middleRows(blk.start, blk.size());
      y = g_[j] * masked;
    }
    terms.push_back(std::move(y));
    terms_.push_back(choice);
  }
  gram_.resize(count, count);
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a; b < count; ++b) {
      const Complex v = (terms[a].adjoint() * terms[b]).trace();
      gram_(a, b) = v;
      gram_(b, a) = std::conj(v);
    }
  }
  use_gram_ = true;
}

Matrix NormChain::assemble(std::span<const double> params) const {
  const std::vector<Commutant>& groups = space_.groups();
  const std::size_t k = groups.size();
  Matrix y = g_[k];
  for (std::size_t j = k; j-- > 0;) {
    const std::span<const double> p = space_.slice(params, j);
    if (groups[j].is_torus()) {
      const Eigen::VectorXcd ph = groups[j].block_phases(p);
      for (Eigen::Index r = 0; r < y.rows(); ++r) y.row(r) *= ph[coord_block_[j][r]];
    } else {
      const std::vector<Matrix> u = groups[j].block_unitaries(p);
      Matrix z(y.rows(), y.cols());
      const auto& blocks = groups[j].blocks();
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        const CommutantBlock& blk = blocks[b];
        const int s = blk.spectator;
        for (int t = 0; t < s; ++t) {
          // Rows start + a*s + t, a = 0..active-1, transform by u[b].
          for (int a = 0; a < blk.active; ++a) {
            Eigen::RowVectorXcd acc = Eigen::RowVectorXcd::Zero(y.cols());
            for (int c = 0; c < blk.active; ++c) acc += u[b](a, c) * y.row(blk.start + c * s + t);
            z.row(blk.start + a * s + t) = acc;
          }
        }
      }
      y = std::move(z);
    }
    y = g_[j] * y;
  }
  return y;
}

double NormChain::log_norm_gram(std::span<const double> params) const {
  const std::vector<Commutant>& groups = space_.groups();
  std::vector<Eigen::VectorXcd> ph(groups.size());
  for (std::size_t j = 0; j < groups.size(); ++j) ph[j] = groups[j].block_phases(space_.slice(params, j));
  Eigen::VectorXcd c(terms_.size());
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    Complex v = 1.0;
    for (std::size_t j = 0; j < groups.size(); ++j) v *= ph[j][terms_[t][j]];
    c[t] = v;
  }
  const double q = c.dot(gram_ * c).real();
  return q > 0 ? 0.5 * std::log(q) : -std::numeric_limits<double>::infinity();
}

double NormChain::log_norm(std::span<const double> params, double p) const {
  if (p == 2.0 && use_gram_) return log_norm_gram(params);
  const Matrix x = assemble(params);
  if (p == 2.0) {
    const double q = x.squaredNorm();
    return q > 0 ? 0.5 * std::log(q) : -std::numeric_limits<double>::infinity();
  }
  if (p < 2.0) {
    // Squaring would cost half the digits of the small singular values.
    const RealVector s = Eigen::JacobiSVD<Matrix>(x).singularValues();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      if (s[i] > 0) acc += std::pow(s[i], p);
    }
    return acc > 0 ? std::log(acc) / p : -std::numeric_limits<double>::infinity();
  }
  const RealVector ev = gram_eigenvalues(x);
  if (std::isinf(p)) {
    const double top = ev.maxCoeff();
    return top > 0 ? 0.5 * std::log(top) : -std::numeric_limits<double>::infinity();
  }
  double acc = 0.0;
  const double half = 0.5 * p;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] > 0) acc += std::pow(ev[i], half);
  }
  return acc > 0 ? std::log(acc) / p : -std::numeric_limits<double>::infinity();
}

}  // namespace swivel
