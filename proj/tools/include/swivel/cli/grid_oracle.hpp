#pragma once

// Brute-force maximum of log‖X‖_2 for the F chain on a qubit-to-qubit
// instance, built from Eigen primitives only. Each commutant is
// {P0 + e^{iθ} P1} for the two eigenprojectors, so X is a trigonometric
// polynomial in (θ_out, θ_in). θ_out runs over a grid; the maximum over θ_in
// is exact since ‖Y0 + e^{iθ}Y1‖² peaks at ‖Y0‖² + ‖Y1‖² + 2|⟨Y0, Y1⟩|.

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace swivel::oracle {

struct QubitPieces {
  Eigen::MatrixXcd pow;  // ω^t on the support
  Eigen::MatrixXcd p0, p1;  // eigenprojectors
};

inline QubitPieces qubit_pieces(const Eigen::MatrixXcd& omega, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (omega + omega.adjoint()));
  const Eigen::VectorXd& l = es.eigenvalues();
  const Eigen::MatrixXcd& v = es.eigenvectors();
  QubitPieces q;
  q.pow = Eigen::MatrixXcd::Zero(2, 2);
  for (int k = 0; k < 2; ++k) {
    if (l[k] > 1e-12 * l.cwiseAbs().maxCoeff()) q.pow += std::pow(l[k], t) * v.col(k) * v.col(k).adjoint();
  }
  q.p0 = v.col(0) * v.col(0).adjoint();
  q.p1 = v.col(1) * v.col(1).adjoint();
  return q;
}

/// `kraus`: qubit-to-qubit Kraus operators; ρ, σ full rank.
inline double grid_max_log_norm_f(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma,
                                  const std::vector<Eigen::MatrixXcd>& kraus, double alpha, double step = 1e-3) {
  Eigen::MatrixXcd n_rho = Eigen::MatrixXcd::Zero(2, 2), n_sigma = Eigen::MatrixXcd::Zero(2, 2);
  for (const auto& k : kraus) {
    n_rho += k * rho * k.adjoint();
    n_sigma += k * sigma * k.adjoint();
  }
  const QubitPieces a = qubit_pieces(n_rho, (1.0 - alpha) / 2);
  const QubitPieces b = qubit_pieces(n_sigma, (alpha - 1.0) / 2);
  const QubitPieces c = qubit_pieces(sigma, (1.0 - alpha) / 2);
  const QubitPieces d = qubit_pieces(rho, alpha / 2);
  // X_{jk}: j selects the output projector, k the input one. Env index is the Kraus index.
  auto piece = [&](const Eigen::MatrixXcd& po, const Eigen::MatrixXcd& pi) {
    const int e = static_cast<int>(kraus.size());
    Eigen::MatrixXcd x(2 * e, 2);
    const Eigen::MatrixXcd left = a.pow * po * b.pow;
    const Eigen::MatrixXcd right = c.pow * pi * d.pow;
    for (int i = 0; i < e; ++i) {
      const Eigen::MatrixXcd blk = left * kraus[i] * right;
      for (int r = 0; r < 2; ++r) x.row(r * e + i) = blk.row(r);
    }
    return x;
  };
  const Eigen::MatrixXcd x00 = piece(b.p0, c.p0), x01 = piece(b.p0, c.p1);
  const Eigen::MatrixXcd x10 = piece(b.p1, c.p0), x11 = piece(b.p1, c.p1);
  double best = 0.0;
  const int n = static_cast<int>(std::ceil(2 * std::numbers::pi / step));
  for (int i = 0; i < n; ++i) {
    const std::complex<double> z = std::polar(1.0, i * step);
    const Eigen::MatrixXcd y0 = x00 + z * x10, y1 = x01 + z * x11;
    const double v = y0.squaredNorm() + y1.squaredNorm() + 2 * std::abs((y0.adjoint() * y1).trace());
    best = std::max(best, v);
  }
  return 0.5 * std::log(best);
}

}  // namespace swivel::oracle
