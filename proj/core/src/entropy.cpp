#include "swivel/entropy.hpp"

#include <cmath>
#include <limits>

#include "swivel/error.hpp"

namespace swivel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void same_dim(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::DimensionMismatch, "entropy arguments differ in dimension");
}

void check_alpha(double alpha) {
  if (!(alpha > 0)) fail(ErrorKind::InvalidArgument, "Renyi parameter must be positive");
  if (alpha == 1.0) fail(ErrorKind::DegenerateAlpha, "alpha = 1 is the relative entropy");
}

double trace_xlogy(const HermitianOperator& rho, const Matrix& log_op) {
  return (rho.matrix() * log_op).trace().real();
}

}  // namespace

double vn_entropy(const HermitianOperator& rho) {
  const SpectralDecomposition& eig = rho.spectrum();
  double h = 0.0;
  for (int k = 0; k < eig.eigenvalues.size(); ++k) {
    const double lam = eig.eigenvalues[k];
    if (eig.in_support(k) && lam > 0) h -= lam * std::log(lam);
  }
  return h;
}

double renyi_entropy(const HermitianOperator& rho, double alpha) {
  check_alpha(alpha);
  const SpectralDecomposition& eig = rho.spectrum();
  double s = 0.0;
  for (int k = 0; k < eig.eigenvalues.size(); ++k) {
    if (eig.in_support(k) && eig.eigenvalues[k] > 0) s += std::pow(eig.eigenvalues[k], alpha);
  }
  return std::log(s) / (1.0 - alpha);
}

double relative_entropy(const HermitianOperator& rho, const HermitianOperator& sigma) {
  same_dim(rho, sigma);
  if (!support_contained(rho, sigma)) return kInf;
  return trace_xlogy(rho, log_support(rho)) - trace_xlogy(rho, log_support(sigma));
}

double renyi_rel(const HermitianOperator& rho, const HermitianOperator& sigma, double alpha) {
  same_dim(rho, sigma);
  check_alpha(alpha);
  if (alpha > 1 && !support_contained(rho, sigma)) return kInf;
  const Matrix x = power(sigma, 0.5 * (1.0 - alpha)) * power(rho, 0.5 * alpha);
  return 2.0 / (alpha - 1.0) * std::log(x.norm());
}

double sandwiched_rel(const HermitianOperator& rho, const HermitianOperator& sigma, double alpha) {
  same_dim(rho, sigma);
  if (std::isinf(alpha)) return dmax(rho, sigma);
  check_alpha(alpha);
  if (alpha > 1 && !support_contained(rho, sigma)) return kInf;
  const Matrix x = power(sigma, (1.0 - alpha) / (2.0 * alpha)) * power(rho, 0.5);
  return 2.0 * alpha / (alpha - 1.0) * std::log(schatten(x, 2.0 * alpha));
}

double dmax(const HermitianOperator& rho, const HermitianOperator& sigma) {
  same_dim(rho, sigma);
  if (!support_contained(rho, sigma)) return kInf;
  const Matrix s = power(sigma, -0.5);
  return std::log(schatten(s * rho.matrix() * s, kInf));
}

double fidelity(const HermitianOperator& rho, const HermitianOperator& sigma) {
  same_dim(rho, sigma);
  const double f = schatten(power(rho, 0.5) * power(sigma, 0.5), 1.0);
  return f * f;
}

double d2(const HermitianOperator& rho, const HermitianOperator& sigma) {
  same_dim(rho, sigma);
  if (!support_contained(rho, sigma)) return kInf;
  const double n = (rho.matrix() * power(sigma, -0.5)).norm();
  return std::log(n * n);
}

double d0(const HermitianOperator& rho, const HermitianOperator& sigma) {
  same_dim(rho, sigma);
  const double t = (support_projector(rho) * sigma.matrix()).trace().real();
  return t > 0 ? -std::log(t) : kInf;
}

double delta(const Instance& inst) {
  if (!inst.support_ok()) fail(ErrorKind::SupportViolation, "delta requires supp(rho) within supp(sigma)");
  return relative_entropy(inst.rho().op(), inst.sigma().op()) - relative_entropy(inst.n_rho(), inst.n_sigma());
}

EntropyValue evaluate(EntropyKind kind, const HermitianOperator& rho, const HermitianOperator& sigma,
                      std::optional<double> alpha) {
  auto need_alpha = [&]() {
    if (!alpha) fail(ErrorKind::InvalidArgument, "this entropy kind needs an alpha");
    return *alpha;
  };
  EntropyValue v;
  v.kind = kind;
  v.alpha = alpha;
  switch (kind) {
    case EntropyKind::H: v.value = vn_entropy(rho); break;
    case EntropyKind::H_alpha: v.value = renyi_entropy(rho, need_alpha()); break;
    case EntropyKind::D: v.value = relative_entropy(rho, sigma); break;
    case EntropyKind::D_alpha: v.value = renyi_rel(rho, sigma, need_alpha()); break;
    case EntropyKind::D_tilde_alpha: v.value = sandwiched_rel(rho, sigma, need_alpha()); break;
    case EntropyKind::D0: v.value = d0(rho, sigma); break;
    case EntropyKind::D2: v.value = d2(rho, sigma); break;
    case EntropyKind::Dmin: v.value = -std::log(fidelity(rho, sigma)); break;
    case EntropyKind::Dmax: v.value = dmax(rho, sigma); break;
    case EntropyKind::Delta:
      fail(ErrorKind::InvalidArgument, "Delta is defined on an Instance; call delta()");
  }
  return v;
}

}  // namespace swivel
