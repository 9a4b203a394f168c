#include "swivel/swivel.hpp"

#include <cmath>
#include <limits>

#include "swivel/entropy.hpp"
#include "swivel/error.hpp"

namespace swivel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kAlphaGuard = 1e-6;

Matrix lift(const Matrix& m, int env) { return kron(m, Matrix::Identity(env, env)); }

void check_alpha_f(double alpha) {
  if (!(alpha >= 0) || std::isinf(alpha)) fail(ErrorKind::InvalidArgument, "alpha must be finite and >= 0");
  require_alpha_away_from_one(alpha);
}

void check_alpha_g(double alpha) {
  if (!(alpha > 0)) fail(ErrorKind::InvalidArgument, "alpha must be positive");
  if (!std::isinf(alpha)) require_alpha_away_from_one(alpha);
}

SwivelGroups groups_for(const Instance& inst, const SwivelOptions& opts) {
  if (opts.groups) {
    if (opts.groups->out.dim() != inst.channel().dim_out() || opts.groups->in.dim() != inst.rho().dim()) {
      fail(ErrorKind::DimensionMismatch, "swivel groups do not match the instance");
    }
    return *opts.groups;
  }
  return default_groups(inst, opts.cluster_tol);
}

// Exponents (a_out, a_mid, a_in, a_rho) of N(ρ), N(σ), σ, ρ in the F/G chains.
struct Exponents {
  double n_rho, n_sigma, sigma, rho;
};

Exponents exponents(NormFamily family, double param) {
  if (family == NormFamily::F) {
    const double a = 0.5 * (1.0 - param);
    return {a, -a, a, 0.5 * param};
  }
  const double ap = alpha_prime(param);
  return {-0.5 * ap, 0.5 * ap, -0.5 * ap, 0.5};
}

Matrix direct_chain(const Instance& inst, NormFamily family, double alpha, const SwivelPoint& point) {
  const Exponents e = exponents(family, alpha);
  const int env = inst.channel().env_dim();
  const Matrix left = power(inst.n_rho(), e.n_rho) * point.v_out * power(inst.n_sigma(), e.n_sigma);
  return lift(left, env) * inst.channel().isometry() * power(inst.sigma().op(), e.sigma) * point.v_in *
         power(inst.rho().op(), e.rho);
}

}  // namespace

void require_alpha_away_from_one(double alpha) {
  if (std::abs(alpha - 1.0) < kAlphaGuard) {
    fail(ErrorKind::DegenerateAlpha, "alpha within 1e-6 of 1; use limits_at_one");
  }
}

double alpha_prime(double alpha) { return std::isinf(alpha) ? 1.0 : (alpha - 1.0) / alpha; }

SwivelGroups default_groups(const Instance& inst, double cluster_tol) {
  return {commutant_of(inst.n_sigma(), cluster_tol), commutant_of(inst.sigma().op(), cluster_tol)};
}

SwivelPoint identity_point(const Instance& inst) {
  return {Matrix::Identity(inst.channel().dim_out(), inst.channel().dim_out()),
          Matrix::Identity(inst.rho().dim(), inst.rho().dim()), {}};
}

double family_norm_index(NormFamily family, double param) {
  switch (family) {
    case NormFamily::F: return 2.0;
    case NormFamily::G: return std::isinf(param) ? kInf : 2.0 * param;
    case NormFamily::Trace: return param;
  }
  return 2.0;
}

NormChain build_chain(const Instance& inst, double param, NormFamily family, const SwivelGroups& groups) {
  const int env = inst.channel().env_dim();
  const Matrix& u = inst.channel().isometry();
  if (family == NormFamily::Trace) {
    if (!(param >= 1.0) || std::isinf(param)) fail(ErrorKind::InvalidArgument, "trace quantity needs finite p >= 1");
    const double r = 1.0 / param;
    std::vector<Matrix> factors{lift(power(inst.n_rho(), r), env),
                                lift(power(inst.n_sigma(), -r), env) * u * power(inst.sigma().op(), r)};
    return NormChain(std::move(factors), SwivelSpace({groups.out.with_spectator(env)}));
  }
  const Exponents e = exponents(family, param);
  std::vector<Matrix> factors{lift(power(inst.n_rho(), e.n_rho), env),
                              lift(power(inst.n_sigma(), e.n_sigma), env) * u * power(inst.sigma().op(), e.sigma),
                              power(inst.rho().op(), e.rho)};
  return NormChain(std::move(factors), SwivelSpace({groups.out.with_spectator(env), groups.in}));
}

double objective_f(const Instance& inst, double alpha, const SwivelPoint& point) {
  check_alpha_f(alpha);
  if (alpha > 1 && !inst.support_ok()) return kInf;
  return 2.0 / (alpha - 1.0) * std::log(direct_chain(inst, NormFamily::F, alpha, point).norm());
}

double objective_g(const Instance& inst, double alpha, const SwivelPoint& point) {
  check_alpha_g(alpha);
  if (alpha > 1 && !inst.support_ok()) return kInf;
  const double p = family_norm_index(NormFamily::G, alpha);
  return 2.0 / alpha_prime(alpha) * std::log(schatten(direct_chain(inst, NormFamily::G, alpha, point), p));
}

double f_at_one(const Instance& inst, const SwivelPoint& point) {
  if (!inst.support_ok() || !inst.output_support_ok()) {
    fail(ErrorKind::SupportViolation, "f(1, .) needs supp(rho) within supp(sigma)");
  }
  const double d = relative_entropy(inst.rho().op(), inst.sigma().op());
  const Matrix moved = inst.channel().apply(point.v_in * inst.rho().matrix() * point.v_in.adjoint());
  const Matrix y = point.v_out.adjoint() * log_support(inst.n_rho()) * point.v_out - log_support(inst.n_sigma());
  return d - (moved * y).trace().real();
}

SwivelOptimum maximize_norm(const Instance& inst, double param, NormFamily family, const SwivelOptions& opts) {
  if (family == NormFamily::F) check_alpha_f(param);
  if (family == NormFamily::G) check_alpha_g(param);
  const SwivelGroups groups = groups_for(inst, opts);
  const NormChain chain = build_chain(inst, param, family, groups);
  const double p = family_norm_index(family, param);
  const Objective obj = [&](std::span<const double> x) { return chain.log_norm(x, p); };
  const OptimizeResult r = maximize(chain.space().search_space(), obj, opts.budget, opts.warm_starts);

  SwivelOptimum out;
  out.value = r.value;
  out.restarts_used = r.restarts_used;
  out.certified = r.certified;
  out.budget_exceeded = r.budget_exceeded;
  out.evaluations = r.evaluations;
  out.point.params = r.params;
  const std::span<const double> x(r.params);
  out.point.v_out = groups.out.member(chain.space().slice(x, 0));
  out.point.v_in = family == NormFamily::Trace ? Matrix::Identity(inst.rho().dim(), inst.rho().dim())
                                               : groups.in.member(chain.space().slice(x, 1));
  return out;
}

SwivelValue delta_prime(const Instance& inst, double alpha, const SwivelOptions& opts) {
  check_alpha_f(alpha);
  SwivelValue v;
  if (alpha > 1 && !inst.support_ok()) {
    v.value = kInf;
    v.support_violation = true;
    return v;
  }
  v.optimum = maximize_norm(inst, alpha, NormFamily::F, opts);
  v.value = 2.0 / (alpha - 1.0) * v.optimum.value;
  return v;
}

SwivelValue delta_tilde_prime(const Instance& inst, double alpha, const SwivelOptions& opts) {
  check_alpha_g(alpha);
  SwivelValue v;
  if (alpha > 1 && !inst.support_ok()) {
    v.value = kInf;
    v.support_violation = true;
    return v;
  }
  v.optimum = maximize_norm(inst, alpha, NormFamily::G, opts);
  v.value = 2.0 / alpha_prime(alpha) * v.optimum.value;
  return v;
}

OneSidedLimits limits_at_one(const Instance& inst, const SwivelOptions& opts) {
  if (!inst.support_ok() || !inst.output_support_ok()) {
    fail(ErrorKind::SupportViolation, "limits at one need supp(rho) within supp(sigma)");
  }
  const SwivelGroups groups = groups_for(inst, opts);
  const SwivelSpace space({groups.out, groups.in});

  const double d = relative_entropy(inst.rho().op(), inst.sigma().op());
  const Matrix log_nr = log_support(inst.n_rho());
  const Matrix log_ns = log_support(inst.n_sigma());
  const Matrix& rho = inst.rho().matrix();
  const QuantumChannel& ch = inst.channel();
  auto f1 = [&](std::span<const double> x) {
    const Matrix vo = groups.out.member(space.slice(x, 0));
    const Matrix vi = groups.in.member(space.slice(x, 1));
    const Matrix moved = ch.apply(vi * rho * vi.adjoint());
    const Matrix y = vo.adjoint() * log_nr * vo - log_ns;
    return d - (moved * y).trace().real();
  };

  auto make = [&](const OptimizeResult& r, double sign) {
    SwivelOptimum o;
    o.value = sign * r.value;
    o.restarts_used = r.restarts_used;
    o.certified = r.certified;
    o.budget_exceeded = r.budget_exceeded;
    o.evaluations = r.evaluations;
    o.point.params = r.params;
    o.point.v_out = groups.out.member(space.slice(r.params, 0));
    o.point.v_in = groups.in.member(space.slice(r.params, 1));
    return o;
  };

  const OptimizeResult hi = maximize(space.search_space(), f1, opts.budget, opts.warm_starts);
  const OptimizeResult lo = maximize(
      space.search_space(), [&](std::span<const double> x) { return -f1(x); }, opts.budget, opts.warm_starts);
  OneSidedLimits out;
  out.right_opt = make(hi, 1.0);
  out.left_opt = make(lo, -1.0);
  out.right = out.right_opt.value;
  out.left = out.left_opt.value;
  return out;
}

double q_alpha(const Instance& inst, double alpha) {
  if (!(alpha >= 0) || std::isinf(alpha)) fail(ErrorKind::InvalidArgument, "alpha must be finite and >= 0");
  const double n = direct_chain(inst, NormFamily::F, alpha, identity_point(inst)).norm();
  return n * n;
}

double delta_alpha_unswiveled(const Instance& inst, double alpha) {
  return objective_f(inst, alpha, identity_point(inst));
}

double delta_tilde_alpha_unswiveled(const Instance& inst, double alpha) {
  return objective_g(inst, alpha, identity_point(inst));
}

}  // namespace swivel
