#include "swivel/cmi_recovery.hpp"

#include <cmath>
#include <limits>

#include "swivel/entropy.hpp"
#include "swivel/error.hpp"

namespace swivel {

namespace {

DensityOperator marginal(const DensityOperator& rho, const std::array<int, 3>& dims, std::vector<int> traced) {
  return DensityOperator(partial_trace(rho.matrix(), dims, traced));
}

}  // namespace

TripartiteState::TripartiteState(DensityOperator state, int d_a, int d_b, int d_c)
    : state_(std::move(state)),
      dims_{d_a, d_b, d_c},
      ac_(marginal(state_, dims_, {1})),
      bc_(marginal(state_, dims_, {0})),
      c_(marginal(state_, dims_, {0, 1})),
      ab_(marginal(state_, dims_, {2})),
      a_(marginal(state_, dims_, {1, 2})),
      b_(marginal(state_, dims_, {0, 2})) {}

double cmi(const TripartiteState& s) {
  return vn_entropy(s.rho_ac().op()) + vn_entropy(s.rho_bc().op()) - vn_entropy(s.rho_c().op()) -
         vn_entropy(s.state().op());
}

TripartiteState swap_ab(const TripartiteState& s) {
  const std::array<int, 3>& d = s.dims();
  const int perm[3] = {1, 0, 2};
  return TripartiteState(DensityOperator(permute_systems(s.state().matrix(), d, perm)), d[1], d[0], d[2]);
}

CmiProblem cmi_instance(const TripartiteState& s, double cluster_tol) {
  const std::array<int, 3>& d = s.dims();
  const int ac[2] = {0, 2};
  const int out_dims[2] = {d[1], d[2]};
  const int c_only[1] = {1};
  PositiveOperator sigma(embed(s.rho_ac().matrix(), d, ac));
  Instance inst(s.state(), std::move(sigma), QuantumChannel::partial_trace({d[0], d[1], d[2]}, {0}));
  SwivelGroups groups{embed_commutant(commutant_of(s.rho_c().op(), cluster_tol), out_dims, c_only),
                      embed_commutant(commutant_of(s.rho_ac().op(), cluster_tol), d, ac)};
  return {std::move(inst), std::move(groups)};
}

SwivelValue cmi_prime(const TripartiteState& state, double alpha, SwivelOptions opts) {
  CmiProblem p = cmi_instance(state, opts.cluster_tol);
  opts.groups = std::move(p.groups);
  return delta_prime(p.instance, alpha, opts);
}

SwivelValue cmi_tilde_prime(const TripartiteState& state, double alpha, SwivelOptions opts) {
  CmiProblem p = cmi_instance(state, opts.cluster_tol);
  opts.groups = std::move(p.groups);
  return delta_tilde_prime(p.instance, alpha, opts);
}

RecoveryMap::RecoveryMap(RecoveryKind kind, double t, std::vector<Matrix> kraus)
    : kind_(kind), t_(t), kraus_(std::move(kraus)) {}

RecoveryMap RecoveryMap::swiveled(const PositiveOperator& sigma, const QuantumChannel& channel, const Matrix& v,
                                  const Matrix& w) {
  if (sigma.dim() != channel.dim_in()) fail(ErrorKind::DimensionMismatch, "sigma does not match channel input");
  const HermitianOperator ns(channel.apply(sigma.matrix()));
  if (ns.spectrum().support_rank == 0) fail(ErrorKind::InvalidArgument, "N(sigma) is zero");
  if (v.rows() != channel.dim_out() || w.rows() != channel.dim_in()) {
    fail(ErrorKind::DimensionMismatch, "recovery unitaries have the wrong size");
  }
  const Matrix left = w * power(sigma.op(), 0.5);
  const Matrix right = power(ns, -0.5) * v;
  std::vector<Matrix> kraus;
  kraus.reserve(channel.kraus().size());
  for (const Matrix& k : channel.kraus()) kraus.push_back(left * k.adjoint() * right);
  return RecoveryMap(RecoveryKind::Swiveled, 0.0, std::move(kraus));
}

RecoveryMap RecoveryMap::petz(const PositiveOperator& sigma, const QuantumChannel& channel) {
  RecoveryMap r = swiveled(sigma, channel, Matrix::Identity(channel.dim_out(), channel.dim_out()),
                           Matrix::Identity(channel.dim_in(), channel.dim_in()));
  r.kind_ = RecoveryKind::Petz;
  return r;
}

RecoveryMap RecoveryMap::rotated(const PositiveOperator& sigma, const QuantumChannel& channel, double t) {
  const HermitianOperator ns(channel.apply(sigma.matrix()));
  RecoveryMap r = swiveled(sigma, channel, imaginary_power(ns, -t), imaginary_power(sigma.op(), t));
  r.kind_ = RecoveryKind::Rotated;
  r.t_ = t;
  return r;
}

RecoveryMap RecoveryMap::from_point(const PositiveOperator& sigma, const QuantumChannel& channel,
                                    const SwivelPoint& point) {
  return swiveled(sigma, channel, point.v_out.adjoint(), point.v_in.adjoint());
}

Matrix RecoveryMap::apply(const Matrix& y) const {
  if (y.rows() != dim_in() || y.cols() != dim_in()) fail(ErrorKind::DimensionMismatch, "recovery input shape");
  Matrix out = Matrix::Zero(dim_out(), dim_out());
  for (const Matrix& k : kraus_) out.noalias() += k * y * k.adjoint();
  return out;
}

Matrix RecoveryMap::choi() const {
  const int din = dim_in(), dout = dim_out();
  Matrix c = Matrix::Zero(din * dout, din * dout);
  for (int i = 0; i < din; ++i) {
    for (int j = 0; j < din; ++j) {
      Matrix e = Matrix::Zero(din, din);
      e(i, j) = 1.0;
      c.block(i * dout, j * dout, dout, dout) = apply(e);
    }
  }
  return c;
}

RecoveryMap build_recovery(RecoveryKind kind, const PositiveOperator& sigma, const QuantumChannel& channel,
                           double t, const SwivelPoint* point) {
  switch (kind) {
    case RecoveryKind::Petz: return RecoveryMap::petz(sigma, channel);
    case RecoveryKind::Rotated: return RecoveryMap::rotated(sigma, channel, t);
    case RecoveryKind::Swiveled:
      if (!point) fail(ErrorKind::InvalidArgument, "swiveled recovery needs a swivel point");
      return RecoveryMap::from_point(sigma, channel, *point);
  }
  fail(ErrorKind::InvalidArgument, "unknown recovery kind");
}

std::vector<double> default_t_grid() {
  std::vector<double> g;
  for (int i = -200; i <= 200; ++i) g.push_back(0.05 * i);
  return g;
}

RecoveryReport recovery_bounds(const Instance& inst, const std::vector<double>& t_grid, const SwivelOptions& opts,
                               bool need_upper) {
  RecoveryReport r;
  r.delta = delta(inst);
  const HermitianOperator& rho = inst.rho().op();
  auto recovered = [&](const RecoveryMap& m) { return HermitianOperator(m.apply(inst.n_rho().matrix())); };

  const SwivelValue fid = delta_tilde_prime(inst, 0.5, opts);
  r.fidelity_bound = fid.value;
  r.fidelity_bound_explicit =
      -std::log(fidelity(rho, recovered(RecoveryMap::from_point(inst.sigma(), inst.channel(), fid.optimum.point))));

  const SwivelValue zero = delta_prime(inst, 0.0, opts);
  r.d0_bound = zero.value;
  r.d0_bound_explicit = d0(rho, recovered(RecoveryMap::from_point(inst.sigma(), inst.channel(), zero.optimum.point)));
  r.certified = fid.optimum.certified && zero.optimum.certified;

  r.t_grid = t_grid;
  for (double t : t_grid) {
    const HermitianOperator rt = recovered(RecoveryMap::rotated(inst.sigma(), inst.channel(), t));
    r.rotated_d0.push_back(d0(rho, rt));
    r.rotated_d2.push_back(d2(rho, rt));
  }

  const bool structured = inst.channel().has_unitary_dilation() && inst.pd_flags().all();
  if (!structured) {
    if (need_upper) {
      fail(ErrorKind::StructureRequired, "upper recovery bounds need a unitary dilation and a positive definite instance");
    }
    return r;
  }
  r.has_upper = true;
  const SwivelValue top = delta_tilde_prime(inst, std::numeric_limits<double>::infinity(), opts);
  r.dmax_bound = top.value;
  r.dmax_bound_explicit =
      dmax(rho, recovered(RecoveryMap::from_point(inst.sigma(), inst.channel(), top.optimum.point)));
  const SwivelValue two = delta_prime(inst, 2.0, opts);
  r.d2_bound = two.value;
  r.d2_bound_explicit = d2(rho, recovered(RecoveryMap::from_point(inst.sigma(), inst.channel(), two.optimum.point)));
  r.certified = r.certified && top.optimum.certified && two.optimum.certified;
  return r;
}

RecoveryReport ssa_refinement(const TripartiteState& state, const SwivelOptions& opts) {
  CmiProblem p = cmi_instance(state, opts.cluster_tol);
  SwivelOptions o = opts;
  o.groups = std::move(p.groups);
  RecoveryReport r = recovery_bounds(p.instance, {}, o, false);
  r.delta = cmi(state);
  return r;
}

}  // namespace swivel
