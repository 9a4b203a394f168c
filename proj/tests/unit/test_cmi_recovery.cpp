#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "swivel/cli/classical_oracle.hpp"
#include "test_helpers.hpp"

using namespace swivel;
using swivel::testing::diag;
using swivel::testing::max_diff;

namespace {

SwivelOptions reduced() {
  SwivelOptions o;
  o.budget.restarts = 4;
  o.budget.max_evals = 4096;
  return o;
}

TripartiteState classical_state(const std::vector<double>& p) { return TripartiteState(DensityOperator(diag(p)), 2, 2, 2); }

TripartiteState product_state(std::uint64_t seed) {
  const Matrix m = kron(kron(random_density(2, 2, mix_seed(seed, 1)).matrix(), random_density(2, 2, mix_seed(seed, 2)).matrix()),
                        random_density(2, 2, mix_seed(seed, 3)).matrix());
  return TripartiteState(DensityOperator(m), 2, 2, 2);
}

// Σ_c p_c ρ_{A|c} ⊗ ρ_{B|c} ⊗ |c⟩⟨c|: a quantum Markov chain A − C − B.
TripartiteState markov_state(std::uint64_t seed) {
  Matrix m = Matrix::Zero(8, 8);
  const std::vector<double> pc = swivel::testing::random_distribution(2, seed);
  for (int c = 0; c < 2; ++c) {
    Matrix proj = Matrix::Zero(2, 2);
    proj(c, c) = 1.0;
    m += pc[c] * kron(kron(random_density(2, 2, mix_seed(seed, 10 + c)).matrix(),
                           random_density(2, 2, mix_seed(seed, 20 + c)).matrix()),
                      proj);
  }
  return TripartiteState(DensityOperator(m), 2, 2, 2);
}

Matrix pure(const Vector& v) { return v * v.adjoint(); }

}  // namespace

TEST_CASE("tripartite marginals") {
  const TripartiteState s = cli::random_tripartite(3, 2, 3, 2);
  const Matrix& m = s.state().matrix();
  const int dims[3] = {2, 3, 2};
  const int tb[1] = {1}, ta[1] = {0}, tab[2] = {0, 1}, tc[1] = {2}, tac[2] = {0, 2}, tbc[2] = {1, 2};
  CHECK(max_diff(s.rho_ac().matrix(), partial_trace(m, dims, tb)) <= 1e-12);
  CHECK(max_diff(s.rho_bc().matrix(), partial_trace(m, dims, ta)) <= 1e-12);
  CHECK(max_diff(s.rho_c().matrix(), partial_trace(m, dims, tab)) <= 1e-12);
  CHECK(max_diff(s.rho_ab().matrix(), partial_trace(m, dims, tc)) <= 1e-12);
  CHECK(max_diff(s.rho_b().matrix(), partial_trace(m, dims, tac)) <= 1e-12);
  CHECK(max_diff(s.rho_a().matrix(), partial_trace(m, dims, tbc)) <= 1e-12);
  CHECK_THROWS_AS(TripartiteState(random_density(8, 8, 1), 2, 2, 3), Error);

  const TripartiteState sw = swap_ab(s);
  CHECK(sw.dims()[0] == 3);
  CHECK(max_diff(sw.rho_a().matrix(), s.rho_b().matrix()) <= 1e-12);
  CHECK(std::abs(cmi(sw) - cmi(s)) <= 1e-10);
}

TEST_CASE("conditional mutual information") {
  CHECK(std::abs(cmi(product_state(1))) <= 1e-10);

  // Perfectly correlated A and B, independent of C.
  Vector v = Vector::Zero(8);
  v[0] = v[6] = 1.0 / std::sqrt(2.0);
  CHECK(cmi(TripartiteState(DensityOperator(diag({0.5, 0, 0, 0, 0, 0, 0.5, 0})), 2, 2, 2)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(cmi(TripartiteState(DensityOperator(pure(v)), 2, 2, 2)) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));

  // Populations of ½(|000⟩ + |111⟩): C already fixes A and B.
  CHECK(std::abs(cmi(classical_state({0.5, 0, 0, 0, 0, 0, 0, 0.5}))) <= 1e-12);

  for (std::uint64_t s = 0; s < 10; ++s) {
    const std::vector<double> p = swivel::testing::random_distribution(8, 40 + s);
    const oracle::Joint j{{2, 2, 2}, p};
    CHECK(std::abs(cmi(classical_state(p)) - oracle::cmi(j)) <= 1e-12);
    CHECK(cmi(cli::random_tripartite(s)) >= -1e-9);
  }

  const TripartiteState mi(random_density(6, 6, 5), 2, 3, 1);
  CHECK(std::abs(cmi(mi) - (vn_entropy(mi.rho_a()) + vn_entropy(mi.rho_b()) - vn_entropy(mi.rho_ab()))) <= 1e-12);
  CHECK(std::abs(cmi(markov_state(2))) <= 1e-10);
}

TEST_CASE("swiveled CMI on structured states") {
  const TripartiteState prod = product_state(7);
  for (double a : {0.0, 0.5, 1.5, 2.0}) CHECK(std::abs(cmi_prime(prod, a).value) <= 1e-8);
  for (double a : {0.5, 2.0}) CHECK(std::abs(cmi_tilde_prime(prod, a, reduced()).value) <= 1e-8);

  for (std::uint64_t s = 0; s < 3; ++s) {
    const std::vector<double> p = swivel::testing::random_distribution(8, mix_seed(59, s));
    const oracle::Joint j{{2, 2, 2}, p};
    const TripartiteState st = classical_state(p);
    for (double a : {0.5, 2.0}) {
      CHECK(std::abs(cmi_prime(st, a).value - oracle::cmi_prime(j, a)) <= 1e-9);
      CHECK(std::abs(cmi_tilde_prime(st, a, reduced()).value - oracle::cmi_prime(j, a)) <= 1e-9);
    }
  }

  // Trivial C: the Petz-Rényi mutual information.
  const TripartiteState mi(random_density(4, 4, 9), 2, 2, 1);
  const HermitianOperator prod_ab(kron(mi.rho_a().matrix(), mi.rho_b().matrix()));
  for (double a : {0.5, 1.5}) CHECK(std::abs(cmi_prime(mi, a).value - renyi_rel(mi.rho_ab(), prod_ab, a)) <= 1e-9);
}

TEST_CASE("CMI instance layout") {
  const TripartiteState s = cli::random_tripartite(11);
  const CmiProblem p = cmi_instance(s);
  CHECK(p.instance.channel().dim_in() == 8);
  CHECK(p.instance.channel().dim_out() == 4);
  CHECK(p.instance.sigma().op().trace() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(max_diff(p.instance.n_rho().matrix(), s.rho_bc().matrix()) <= 1e-12);
  CHECK(max_diff(p.instance.n_sigma().matrix(), kron(identity(2), s.rho_c().matrix())) <= 1e-12);
  CHECK(p.instance.channel().has_unitary_dilation());
  CHECK(std::abs(delta(p.instance) - cmi(s)) <= 1e-10);

  const std::vector<double> params(p.groups.out.free_dim(), 0.7);
  const Matrix vo = p.groups.out.member(params);
  CHECK(max_abs_entry(vo * p.instance.n_sigma().matrix() - p.instance.n_sigma().matrix() * vo) <= 1e-8);
  const std::vector<double> pin(p.groups.in.free_dim(), 0.3);
  const Matrix vi = p.groups.in.member(pin);
  CHECK(max_abs_entry(vi * p.instance.sigma().matrix() - p.instance.sigma().matrix() * vi) <= 1e-8);

  const OneSidedLimits lim = limits_at_one(p.instance, SwivelOptions{.groups = p.groups});
  CHECK(lim.left <= cmi(s) + 1e-7);
  CHECK(cmi(s) <= lim.right + 1e-7);
}

TEST_CASE("recovery maps recover sigma") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Instance inst = cli::small_instance(mix_seed(70, s));
    const Matrix ns = inst.n_sigma().matrix();
    const Matrix proj = support_projector(inst.sigma().op());
    const SwivelGroups g = default_groups(inst);
    const SwivelPoint pt{g.out.member(std::vector<double>(g.out.free_dim(), 1.1)),
                         g.in.member(std::vector<double>(g.in.free_dim(), -0.4)), {}};
    for (const RecoveryMap& r :
         {RecoveryMap::petz(inst.sigma(), inst.channel()), RecoveryMap::rotated(inst.sigma(), inst.channel(), 1.7),
          RecoveryMap::from_point(inst.sigma(), inst.channel(), pt)}) {
      CHECK(max_diff(proj * r.apply(ns) * proj, inst.sigma().matrix()) <= 1e-8);
      CHECK(HermitianOperator(r.choi()).min_eigenvalue() >= -1e-9);
      Matrix sum = Matrix::Zero(r.dim_in(), r.dim_in());
      for (const Matrix& k : r.kraus()) sum += k.adjoint() * k;
      CHECK(HermitianOperator(Matrix(identity(r.dim_in()) - sum)).min_eigenvalue() >= -1e-9);
    }
    const RecoveryMap p = RecoveryMap::petz(inst.sigma(), inst.channel());
    const RecoveryMap r0 = RecoveryMap::rotated(inst.sigma(), inst.channel(), 0.0);
    const Matrix y = inst.n_rho().matrix();
    CHECK(max_diff(p.apply(y), r0.apply(y)) <= 1e-14);
    CHECK(p.kind() == RecoveryKind::Petz);
    CHECK(r0.kind() == RecoveryKind::Rotated);
  }

  const PositiveOperator sigma = random_positive(3, 3, 5);
  const RecoveryMap id = RecoveryMap::petz(sigma, QuantumChannel::identity(3));
  const Matrix x = random_density(3, 2, 6).matrix();
  CHECK(max_diff(id.apply(x), x) <= 1e-10);

  // Petz map against its defining formula σ^{1/2} N†(N(σ)^{-1/2} Y N(σ)^{-1/2}) σ^{1/2}.
  const Instance inst = cli::small_instance(3);
  const Matrix ns_half = power(inst.n_sigma(), -0.5), s_half = power(inst.sigma().op(), 0.5);
  const Matrix y = inst.n_rho().matrix();
  const Matrix ref = s_half * inst.channel().adjoint_apply(ns_half * y * ns_half) * s_half;
  CHECK(max_diff(RecoveryMap::petz(inst.sigma(), inst.channel()).apply(y), ref) <= 1e-10);

  const RecoveryMap built = build_recovery(RecoveryKind::Rotated, inst.sigma(), inst.channel(), 0.25);
  CHECK(built.t() == 0.25);
  const std::vector<double> grid = default_t_grid();
  CHECK(grid.size() == 401);
  CHECK(grid.front() == doctest::Approx(-10.0));
  CHECK(grid.back() == doctest::Approx(10.0));
}

TEST_CASE("recovery bounds") {
  for (std::uint64_t s = 0; s < 3; ++s) {
    const Instance inst = cli::small_instance(mix_seed(80, s));
    const RecoveryReport r = recovery_bounds(inst, {-1.0, 0.0, 1.0});
    CHECK(r.delta == doctest::Approx(delta(inst)).epsilon(1e-12));
    CHECK(r.fidelity_bound <= r.delta + 1e-7);
    CHECK(r.fidelity_bound_explicit <= r.delta + 1e-7);
    CHECK(r.d0_bound <= r.delta + 1e-7);
    CHECK(std::abs(r.fidelity_bound - delta_tilde_prime(inst, 0.5).value) <= 1e-8);
    CHECK(r.rotated_d0.size() == 3);
    CHECK_FALSE(r.has_upper);
  }

  const Instance tra = cli::partial_trace_instance(81);
  const RecoveryReport r = recovery_bounds(tra, default_t_grid(), {}, true);
  REQUIRE(r.has_upper);
  CHECK(r.delta <= r.dmax_bound + 1e-7);
  CHECK(r.delta <= r.d2_bound + 1e-7);
  CHECK(*std::max_element(r.rotated_d2.begin(), r.rotated_d2.end()) >= r.delta - 1e-6);
  CHECK(*std::min_element(r.rotated_d0.begin(), r.rotated_d0.end()) <= r.delta + 1e-6);
  CHECK_THROWS_AS(recovery_bounds(cli::small_instance(1), {}, {}, true), Error);

  // ρ = σ: the Petz map recovers exactly.
  const DensityOperator rho = random_density(3, 3, 4);
  const RecoveryReport ex = recovery_bounds(Instance(rho, rho, random_channel(3, 2, 2, 5)), {0.0});
  CHECK(std::abs(ex.delta) <= 1e-10);
  CHECK(std::abs(ex.fidelity_bound) <= 1e-8);
  CHECK(std::abs(ex.d0_bound) <= 1e-8);
}

TEST_CASE("strong subadditivity refinements") {
  const RecoveryReport m = ssa_refinement(markov_state(3), reduced());
  CHECK(std::abs(m.delta) <= 1e-8);
  CHECK(std::abs(m.fidelity_bound) <= 1e-8);

  const RecoveryReport p = ssa_refinement(product_state(4), reduced());
  CHECK(std::abs(p.delta) <= 1e-8);
  CHECK(std::abs(p.fidelity_bound) <= 1e-8);
  CHECK(std::abs(p.d0_bound) <= 1e-8);
  REQUIRE(p.has_upper);
  CHECK(std::abs(p.dmax_bound) <= 1e-8);
  CHECK(std::abs(p.d2_bound) <= 1e-8);

  const RecoveryReport r = ssa_refinement(cli::random_tripartite(61), reduced());
  REQUIRE(r.has_upper);
  CHECK(r.fidelity_bound <= r.delta + 1e-6);
  CHECK(r.d0_bound <= r.delta + 1e-6);
  CHECK(r.delta <= r.dmax_bound + 1e-6);
  CHECK(r.delta <= r.d2_bound + 1e-6);
}
