#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "swivel/cli/classical_oracle.hpp"
#include "swivel/cli/grid_oracle.hpp"
#include "test_helpers.hpp"

using namespace swivel;
using swivel::testing::diag;
using swivel::testing::max_diff;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Classical {
  std::vector<double> p, q;
  std::vector<std::vector<double>> ch;
  Instance inst;
};

Classical classical(std::uint64_t seed, int din = 3, int dout = 2) {
  std::vector<double> p = swivel::testing::random_distribution(din, mix_seed(seed, 1));
  std::vector<double> q = swivel::testing::random_distribution(din, mix_seed(seed, 2));
  auto ch = swivel::testing::random_stochastic(dout, din, mix_seed(seed, 3));
  Instance inst(DensityOperator(diag(p)), PositiveOperator(diag(q)), swivel::testing::classical_channel(ch));
  return {std::move(p), std::move(q), std::move(ch), std::move(inst)};
}

std::vector<double> random_params(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = 2.0 * std::numbers::pi * rng.uniform();
  return v;
}

SwivelPoint random_point(const Instance& inst, std::uint64_t seed) {
  const SwivelGroups g = default_groups(inst);
  const std::vector<double> po = random_params(g.out.free_dim(), mix_seed(seed, 1));
  const std::vector<double> pi = random_params(g.in.free_dim(), mix_seed(seed, 2));
  return {g.out.member(po), g.in.member(pi), {}};
}

SwivelOptions budget(int restarts, long evals) {
  SwivelOptions o;
  o.budget.restarts = restarts;
  o.budget.max_evals = evals;
  return o;
}

}  // namespace

TEST_CASE("commutant structure") {
  const Commutant full = commutant_of(HermitianOperator(identity(3)));
  REQUIRE(full.blocks().size() == 1);
  CHECK(full.blocks()[0].size() == 3);
  CHECK(full.free_dim() == 8);
  CHECK_FALSE(full.is_torus());

  const Commutant torus = commutant_of(HermitianOperator(diag({2.0, 1.0})));
  CHECK(torus.blocks().size() == 2);
  CHECK(torus.is_torus());
  CHECK(torus.free_dim() == 1);

  const Commutant mixed = commutant_of(HermitianOperator(diag({1.0, 1.0, 0.0})));
  REQUIRE(mixed.blocks().size() == 2);
  CHECK(mixed.blocks()[0].size() + mixed.blocks()[1].size() == 3);
  CHECK(((mixed.blocks()[0].size() == 2 && mixed.blocks()[1].size() == 1) ||
         (mixed.blocks()[0].size() == 1 && mixed.blocks()[1].size() == 2)));
  CHECK(mixed.free_dim() == 4);

  for (std::uint64_t s = 0; s < 10; ++s) {
    const Matrix u = random_unitary(4, s);
    const Matrix w = u * diag({0.4, 0.4, 0.2, 0.0}) * u.adjoint();
    const Commutant c = commutant_of(HermitianOperator(w));
    int total = 0;
    for (const CommutantBlock& b : c.blocks()) total += b.size();
    CHECK(total == 4);
    const Matrix v = c.member(random_params(c.free_dim(), 100 + s));
    CHECK(max_diff(v * v.adjoint(), identity(4)) <= 1e-10);
    CHECK(c.commutator_residual(v) <= 1e-8);
    CHECK(max_abs_entry(v * w - w * v) <= 1e-8);
  }
  CHECK(max_diff(torus.member(std::vector<double>(1, 0.0)), identity(2)) <= 1e-15);
}

TEST_CASE("objectives at identity swivels reduce to the unswiveled quantities") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Instance inst = cli::small_instance(mix_seed(60, s));
    const SwivelPoint id = identity_point(inst);
    for (double a : {0.0, 0.3, 0.8, 1.4, 2.0})
      CHECK(std::abs(objective_f(inst, a, id) - delta_alpha_unswiveled(inst, a)) <= 1e-10);
    for (double a : {0.5, 0.7, 1.5, 4.0})
      CHECK(std::abs(objective_g(inst, a, id) - delta_tilde_alpha_unswiveled(inst, a)) <= 1e-10);
    for (double a : {0.4, 1.6})
      CHECK(std::abs(delta_alpha_unswiveled(inst, a) - std::log(q_alpha(inst, a)) / (a - 1.0)) <= 1e-10);
  }
}

TEST_CASE("classical instances match the scalar formulas and ignore swivels") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Classical c = classical(700 + s);
    const SwivelPoint id = identity_point(c.inst);
    const SwivelPoint rp = random_point(c.inst, 800 + s);
    for (double a : {0.0, 0.5, 1.5, 2.0}) {
      const double ref = oracle::delta_prime(c.p, c.q, c.ch, a);
      CHECK(std::abs(objective_f(c.inst, a, id) - ref) <= 1e-10);
      CHECK(std::abs(objective_f(c.inst, a, rp) - ref) <= 1e-10);
      CHECK(std::abs(delta_prime(c.inst, a).value - ref) <= 1e-10);
    }
    for (double a : {0.5, 0.8, 2.0, 8.0, kInf}) {
      const double ref = oracle::delta_tilde_prime(c.p, c.q, c.ch, a);
      CHECK(std::abs(objective_g(c.inst, a, rp) - ref) <= 1e-10);
      CHECK(std::abs(delta_tilde_prime(c.inst, a).value - ref) <= 1e-10);
    }
    const double d = oracle::delta(c.p, c.q, c.ch);
    CHECK(std::abs(f_at_one(c.inst, rp) - d) <= 1e-10);
    const OneSidedLimits lim = limits_at_one(c.inst);
    CHECK(std::abs(lim.left - d) <= 1e-10);
    CHECK(std::abs(lim.right - d) <= 1e-10);
    const SwivelOptimum opt = maximize_norm(c.inst, 1.5, NormFamily::F);
    CHECK(std::abs(opt.value - 0.25 * objective_f(c.inst, 1.5, id)) <= 1e-10);
  }
}

TEST_CASE("global phases on the swivels leave the objectives unchanged") {
  const Instance inst = cli::qubit_instance(3);
  SwivelPoint p = random_point(inst, 4);
  const double f = objective_f(inst, 0.7, p), g = objective_g(inst, 2.0, p);
  p.v_out *= std::polar(1.0, 0.9);
  p.v_in *= std::polar(1.0, -2.1);
  CHECK(std::abs(objective_f(inst, 0.7, p) - f) <= 1e-12);
  CHECK(std::abs(objective_g(inst, 2.0, p) - g) <= 1e-12);
}

TEST_CASE("f at one and the limits of f") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Instance inst = cli::qubit_instance(mix_seed(47, s));
    CHECK(std::abs(f_at_one(inst, identity_point(inst)) - delta(inst)) <= 1e-10);
    const OneSidedLimits lim = limits_at_one(inst);
    CHECK(lim.left <= delta(inst) + 1e-8);
    CHECK(delta(inst) <= lim.right + 1e-8);
  }

  // Linear approach of f(1 + γ, point) to f(1, point).
  const Instance inst = cli::small_instance(31);
  const SwivelPoint p = random_point(inst, 31);
  const double f1 = f_at_one(inst, p);
  for (double sign : {-1.0, 1.0}) {
    const double e2 = std::abs(objective_f(inst, 1.0 + sign * 1e-2, p) - f1);
    const double e3 = std::abs(objective_f(inst, 1.0 + sign * 1e-3, p) - f1);
    CHECK(e3 <= 2.0 * (e2 / 1e-2) * 1e-3);
    CHECK(e3 / e2 == doctest::Approx(0.1).epsilon(0.3));
  }
}

TEST_CASE("one-sided limits of the swiveled quantity") {
  const Instance inst = cli::qubit_instance(47);
  const OneSidedLimits lim = limits_at_one(inst);
  const double r2 = std::abs(delta_prime(inst, 1.01).value - lim.right);
  const double r3 = std::abs(delta_prime(inst, 1.001).value - lim.right);
  const double l2 = std::abs(delta_prime(inst, 0.99).value - lim.left);
  const double l3 = std::abs(delta_prime(inst, 0.999).value - lim.left);
  CHECK(r3 <= 2.0 * (r2 / 1e-2) * 1e-3 + 1e-9);
  CHECK(l3 <= 2.0 * (l2 / 1e-2) * 1e-3 + 1e-9);
}

TEST_CASE("Q at one and the unswiveled limit") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Instance inst = cli::small_instance(mix_seed(53, s));
    CHECK(std::abs(q_alpha(inst, 1.0) - 1.0) <= 1e-10);
  }
  const Instance inst(random_density(3, 3, 53), random_positive(3, 3, mix_seed(53, 1)),
                      random_channel(3, 2, 2, mix_seed(53, 2)));
  const double d = delta(inst);
  const double e2 = std::abs(delta_alpha_unswiveled(inst, 1.01) - d);
  const double e3 = std::abs(delta_alpha_unswiveled(inst, 1.001) - d);
  CHECK(e3 <= 2.0 * (e2 / 1e-2) * 1e-3);
  CHECK(e3 / e2 == doctest::Approx(0.1).epsilon(0.3));
}

TEST_CASE("optimizer against the exhaustive phase grid") {
  const Instance inst = cli::qubit_instance(37);
  const SwivelGroups g = default_groups(inst);
  REQUIRE(g.out.is_torus());
  REQUIRE(g.in.is_torus());
  for (double a : {0.3, 0.5, 1.5, 2.0}) {
    const SwivelOptimum opt = maximize_norm(inst, a, NormFamily::F);
    CHECK(opt.certified);
    const double ref = oracle::grid_max_log_norm_f(inst.rho().matrix(), inst.sigma().matrix(),
                                                   inst.channel().kraus(), a);
    CHECK(std::abs(opt.value - ref) <= 1e-6);
    CHECK(opt.value >= ref - 1e-9);
    CHECK(std::abs(objective_f(inst, a, opt.point) - 2.0 / (a - 1.0) * opt.value) <= 1e-9);
  }
}

TEST_CASE("optimizer value never drops with a larger budget") {
  for (std::uint64_t s = 0; s < 3; ++s) {
    const Instance inst = cli::small_instance(mix_seed(90, s));
    for (NormFamily fam : {NormFamily::F, NormFamily::G}) {
      const SwivelOptimum small = maximize_norm(inst, 1.5, fam, budget(2, 512));
      const SwivelOptimum big = maximize_norm(inst, 1.5, fam, budget(4, 1024));
      CHECK(big.value >= small.value - 1e-12);
      const SwivelOptimum again = maximize_norm(inst, 1.5, fam, budget(2, 512));
      CHECK(again.value == small.value);
    }
  }
}

TEST_CASE("prefactor sign relative to identity swivels") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Instance inst = cli::small_instance(mix_seed(95, s));
    for (double a : {0.3, 0.7}) CHECK(delta_prime(inst, a).value <= delta_alpha_unswiveled(inst, a) + 1e-9);
    for (double a : {1.3, 2.0}) CHECK(delta_prime(inst, a).value >= delta_alpha_unswiveled(inst, a) - 1e-9);
    for (double a : {0.6}) CHECK(delta_tilde_prime(inst, a).value <= delta_tilde_alpha_unswiveled(inst, a) + 1e-9);
    for (double a : {2.0, 4.0})
      CHECK(delta_tilde_prime(inst, a).value >= delta_tilde_alpha_unswiveled(inst, a) - 1e-9);
  }
}

TEST_CASE("reduction to Renyi divergences for the trace channel") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Instance inst = cli::trace_channel_instance(mix_seed(41, s));
    const double lt = std::log(inst.sigma().op().trace());
    for (double a : {0.3, 0.7, 1.5, 2.0})
      CHECK(std::abs(delta_prime(inst, a).value - renyi_rel(inst.rho(), inst.sigma(), a) - lt) <= 1e-8);
    for (double a : {0.6, 2.0, 8.0})
      CHECK(std::abs(delta_tilde_prime(inst, a).value - sandwiched_rel(inst.rho(), inst.sigma(), a) - lt) <= 1e-8);
  }
}

TEST_CASE("non-negativity and monotonicity on certified instances") {
  const Instance i41 = cli::small_instance(41);
  for (double a : {0.5, 1.5, 2.0}) CHECK(delta_prime(i41, a).value >= -1e-6);
  const Instance i43 = cli::small_instance(43);
  for (double a : {0.6, 2.0, 8.0}) CHECK(delta_tilde_prime(i43, a).value >= -1e-6);

  for (std::uint64_t s = 0; s < 2; ++s) {
    const Instance inst = cli::qubit_instance(mix_seed(110, s));
    double prev = -kInf;
    for (double a : cli::prime_alpha_grid()) {
      const SwivelValue v = delta_prime(inst, a);
      CHECK(v.optimum.certified);
      CHECK(v.value >= prev - 1e-5);
      prev = v.value;
    }
    prev = -kInf;
    for (double a : cli::tilde_alpha_grid()) {
      const SwivelValue v = delta_tilde_prime(inst, a);
      CHECK(v.value >= prev - 1e-5);
      prev = v.value;
    }
  }
}

TEST_CASE("unitary covariance") {
  const Instance inst = cli::qubit_instance(17);
  const Matrix u = random_unitary(2, 1), w = random_unitary(2, 2);
  std::vector<Matrix> kraus;
  for (const Matrix& k : inst.channel().kraus()) kraus.push_back(w * k * u.adjoint());
  const Instance rot(DensityOperator(Matrix(u * inst.rho().matrix() * u.adjoint())),
                     PositiveOperator(Matrix(u * inst.sigma().matrix() * u.adjoint())), QuantumChannel(kraus));
  CHECK(std::abs(delta_alpha_unswiveled(rot, 1.5) - delta_alpha_unswiveled(inst, 1.5)) <= 1e-10);
  for (double a : {0.5, 1.5})
    CHECK(std::abs(delta_prime(rot, a).value - delta_prime(inst, a).value) <= 1e-8);
  CHECK(std::abs(delta_tilde_prime(rot, 2.0).value - delta_tilde_prime(inst, 2.0).value) <= 1e-8);
}

TEST_CASE("alpha near one is refused") {
  const Instance inst = cli::qubit_instance(1);
  for (double a : {1.0, 1.0 + 5e-7, 1.0 - 5e-7}) {
    try {
      delta_prime(inst, a);
      FAIL("expected DegenerateAlpha");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DegenerateAlpha);
    }
    CHECK_THROWS_AS(delta_tilde_prime(inst, a), Error);
  }
  CHECK_NOTHROW(delta_prime(inst, 1.0 + 2e-6));
  CHECK(alpha_prime(kInf) == 1.0);
  CHECK(alpha_prime(2.0) == doctest::Approx(0.5));
}
