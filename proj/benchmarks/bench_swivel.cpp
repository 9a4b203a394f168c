#include <benchmark/benchmark.h>

#include "swivel/swivel_all.hpp"

namespace {

swivel::Instance make_instance(int din, int dout, int nk, std::uint64_t seed) {
  return swivel::Instance(swivel::random_density(din, din, seed), swivel::random_positive(din, din, seed + 1),
                          swivel::random_channel(din, dout, nk, seed + 2));
}

}  // namespace

static void BM_EigHermitian(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const swivel::Matrix m = swivel::random_density(d, d, 1).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(swivel::eig_hermitian(m));
}
BENCHMARK(BM_EigHermitian)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

static void BM_Schatten(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  swivel::Rng rng(3);
  const swivel::Matrix a = swivel::ginibre(d, d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(swivel::schatten(a, 3.0));
}
BENCHMARK(BM_Schatten)->Arg(4)->Arg(16);

static void BM_PartialTrace(benchmark::State& state) {
  const swivel::Matrix m = swivel::random_density(16, 16, 2).matrix();
  const int dims[2] = {4, 4};
  const int traced[1] = {0};
  for (auto _ : state) benchmark::DoNotOptimize(swivel::partial_trace(m, dims, traced));
}
BENCHMARK(BM_PartialTrace);

static void BM_SandwichedRenyi(benchmark::State& state) {
  const swivel::DensityOperator rho = swivel::random_density(8, 8, 4);
  const swivel::DensityOperator sigma = swivel::random_density(8, 8, 5);
  for (auto _ : state) benchmark::DoNotOptimize(swivel::sandwiched_rel(rho, sigma, 2.0));
}
BENCHMARK(BM_SandwichedRenyi);

static void BM_ObjectiveF(benchmark::State& state) {
  const swivel::Instance inst = make_instance(3, 2, 2, 7);
  const swivel::SwivelPoint p = swivel::identity_point(inst);
  for (auto _ : state) benchmark::DoNotOptimize(swivel::objective_f(inst, 1.5, p));
}
BENCHMARK(BM_ObjectiveF);

static void BM_DeltaPrimeQubit(benchmark::State& state) {
  const swivel::Instance inst = make_instance(2, 2, 2, 11);
  for (auto _ : state) benchmark::DoNotOptimize(swivel::delta_prime(inst, 1.5).value);
}
BENCHMARK(BM_DeltaPrimeQubit)->Unit(benchmark::kMillisecond);

static void BM_DeltaTildePrimeQubit(benchmark::State& state) {
  const swivel::Instance inst = make_instance(2, 2, 2, 11);
  for (auto _ : state) benchmark::DoNotOptimize(swivel::delta_tilde_prime(inst, 2.0).value);
}
BENCHMARK(BM_DeltaTildePrimeQubit)->Unit(benchmark::kMillisecond);

static void BM_CmiPrime(benchmark::State& state) {
  const swivel::TripartiteState s(swivel::random_density(8, 8, 13), 2, 2, 2);
  swivel::SwivelOptions o;
  o.budget.restarts = 4;
  o.budget.max_evals = 4096;
  for (auto _ : state) benchmark::DoNotOptimize(swivel::cmi_prime(s, 0.5, o).value);
}
BENCHMARK(BM_CmiPrime)->Unit(benchmark::kMillisecond);

static void BM_PetzApply(benchmark::State& state) {
  const swivel::Instance inst = make_instance(4, 2, 3, 17);
  const swivel::RecoveryMap r = swivel::RecoveryMap::petz(inst.sigma(), inst.channel());
  const swivel::Matrix y = inst.n_rho().matrix();
  for (auto _ : state) benchmark::DoNotOptimize(r.apply(y));
}
BENCHMARK(BM_PetzApply);

BENCHMARK_MAIN();
