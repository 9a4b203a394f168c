#include "swivel/cli/instances.hpp"

#include <cmath>
#include <limits>

#include "swivel/error.hpp"
#include "swivel/random.hpp"

namespace swivel::cli {

std::vector<double> prime_alpha_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 20; ++i) {
    if (i != 10) g.push_back(i / 10.0);
  }
  return g;
}

std::vector<double> tilde_alpha_grid() {
  return {0.5, 0.6, 0.7, 0.8, 0.9, 1.25, 1.5, 2.0, 4.0, 8.0, std::numeric_limits<double>::infinity()};
}

std::vector<double> default_p_grid() { return {2.0, 3.0, 4.0, 8.0, 16.0}; }

Instance qubit_instance(std::uint64_t seed) {
  return Instance(random_density(2, 2, mix_seed(seed, 1)), random_positive(2, 2, mix_seed(seed, 2)),
                  random_channel(2, 2, 2, mix_seed(seed, 3)));
}

Instance small_instance(std::uint64_t seed) {
  Rng rng(seed, 7);
  const int din = 2 + static_cast<int>(rng.next() % 2);
  const int nk = din == 3 ? 2 + static_cast<int>(rng.next() % 2) : 2;
  const int rank = 1 + static_cast<int>(rng.next() % din);
  return Instance(random_density(din, rank, mix_seed(seed, 1)), random_positive(din, din, mix_seed(seed, 2)),
                  random_channel(din, 2, nk, mix_seed(seed, 3)));
}

Instance partial_trace_instance(std::uint64_t seed, int d_a, int d_b) {
  const int d = d_a * d_b;
  return Instance(random_density(d, d, mix_seed(seed, 1)), random_positive(d, d, mix_seed(seed, 2)),
                  QuantumChannel::partial_trace({d_a, d_b}, {0}));
}

Instance trace_channel_instance(std::uint64_t seed) {
  Rng rng(seed, 8);
  const int d = 2 + static_cast<int>(rng.next() % 3);
  const int rank = 1 + static_cast<int>(rng.next() % d);
  const double tr = 0.5 + 1.5 * rng.uniform();
  return Instance(random_density(d, rank, mix_seed(seed, 1)), random_positive(d, d, mix_seed(seed, 2), tr),
                  QuantumChannel::trace(d));
}

TripartiteState random_tripartite(std::uint64_t seed, int d_a, int d_b, int d_c) {
  const int d = d_a * d_b * d_c;
  return TripartiteState(random_density(d, d, mix_seed(seed, 4)), d_a, d_b, d_c);
}

std::vector<double> random_distribution(int n, std::uint64_t seed, double floor) {
  Rng rng(seed, 99);
  std::vector<double> p(n);
  double s = 0.0;
  for (double& x : p) {
    x = floor + rng.uniform();
    s += x;
  }
  for (double& x : p) x /= s;
  return p;
}

std::vector<std::vector<double>> random_stochastic(int n_out, int n_in, std::uint64_t seed) {
  Rng rng(seed, 98);
  std::vector<std::vector<double>> p(n_out, std::vector<double>(n_in));
  for (int x = 0; x < n_in; ++x) {
    double s = 0.0;
    for (int y = 0; y < n_out; ++y) {
      p[y][x] = 0.05 + rng.uniform();
      s += p[y][x];
    }
    for (int y = 0; y < n_out; ++y) p[y][x] /= s;
  }
  return p;
}

QuantumChannel classical_channel(const std::vector<std::vector<double>>& p) {
  const int n_out = static_cast<int>(p.size());
  const int n_in = static_cast<int>(p[0].size());
  std::vector<Matrix> kraus;
  for (int y = 0; y < n_out; ++y) {
    for (int x = 0; x < n_in; ++x) {
      Matrix k = Matrix::Zero(n_out, n_in);
      k(y, x) = std::sqrt(p[y][x]);
      kraus.push_back(k);
    }
  }
  return QuantumChannel(kraus);
}

Matrix diagonal(const std::vector<double>& values) {
  Eigen::VectorXcd v(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) v[i] = values[i];
  return v.asDiagonal();
}

TripartiteState apply_on_b(const TripartiteState& state, const QuantumChannel& channel) {
  const std::array<int, 3>& d = state.dims();
  if (channel.dim_in() != d[1]) fail(ErrorKind::DimensionMismatch, "channel does not act on B");
  Matrix out = Matrix::Zero(d[0] * channel.dim_out() * d[2], d[0] * channel.dim_out() * d[2]);
  for (const Matrix& k : channel.kraus()) {
    const Matrix full = kron(kron(identity(d[0]), k), identity(d[2]));
    out.noalias() += full * state.state().matrix() * full.adjoint();
  }
  return TripartiteState(DensityOperator(out), d[0], channel.dim_out(), d[2]);
}

}  // namespace swivel::cli
