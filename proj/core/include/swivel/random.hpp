#pragma once

#include <cstdint>
#include <random>

#include "swivel/matlib.hpp"

namespace swivel {

/// splitmix64 finaliser; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded generator with platform-independent output. The standard
/// distributions are implementation-defined, so uniforms and normals are
/// produced here directly from the raw 64-bit engine.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }
  double uniform();  // [0, 1)
  double normal();
  Complex complex_normal();  // E|z|^2 = 1

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// rows x cols matrix of i.i.d. standard complex Gaussians.
Matrix ginibre(int rows, int cols, Rng& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with the phase fix).
Matrix haar_unitary(int d, Rng& rng);

}  // namespace swivel
