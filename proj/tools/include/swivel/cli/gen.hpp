#pragma once

#include <cstdint>
#include <vector>

#include "swivel/instance_io.hpp"

namespace swivel::cli {

enum class GenKind { Channel, Bipartite, Tripartite };

struct GenSpec {
  GenKind kind = GenKind::Channel;
  std::vector<int> dims;  // {in, out}, {A, B} or {A, B, C}
  int kraus = 2;          // channel instances only
  int rank = 0;           // rank of ρ; 0 means full rank
  std::uint64_t seed = 0;
};

/// Channel: ρ of the requested rank, full-rank σ and a random channel.
/// Bipartite: ρ_AB, σ_AB with N = Tr_A. Tripartite: ρ_ABC with the CMI
/// instance σ = ρ_AC ⊗ I_B, N = Tr_A; the marginals are validated.
InstanceRecord generate(const GenSpec& spec);

}  // namespace swivel::cli
