#include "swivel/cli/gen.hpp"

#include <sstream>

#include "swivel/cmi_recovery.hpp"
#include "swivel/error.hpp"
#include "swivel/random.hpp"
#include "swivel/version.hpp"

namespace swivel::cli {

namespace {

std::string spec_key(const GenSpec& s) {
  std::ostringstream k;
  k << "gen;kind=" << static_cast<int>(s.kind) << ";dims=";
  for (int d : s.dims) k << d << ',';
  k << ";kraus=" << s.kraus << ";rank=" << s.rank << ";seed=" << s.seed << ";version=" << kVersion;
  return k.str();
}

}  // namespace

InstanceRecord generate(const GenSpec& spec) {
  const std::size_t want = spec.kind == GenKind::Tripartite ? 3 : 2;
  if (spec.dims.size() != want) fail(ErrorKind::InvalidArgument, "wrong number of dimensions");
  for (int d : spec.dims) {
    if (d < 1) fail(ErrorKind::InvalidArgument, "dimensions must be positive");
  }
  InstanceRecord r;
  r.dims = spec.dims;
  r.seed = spec.seed;
  r.tool_version = kVersion;
  r.input_digest = digest_hex(spec_key(spec));

  const int din = spec.kind == GenKind::Channel ? spec.dims[0] : product(spec.dims);
  const int rank = spec.rank > 0 ? spec.rank : din;
  if (rank > din) fail(ErrorKind::InvalidArgument, "rank exceeds the dimension");
  r.rho = random_density(din, rank, mix_seed(spec.seed, 1)).matrix();

  switch (spec.kind) {
    case GenKind::Channel: {
      r.labels = {"in", "out"};
      r.sigma = random_positive(din, din, mix_seed(spec.seed, 2)).matrix();
      r.kraus = random_channel(din, spec.dims[1], spec.kraus, mix_seed(spec.seed, 3)).kraus();
      break;
    }
    case GenKind::Bipartite: {
      r.labels = {"A", "B"};
      r.sigma = random_positive(din, din, mix_seed(spec.seed, 2)).matrix();
      r.kraus = QuantumChannel::partial_trace(spec.dims, {0}).kraus();
      break;
    }
    case GenKind::Tripartite: {
      r.labels = {"A", "B", "C"};
      const TripartiteState s(DensityOperator(r.rho), spec.dims[0], spec.dims[1], spec.dims[2]);
      const CmiProblem p = cmi_instance(s);
      r.sigma = p.instance.sigma().matrix();
      r.kraus = p.instance.channel().kraus();
      break;
    }
  }
  return r;
}

}  // namespace swivel::cli
