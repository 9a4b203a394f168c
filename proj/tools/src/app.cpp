#include "swivel/cli/app.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "swivel/cli/claims.hpp"
#include "swivel/cli/gen.hpp"
#include "swivel/cli/sweep.hpp"
#include "swivel/error.hpp"
#include "swivel/instance_io.hpp"
#include "swivel/version.hpp"

namespace swivel::cli {

namespace {

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != item.size()) fail(ErrorKind::InvalidArgument, "bad dimension list '" + text + "'");
    out.push_back(v);
  }
  return out;
}

OptimizerBudget parse_budget(const std::string& text) {
  OptimizerBudget b;
  if (text.empty()) return b;
  const std::size_t x = text.find('x');
  if (x == std::string::npos) fail(ErrorKind::InvalidArgument, "budget must be RESTARTSxEVALS");
  try {
    std::size_t p1 = 0, p2 = 0;
    const std::string r = text.substr(0, x), e = text.substr(x + 1);
    b.restarts = std::stoi(r, &p1);
    b.max_evals = std::stol(e, &p2);
    if (p1 != r.size() || p2 != e.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    fail(ErrorKind::InvalidArgument, "budget must be RESTARTSxEVALS");
  }
  if (b.restarts < 1 || b.max_evals < 1) fail(ErrorKind::InvalidArgument, "budget values must be positive");
  return b;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("SWIVEL_SEED")) {
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(env, &pos);
      if (pos == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    fail(ErrorKind::InvalidArgument, "SWIVEL_SEED must be an unsigned integer");
  }
  return 0;
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) fail(ErrorKind::IoError, "cannot write " + path);
  f << text;
  if (!f) fail(ErrorKind::IoError, "write failed for " + path);
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonConvergence:
    case ErrorKind::NegativeEigenvalue: return 3;
    default: return 2;
  }
}

struct GenFlags {
  std::string dims, bipartite, tripartite;
  int kraus = 2;
  int rank = 0;
  std::optional<std::uint64_t> seed;

  void add(CLI::App* cmd) {
    cmd->add_option("--dims", dims, "input,output dimensions of a channel instance");
    cmd->add_option("--bipartite", bipartite, "dA,dB for a Tr_A instance");
    cmd->add_option("--tripartite", tripartite, "dA,dB,dC for a CMI instance");
    cmd->add_option("--kraus", kraus, "number of Kraus operators")->check(CLI::PositiveNumber);
    cmd->add_option("--rank", rank, "rank of rho (0 = full)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", seed, "seed (falls back to SWIVEL_SEED)");
  }

  bool given() const { return !dims.empty() || !bipartite.empty() || !tripartite.empty(); }

  GenSpec spec() const {
    const int n = !dims.empty() + !bipartite.empty() + !tripartite.empty();
    if (n != 1) fail(ErrorKind::InvalidArgument, "give exactly one of --dims, --bipartite, --tripartite");
    GenSpec s;
    if (!dims.empty()) {
      s.kind = GenKind::Channel;
      s.dims = parse_dims(dims);
    } else if (!bipartite.empty()) {
      s.kind = GenKind::Bipartite;
      s.dims = parse_dims(bipartite);
    } else {
      s.kind = GenKind::Tripartite;
      s.dims = parse_dims(tripartite);
    }
    s.kraus = kraus;
    s.rank = rank;
    s.seed = resolve_seed(seed);
    return s;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Swiveled Renyi entropies: instance generation, sweeps and claim verification", "swivel"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  GenFlags gen_flags;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "write a random instance as JSON");
  gen_flags.add(gen);
  gen->add_option("-o,--output", gen_out, "output path (default stdout)");

  std::string sweep_quantity, sweep_instance, sweep_combo, sweep_grid, sweep_budget, sweep_out, sweep_curve = "d0";
  GenFlags sweep_gen;
  CLI::App* sweep = app.add_subcommand("sweep", "evaluate a quantity over a parameter grid and write CSV");
  sweep->add_option("quantity", sweep_quantity, "delta_prime, delta_tilde_prime, cmi_prime, cmi_tilde_prime, "
                                                "l_prime, l_tilde_prime, trace_quantity, recovery_curves")
      ->required();
  sweep->add_option("--instance", sweep_instance, "instance JSON file");
  sweep->add_option("--combo", sweep_combo, "entropy combination JSON file");
  sweep->add_option("--grid", sweep_grid, "a,b,c or start:stop:step");
  sweep->add_option("--budget", sweep_budget, "RESTARTSxEVALS");
  sweep->add_option("--curve", sweep_curve, "recovery_curves: d0 or d2");
  sweep->add_option("-o,--output", sweep_out, "output path (default stdout)");
  sweep_gen.add(sweep);

  std::string claim, verify_budget, verify_out;
  std::optional<int> trials;
  std::optional<std::uint64_t> verify_seed;
  std::optional<double> tolerance;
  int jobs = 1;
  CLI::App* verify = app.add_subcommand("verify", "run a registered claim and write a JSON report");
  verify->add_option("claim", claim, "claim id (see list-claims)")->required();
  verify->add_option("--trials", trials, "number of trials")->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_seed, "master seed (falls back to SWIVEL_SEED)");
  verify->add_option("--tolerance", tolerance, "tolerance of the primary check");
  verify->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--budget", verify_budget, "RESTARTSxEVALS");
  verify->add_option("-o,--output", verify_out, "report path (default stdout)");

  CLI::App* list = app.add_subcommand("list-claims", "list registered claim ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, eo;
    const int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      write_output(to_json(generate(gen_flags.spec())), gen_out, out);
      return 0;
    }
    if (*sweep) {
      SweepSpec s;
      s.quantity = parse_quantity(sweep_quantity);
      if (!sweep_grid.empty()) s.grid = parse_grid(sweep_grid);
      s.instance_path = sweep_instance;
      if (sweep_gen.given()) {
        if (!sweep_instance.empty()) fail(ErrorKind::InvalidArgument, "give either --instance or generator flags");
        s.gen = sweep_gen.spec();
      }
      s.combo_path = sweep_combo;
      s.budget = parse_budget(sweep_budget);
      s.curve = sweep_curve;
      write_output(run_sweep(s), sweep_out, out);
      return 0;
    }
    if (*verify) {
      ClaimConfig c;
      c.trials = trials;
      c.seed = resolve_seed(verify_seed);
      c.tolerance = tolerance;
      c.jobs = jobs;
      c.budget = parse_budget(verify_budget);
      const VerificationReport r = run_claim(claim, c);
      write_output(report_to_json(r), verify_out, out);
      err << (r.all_passed() ? "PASS " : "FAIL ") << r.claim_id << " passes=" << r.passes << "/" << r.trials
          << " worst_violation=" << format_double(r.worst_violation) << "\n";
      return r.exit_code();
    }
    if (*list) {
      for (const ClaimInfo& c : claim_list()) out << c.id << "\t" << c.description << "\n";
      return 0;
    }
  } catch (const Error& e) {
    err << "swivel: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return 2;
}

}  // namespace swivel::cli
