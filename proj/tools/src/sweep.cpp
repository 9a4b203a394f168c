#include "swivel/cli/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "swivel/cli/instances.hpp"
#include "swivel/cli/report.hpp"
#include "swivel/cmi_recovery.hpp"
#include "swivel/combos.hpp"
#include "swivel/entropy.hpp"
#include "swivel/error.hpp"
#include "swivel/instance_io.hpp"
#include "swivel/swivel.hpp"
#include "swivel/version.hpp"

namespace swivel::cli {

namespace {

struct Named {
  SweepQuantity q;
  const char* name;
};

constexpr Named kQuantities[] = {
    {SweepQuantity::DeltaPrime, "delta_prime"},         {SweepQuantity::DeltaTildePrime, "delta_tilde_prime"},
    {SweepQuantity::CmiPrime, "cmi_prime"},             {SweepQuantity::CmiTildePrime, "cmi_tilde_prime"},
    {SweepQuantity::LPrime, "l_prime"},                 {SweepQuantity::LTildePrime, "l_tilde_prime"},
    {SweepQuantity::TraceQuantity, "trace_quantity"},   {SweepQuantity::RecoveryCurves, "recovery_curves"},
};

bool is_alpha_sweep(SweepQuantity q) {
  return q != SweepQuantity::TraceQuantity && q != SweepQuantity::RecoveryCurves;
}

bool is_tilde(SweepQuantity q) {
  return q == SweepQuantity::DeltaTildePrime || q == SweepQuantity::CmiTildePrime || q == SweepQuantity::LTildePrime;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string hash_hex(const std::vector<double>& params) {
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(params_hash(params)));
  return out;
}

struct Row {
  double value = 0.0;
  bool certified = false;
  std::string hash;
};

Row from_value(const SwivelValue& v) {
  return {v.value, v.optimum.certified, hash_hex(v.optimum.point.params)};
}

}  // namespace

SweepQuantity parse_quantity(const std::string& name) {
  for (const Named& n : kQuantities) {
    if (name == n.name) return n.q;
  }
  fail(ErrorKind::InvalidArgument, "unknown sweep quantity '" + name + "'");
}

const char* quantity_name(SweepQuantity q) {
  for (const Named& n : kQuantities) {
    if (n.q == q) return n.name;
  }
  return "?";
}

std::vector<double> default_grid(SweepQuantity q) {
  if (q == SweepQuantity::TraceQuantity) return default_p_grid();
  if (q == SweepQuantity::RecoveryCurves) return default_t_grid();
  return is_tilde(q) ? tilde_alpha_grid() : prime_alpha_grid();
}

std::vector<double> parse_grid(const std::string& text) {
  auto number = [](const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != s.size()) fail(ErrorKind::InvalidArgument, "bad grid value '" + s + "'");
    return v;
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(number(item));
    if (parts.size() != 3 || !(parts[2] > 0) || parts[1] < parts[0]) {
      fail(ErrorKind::InvalidArgument, "range grid must be start:stop:step");
    }
    const long n = std::lround(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[2]);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(number(item));
  if (out.empty()) fail(ErrorKind::InvalidArgument, "empty grid");
  return out;
}

std::string run_sweep(const SweepSpec& spec) {
  const std::vector<double> grid = spec.grid.empty() ? default_grid(spec.quantity) : spec.grid;
  if (is_alpha_sweep(spec.quantity)) {
    for (double a : grid) {
      if (std::abs(a - 1.0) < 1e-6) fail(ErrorKind::DegenerateAlpha, "alpha grid must exclude 1 by at least 1e-6");
    }
  }
  if (spec.quantity == SweepQuantity::RecoveryCurves && spec.curve != "d0" && spec.curve != "d2") {
    fail(ErrorKind::InvalidArgument, "curve must be d0 or d2");
  }

  std::string instance_text;
  if (!spec.instance_path.empty()) {
    instance_text = read_file(spec.instance_path);
  } else if (spec.gen) {
    instance_text = to_json(generate(*spec.gen));
  } else {
    fail(ErrorKind::InvalidArgument, "sweep needs an instance file or a generator spec");
  }
  const InstanceRecord record = instance_from_json(instance_text);
  std::string combo_text;
  const bool needs_combo = spec.quantity == SweepQuantity::LPrime || spec.quantity == SweepQuantity::LTildePrime;
  if (needs_combo) {
    if (spec.combo_path.empty()) fail(ErrorKind::InvalidArgument, "l_prime sweeps need --combo");
    combo_text = read_file(spec.combo_path);
  }

  std::ostringstream key;
  key << "sweep;quantity=" << quantity_name(spec.quantity) << ";grid=";
  for (double g : grid) key << format_double(g) << ',';
  key << ";restarts=" << spec.budget.restarts << ";max_evals=" << spec.budget.max_evals
      << ";budget_seed=" << spec.budget.seed << ";curve=" << spec.curve << ";instance=" << instance_text
      << ";combo=" << combo_text << ";version=" << kVersion;

  SwivelOptions opts;
  opts.budget = spec.budget;
  std::function<Row(double)> eval;
  std::optional<Instance> inst;
  std::optional<TripartiteState> tri;
  std::optional<NormalizedCombo> nc;
  switch (spec.quantity) {
    case SweepQuantity::DeltaPrime:
    case SweepQuantity::DeltaTildePrime:
    case SweepQuantity::TraceQuantity:
    case SweepQuantity::RecoveryCurves:
      inst.emplace(to_instance(record));
      break;
    case SweepQuantity::CmiPrime:
    case SweepQuantity::CmiTildePrime:
      if (record.dims.size() != 3) fail(ErrorKind::InvalidArgument, "CMI sweeps need a tripartite instance");
      tri.emplace(DensityOperator(record.rho), record.dims[0], record.dims[1], record.dims[2]);
      break;
    case SweepQuantity::LPrime:
    case SweepQuantity::LTildePrime:
      nc.emplace(normalize_combo(combo_from_json(combo_text), DensityOperator(record.rho)));
      break;
  }
  switch (spec.quantity) {
    case SweepQuantity::DeltaPrime: eval = [&](double a) { return from_value(delta_prime(*inst, a, opts)); }; break;
    case SweepQuantity::DeltaTildePrime:
      eval = [&](double a) { return from_value(delta_tilde_prime(*inst, a, opts)); };
      break;
    case SweepQuantity::CmiPrime: eval = [&](double a) { return from_value(cmi_prime(*tri, a, opts)); }; break;
    case SweepQuantity::CmiTildePrime:
      eval = [&](double a) { return from_value(cmi_tilde_prime(*tri, a, opts)); };
      break;
    case SweepQuantity::LPrime: eval = [&](double a) { return from_value(l_prime(*nc, a, opts)); }; break;
    case SweepQuantity::LTildePrime: eval = [&](double a) { return from_value(l_tilde_prime(*nc, a, opts)); }; break;
    case SweepQuantity::TraceQuantity:
      eval = [&](double p) { return from_value(trace_quantity(*inst, p, opts)); };
      break;
    case SweepQuantity::RecoveryCurves:
      eval = [&](double t) {
        const RecoveryMap m = RecoveryMap::rotated(inst->sigma(), inst->channel(), t);
        const HermitianOperator out(m.apply(inst->n_rho().matrix()));
        const double v = spec.curve == "d0" ? d0(inst->rho().op(), out) : d2(inst->rho().op(), out);
        return Row{v, true, hash_hex({})};
      };
      break;
  }

  std::ostringstream csv;
  csv << "# swivel " << kVersion << "\n";
  csv << "# input_digest " << digest_hex(key.str()) << "\n";
  csv << "# quantity " << quantity_name(spec.quantity) << "\n";
  csv << "param,value,certified,optimum_params_hash,error\n";
  for (double g : grid) {
    try {
      const Row r = eval(g);
      csv << format_double(g) << ',' << format_double(r.value) << ',' << (r.certified ? 1 : 0) << ',' << r.hash
          << ",\n";
    } catch (const Error& e) {
      csv << format_double(g) << ",nan,0,," << to_string(e.kind()) << "\n";
    }
  }
  return csv.str();
}

}  // namespace swivel::cli
