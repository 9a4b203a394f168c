#include "swivel/cli/claims.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "swivel/cli/classical_oracle.hpp"
#include "swivel/cli/grid_oracle.hpp"
#include "swivel/cli/instances.hpp"
#include "swivel/cmi_recovery.hpp"
#include "swivel/combos.hpp"
#include "swivel/entropy.hpp"
#include "swivel/error.hpp"
#include "swivel/instance_io.hpp"
#include "swivel/random.hpp"
#include "swivel/swivel.hpp"
#include "swivel/version.hpp"

namespace swivel::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Below this size both errors of a ratio test are treated as rounding noise.
constexpr double kRatioFloor = 1e-9;

class Recorder {
 public:
  void record(const std::string& check, double raw) {
    if (std::isnan(raw)) raw = kInf;
    auto it = values_.find(check);
    if (it == values_.end()) {
      values_.emplace(check, raw);
    } else {
      it->second = std::max(it->second, raw);
    }
  }
  const std::map<std::string, double>& values() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

struct CheckSpec {
  std::string name;
  double tolerance = 0.0;
  bool existential = false;
};

using TrialFn = std::function<void(int index, std::uint64_t seed, const OptimizerBudget& budget, Recorder& rec)>;

struct ClaimDef {
  ClaimInfo info;
  std::vector<CheckSpec> checks;
  TrialFn trial;
};

SwivelOptions options(const OptimizerBudget& budget) {
  SwivelOptions o;
  o.budget = budget;
  return o;
}

// Sandwiched quantities on 8-dimensional chains need an SVD per evaluation,
// so those suites run on a smaller grid.
SwivelOptions reduced_options(const OptimizerBudget& budget) {
  SwivelOptions o;
  o.budget = budget;
  o.budget.restarts = std::min(budget.restarts, 4);
  o.budget.max_evals = std::min(budget.max_evals, 4096L);
  return o;
}

double max_decrease(const std::vector<double>& v) {
  double w = -kInf;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) w = std::max(w, v[i] - v[i + 1]);
  return w;
}

double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

double ratio(double e_coarse, double e_fine) {
  if (e_coarse < kRatioFloor && e_fine < kRatioFloor) return 0.1;
  return e_fine / e_coarse;
}

double window_excess(double r, double lo, double hi) { return std::max(r - hi, lo - r); }

std::vector<double> prime_values(const Instance& inst, const std::vector<double>& grid, const SwivelOptions& o,
                                 int* uncertified = nullptr) {
  std::vector<double> v;
  for (double a : grid) {
    const SwivelValue s = delta_prime(inst, a, o);
    if (uncertified && !s.optimum.certified) ++*uncertified;
    v.push_back(s.value);
  }
  return v;
}

std::vector<double> tilde_values(const Instance& inst, const std::vector<double>& grid, const SwivelOptions& o,
                                 int* uncertified = nullptr) {
  std::vector<double> v;
  for (double a : grid) {
    const SwivelValue s = delta_tilde_prime(inst, a, o);
    if (uncertified && !s.optimum.certified) ++*uncertified;
    v.push_back(s.value);
  }
  return v;
}

SwivelPoint random_point(const Instance& inst, std::uint64_t seed) {
  const SwivelGroups g = default_groups(inst);
  Rng rng(seed, 21);
  auto draw = [&](int n) {
    std::vector<double> x(n);
    for (double& t : x) t = (2 * rng.uniform() - 1) * 3.141592653589793;
    return x;
  };
  const std::vector<double> po = draw(g.out.free_dim()), pi = draw(g.in.free_dim());
  SwivelPoint p;
  p.v_out = g.out.member(po);
  p.v_in = g.in.member(pi);
  p.params = po;
  p.params.insert(p.params.end(), pi.begin(), pi.end());
  return p;
}

EntropyCombo random_combo(std::uint64_t seed) {
  Rng rng(seed, 31);
  EntropyCombo c;
  c.systems = {{"A", 2}, {"B", 2}, {"C", 2}};
  std::vector<Subset> nonzero;
  while (nonzero.empty()) {
    c.coeffs.clear();
    for (Subset s = 1; s < c.full(); ++s) {
      const int a = static_cast<int>(rng.next() % 3) - 1;
      if (a != 0) {
        c.coeffs[s] = a;
        nonzero.push_back(s);
      }
    }
  }
  c.coeffs[c.full()] = rng.next() % 2 ? 1 : -1;
  for (std::size_t i = nonzero.size(); i > 1; --i) std::swap(nonzero[i - 1], nonzero[rng.next() % i]);
  c.order = nonzero;
  return c;
}

oracle::Joint classical_joint(std::uint64_t seed) {
  return {{2, 2, 2}, random_distribution(8, seed)};
}

// --- trials ---------------------------------------------------------------

void trial_monotone(int, std::uint64_t seed, const OptimizerBudget& b, Recorder& rec) {
  const Instance inst = qubit_instance(seed);
  int unc = 0;
  const std::vector<double> v = prime_values(inst, prime_alpha_grid(), options(b), &unc);
  rec.record("monotone", max_decrease(v));
  rec.record("certified", unc);
}

void trial_monotone_tilde(int, std::uint64_t seed, const OptimizerBudget& b, Recorder& rec) {
  const Instance inst = qubit_instance(seed);
  int unc = 0;
  const std::vector<double> v = tilde_values(inst, tilde_alpha_grid(), options(b), &unc);
  rec.record("monotone", max_decrease(v));
  rec.record("certified", unc);
}

void trial_reduction(int, std::uint64_t seed, const OptimizerBudget& b, Recorder& rec) {
  const Instance inst = trace_channel_instance(seed);
  const SwivelOptions o = options(b);
  const double log_tr = std::log(inst.sigma().op().trace());
  for (double a : {0.3, 0.7, 1.5, 2.0}) {
    const double ref = renyi_rel(inst.rho().op(), inst.sigma().op(), a) + log_tr;
    rec.record("delta_prime", std::abs(delta_prime(inst, a, o).value - ref));
  }
  for (double a : {0.6, 2.0, 8.0}) {
    const double ref = sandwiched_rel(inst.rho().op(), inst.sigma().op(), a) + log_tr;
    rec.record("delta_tilde_prime", std::abs(delta_tilde_prime(inst, a, o).value - ref));
  }
}

void trial_lim_a_1(int, std::uint64_t seed, const OptimizerBudget& b, Recorder& rec) {
  const Instance inst = qubit_instance(seed);
  const SwivelOptions o = options(b);
  const OneSidedLimits lim = limits_at_one(inst, o);
  const double d = delta(inst);
  rec.record("sandwich", std::max(lim.left - d, d - lim.right));
  double worst = 0.0;
  for (double side : {-1.0, 1.0}) {
    const double target = side > 0 ? lim.right : lim.left;
    const double e2 = std::abs(delta_prime(inst, 1 + side * 1e-2, o).value - target);
    const double e3 = std::abs(delta_prime(inst, 1 + side * 1e-3, o).value - target);
    worst = std::max(worst, ratio(e2, e3));
  }
  rec.record("limit_ratio", worst);
  rec.record("discontinuity", lim.left - lim.right + 1e-4);
}

void trial_non_negativity(int, std::uint64_t seed, const OptimizerBudget& b, Recorder& rec) {
  const Instance inst = small_instance(seed);
  const SwivelOptions o = options(b);
  rec.record("delta_prime", -min_of(prime_values(inst, prime_alpha_grid(), o)));
  rec.record("delta_tilde_prime", -min_of(tilde_values(inst, tilde_alpha_grid(), o)));
}

void trial_recover(int, std::uint64_t seed, const OptimizerBudget& b, Recorder& rec) {
  const SwivelOptions o = options(b);
  auto lower = [&](const RecoveryReport& r) {
    rec.record("lower_bounds", std::max(r.fidelity_bound, r.d0_bound) - r.delta);
    rec.record("lower_bounds_explicit", std::max(r.fidelity_bound_explicit, r.d0_bound_explicit) - r.delta);
  };
  lower(recovery_bounds(small_instance(seed), {}, o));

  const Instance structured = partial_trace_instance(mix_seed(seed, 5));
  const RecoveryReport r = recovery_bounds(structured, {}, o, true);
  lower(r);
  rec.record("upper_bounds", r.delta - std::min(r.dmax_bound, r.d2_bound));
  rec.record("upper_bounds_explicit", r.delta - std::min(r.dmax_bound_explicit, r.d2_bound_explicit));
}

void trial_rel_ent_other(int, std::uint64_t seed, const OptimizerBudget&, Recorder& rec) {
  const std::vector<double> grid = default_t_grid();
  auto rotated = [&](const Instance& inst, double t) {
    const RecoveryMap m = RecoveryMap::rotated(inst.sigma(), inst.channel(), t);
    return HermitianOperator(m.apply(inst.n_rho().matrix()));
  };
  const Instance general = small_instance(seed);
  double best_d0 = kInf;
  for (double t : grid) best_d0 = std::min(best_d0, d0(general.rho().op(), rotated(general, t)));
  rec.record("d0_exists", best_d0 - delta(general));

  const Instance structured = partial_trace_instance(mix_seed(seed, 5));
  double best_d2 = -kInf;
  for (double t : grid) best_d2 = std::max(best_d2, d2(structured.rho().op(), rotated(structured, t)));
  rec.record("d2_exists", delta(structured) - best_d2);
}

void trial_cmi(int, std::uint64_t seed, const OptimizerBudget& b, Recorder& rec) {
  const TripartiteState s = random_tripartite(seed);
  const SwivelOptions o = options(b);
  const SwivelOptions ot = reduced_options(b);
  const std::vector<double> pg = prime_alpha_grid(), tg = tilde_alpha_grid();
  std::vector<double> pv, tv;
  for (double a : pg) pv.push_back(cmi_prime(s, a, o).value);
  for (double a : tg) tv.push_back(cmi_tilde_prime(s, a, ot).value);
  rec.record("non_negative", -std::min(min_of(pv), min_of(tv)));
  rec.record("monotone", std::max(max_decrease(pv), max_decrease(tv)));

  const TripartiteState s2 = apply_on_b(s, random_channel(2, 2, 2, mix_seed(seed, 6)));
  for (std::size_t i = 0; i < pg.size(); ++i) {
    if (pg[i] == 0.5 || pg[i] == 1.5 || pg[i] == 2.0) rec.record("data_processing_b", cmi_prime(s2, pg[i], o).value - pv[i]);
  }
  for (std::size_t i = 0; i < tg.size(); ++i) {
    if (tg[i] == 0.5 || tg[i] == 2.0 || std::isinf(tg[i])) {
      rec.record("data_processing_b", cmi_tilde_prime(s2, tg[i], ot).value - tv[i]);
    }
  }

  const RecoveryReport r = ssa_refinement(s, ot);
  rec.record("ssa_lower", std::max(r.fidelity_bound, r.d0_bound) - r.delta);
  rec.record("ssa_upper", r.delta - std::min(r.dmax_bound, r.d2_bound));
}

void trial_zhang(int, std::uint64_t seed, const OptimizerBudget& b, Recorder& rec) {
  const SwivelOptions o = options(b);
  const Instance inst = small_instance(seed);
  std::vector<double> tq;
  for (double p : default_p_grid()) tq.push_back(trace_quantity(inst, p, o).value);
  rec.record("bounded", *std::max_element(tq.begin(), tq.end()) - 1.0);
  rec.record("non_increasing", max_decrease(std::vector<double>(tq.rbegin(), tq.rend())));

  const TripartiteState s = random_tripartite(mix_seed(seed, 5));
  const int dc = s.dims()[2];
  std::vector<double> cq;
  for (double a : {0.0, 0.25, 0.5, 0.75}) {
    const SwivelValue v = cmi_trace_quantity(s, a, o);
    cq.push_back(v.value);
    if (a == 0.0) {
      rec.record("cmi_alpha_zero", std::abs(v.value - 1.0));
      continue;
    }
    const Matrix v_c = v.optimum.point.v_out.topLeftCorner(dc, dc).adjoint();
    rec.record("reflection", std::abs(v.value - cmi_trace_direct(s, 2.0 - a, v_c)));
    rec.record("reflection", std::abs(cmi_trace_quantity(s, 2.0 - a, o).value - cmi_trace_direct(s, a, v_c)));
    const Commutant g = commutant_of(s.rho_c().op());
    Rng rng(seed, 41);
    std::vector<double> x(g.free_dim());
    for (double& t : x) t = 6.283185307179586 * rng.uniform();
    const Matrix w = g.member(x);
    rec.record("reflection", std::abs(cmi_trace_direct(s, a, w) - cmi_trace_direct(s, 2.0 - a, w)));
  }
  rec.record("non_increasing", max_decrease(std::vector<double>(cq.rbegin(), cq.rend())));
  rec.record("bounded", *std::max_element(cq.begin(), cq.end()) - 1.0);
}

Instance supported_instance(std::uint64_t seed) {
  Rng rng(seed, 9);
  const int din = 2 + static_cast<int>(rng.next() % 2);
  const int rank_sigma = 1 + static_cast<int>(rng.next() % din);
  const PositiveOperator sigma = random_positive(din, rank_sigma, mix_seed(seed, 2));
  const Matrix p = support_projector(sigma.op());
  Matrix r = p * random_density(din, din, mix_seed(seed, 1)).matrix() * p;
  r /= r.trace().real();
  return Instance(DensityOperator(r), sigma, random_channel(din, 2, 2, mix_seed(seed, 3)));
}

void trial_appendix_a(int, std::uint64_t seed, const OptimizerBudget&, Recorder& rec) {
  const Instance inst = supported_instance(seed);
  rec.record("q_one", std::abs(q_alpha(inst, 1.0) - 1.0));
  const double d = delta(inst);
  double worst = -kInf;
  for (double side : {-1.0, 1.0}) {
    const double e2 = std::abs(delta_alpha_unswiveled(inst, 1 + side * 1e-2) - d);
    const double e3 = std::abs(delta_alpha_unswiveled(inst, 1 + side * 1e-3) - d);
    worst = std::max(worst, window_excess(ratio(e2, e3), 0.05, 0.2));
  }
  rec.record("limit_ratio", worst);
}

void trial_appendix_c(int, std::uint64_t seed, const OptimizerBudget&, Recorder& rec) {
  const Instance inst = qubit_instance(seed);
  const SwivelPoint pt = random_point(inst, seed);
  const double f1 = f_at_one(inst, pt);
  double worst = -kInf;
  for (double side : {-1.0, 1.0}) {
    const double e2 = std::abs(objective_f(inst, 1 + side * 1e-2, pt) - f1);
    const double e3 = std::abs(objective_f(inst, 1 + side * 1e-3, pt) - f1);
    worst = std::max(worst, window_excess(ratio(e2, e3), 0.05, 0.2));
  }
  rec.record("limit_ratio", worst);
}

void trial_oracle(int index, std::uint64_t seed, const OptimizerBudget& b, Recorder& rec) {
  const SwivelOptions o = options(b);
  const SwivelOptions ot = reduced_options(b);
  const int n_in = 2 + static_cast<int>(seed % 2);
  const oracle::Dist p = random_distribution(n_in, mix_seed(seed, 1));
  const oracle::Dist q = random_distribution(n_in, mix_seed(seed, 2));
  const oracle::Stochastic ch = random_stochastic(2, n_in, mix_seed(seed, 3));
  const Instance inst(DensityOperator(diagonal(p)), PositiveOperator(diagonal(q)), classical_channel(ch));

  auto diff = [&](double lib, double ref) { rec.record("classical", std::abs(lib - ref)); };
  diff(delta(inst), oracle::delta(p, q, ch));
  for (double a : prime_alpha_grid()) diff(delta_prime(inst, a, o).value, oracle::delta_prime(p, q, ch, a));
  for (double a : tilde_alpha_grid()) {
    diff(delta_tilde_prime(inst, a, o).value, oracle::delta_tilde_prime(p, q, ch, a));
  }
  for (double pp : default_p_grid()) diff(trace_quantity(inst, pp, o).value, oracle::trace_quantity(p, q, ch, pp));

  const oracle::Joint joint = classical_joint(mix_seed(seed, 4));
  const TripartiteState s(DensityOperator(diagonal(joint.p)), 2, 2, 2);
  diff(cmi(s), oracle::cmi(joint));
  for (double a : {0.0, 0.5, 1.5, 2.0}) diff(cmi_prime(s, a, ot).value, oracle::cmi_prime(joint, a));
  for (double a : {0.5, 2.0}) diff(cmi_tilde_prime(s, a, ot).value, oracle::cmi_prime(joint, a));

  const EntropyCombo combo = random_combo(mix_seed(seed, 7));
  const NormalizedCombo nc = normalize_combo(combo, s.state());
  std::vector<std::pair<unsigned, int>> coeffs;
  for (Subset sub : nc.combo.order) coeffs.emplace_back(sub, nc.combo.coeff(sub));
  for (double a : {0.0, 0.5, 2.0}) diff(l_prime(nc, a, ot).value, oracle::combo_prime(joint, coeffs, a));
  for (double a : {0.5, 2.0}) diff(l_tilde_prime(nc, a, ot).value, oracle::combo_prime(joint, coeffs, a));

  if (index < 10) {
    const Instance qi = qubit_instance(seed);
    for (double a : {0.5, 1.5}) {
      const double lib = maximize_norm(qi, a, NormFamily::F, o).value;
      const double ref = oracle::grid_max_log_norm_f(qi.rho().matrix(), qi.sigma().matrix(), qi.channel().kraus(), a);
      rec.record("phase_grid", std::abs(lib - ref));
    }
  }
}

void trial_combos(int, std::uint64_t seed, const OptimizerBudget& b, Recorder& rec) {
  const SwivelOptions o = options(b);
  const SwivelOptions ot = reduced_options(b);
  const TripartiteState s = random_tripartite(seed);
  for (const EntropyCombo& combo : {cmi_combo(2, 2, 2), random_combo(mix_seed(seed, 7))}) {
    const NormalizedCombo nc = normalize_combo(combo, s.state());
    const LValueParts parts = l_value_parts(nc);
    const double l = parts.direct;
    rec.record("dual_path", std::abs(parts.direct - parts.relent));
    rec.record("l_prime_bounds", std::max(l_prime(nc, 0.0, o).value - l, l - l_prime(nc, 2.0, o).value));
    rec.record("l_tilde_bounds",
               std::max(l_tilde_prime(nc, 0.5, ot).value - l, l - l_tilde_prime(nc, kInf, o).value));
  }
}

const std::vector<ClaimDef>& registry() {
  static const std::vector<ClaimDef> defs = {
      {{"thm-monotone", "Delta' non-decreasing on [0,2] minus {1}, step 0.1, certified qubit optima"},
       {{"monotone", 1e-5}, {"certified", 0.0}},
       trial_monotone},
      {{"thm-monotone-tilde", "tilde Delta' non-decreasing on {0.5..0.9, 1.25, 1.5, 2, 4, 8, inf}"},
       {{"monotone", 1e-5}, {"certified", 0.0}},
       trial_monotone_tilde},
      {{"reduction", "N = Tr: Delta' = D_alpha + log Tr sigma and tilde Delta' = tilde D_alpha + log Tr sigma"},
       {{"delta_prime", 1e-8}, {"delta_tilde_prime", 1e-8}},
       trial_reduction},
      {{"prop-lim-a-1", "one-sided limits at alpha = 1 sandwich Delta; convergence ratio; a discontinuity occurs"},
       {{"sandwich", 1e-7}, {"limit_ratio", 0.2}, {"discontinuity", 0.0, true}},
       trial_lim_a_1},
      {{"non-negativity", "Delta' >= 0 on [0,2] and tilde Delta' >= 0 on [1/2, inf]"},
       {{"delta_prime", 1e-6}, {"delta_tilde_prime", 1e-6}},
       trial_non_negativity},
      {{"cor-recover", "fidelity and D_0 lower bounds; D_max and D_2 upper bounds on Tr_A instances"},
       {{"lower_bounds", 1e-7}, {"lower_bounds_explicit", 1e-7}, {"upper_bounds", 1e-7}, {"upper_bounds_explicit",
                                                                                            1e-7}},
       trial_recover},
      {{"thm-rel-ent-other", "rotated Petz maps: some t with D_0 <= Delta, some t with D_2 >= Delta"},
       {{"d0_exists", 1e-6}, {"d2_exists", 1e-6}},
       trial_rel_ent_other},
      {{"cmi-suite", "swiveled CMI: non-negative, monotone, data processing on B, SSA refinement bounds"},
       {{"non_negative", 1e-6}, {"monotone", 1e-5}, {"data_processing_b", 1e-5}, {"ssa_lower", 1e-7},
        {"ssa_upper", 1e-7}},
       trial_cmi},
      {{"prop-zhang", "trace quantity <= 1 and non-increasing in p; CMI trace quantity at alpha = 0 and reflection"},
       {{"bounded", 1e-9}, {"non_increasing", 1e-6}, {"cmi_alpha_zero", 1e-9}, {"reflection", 1e-8}},
       trial_zhang},
      {{"appendix-a", "Q_1 = 1 and |Delta_alpha - Delta| = O(|alpha - 1|) with stable constant"},
       {{"q_one", 1e-9}, {"limit_ratio", 0.0}},
       trial_appendix_a},
      {{"appendix-c", "f(alpha, V, W) -> f(1, V, W) linearly at fixed random swivels"},
       {{"limit_ratio", 0.0}},
       trial_appendix_c},
      {{"oracle-equivalence", "diagonal instances match the scalar oracle; optimizer matches a phase-grid oracle"},
       {{"classical", 1e-8}, {"phase_grid", 1e-6}},
       trial_oracle},
      {{"combos", "L'_0 <= L <= L'_2, tilde L'_{1/2} <= L <= tilde L'_inf, l_value dual-path agreement"},
       {{"l_prime_bounds", 1e-5}, {"l_tilde_bounds", 1e-5}, {"dual_path", 1e-8}},
       trial_combos},
  };
  return defs;
}

const ClaimDef& find_claim(const std::string& id) {
  for (const ClaimDef& d : registry()) {
    if (d.info.id == id) return d;
  }
  fail(ErrorKind::UnknownClaim, "unknown claim '" + id + "'");
}

struct TrialResult {
  std::map<std::string, double> values;
  bool failed = false;
  std::string message;
};

}  // namespace

const std::vector<ClaimInfo>& claim_list() {
  static const std::vector<ClaimInfo> list = [] {
    std::vector<ClaimInfo> l;
    for (const ClaimDef& d : registry()) l.push_back(d.info);
    return l;
  }();
  return list;
}

bool has_claim(const std::string& id) {
  for (const ClaimDef& d : registry()) {
    if (d.info.id == id) return true;
  }
  return false;
}

VerificationReport run_claim(const std::string& id, const ClaimConfig& config) {
  const ClaimDef& def = find_claim(id);
  const int trials = config.trials.value_or(def.info.default_trials);
  if (trials < 1) fail(ErrorKind::InvalidArgument, "trials must be positive");
  std::vector<CheckSpec> checks = def.checks;
  if (config.tolerance) checks.front().tolerance = *config.tolerance;

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::uint64_t> seeds(trials);
  for (int i = 0; i < trials; ++i) seeds[i] = mix_seed(config.seed, static_cast<std::uint64_t>(i));

  std::vector<TrialResult> results(trials);
  auto work = [&](int first, int stride) {
    for (int i = first; i < trials; i += stride) {
      Recorder rec;
      try {
        def.trial(i, seeds[i], config.budget, rec);
        results[i].values = rec.values();
      } catch (const std::exception& e) {
        results[i].failed = true;
        results[i].message = "trial " + std::to_string(i) + ": " + e.what();
      }
    }
  };
  const int jobs = std::clamp(config.jobs, 1, trials);
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(work, w, jobs);
    for (std::thread& t : pool) t.join();
  }

  VerificationReport r;
  r.claim_id = id;
  r.trials = trials;
  r.seeds = seeds;
  r.budget = config.budget;
  r.master_seed = config.seed;
  r.tool_version = kVersion;
  for (const CheckSpec& c : checks) {
    CheckSummary s;
    s.name = c.name;
    s.tolerance = c.tolerance;
    s.existential = c.existential;
    double extreme = c.existential ? kInf : -kInf;
    for (const TrialResult& t : results) {
      if (t.failed) continue;
      auto it = t.values.find(c.name);
      if (it == t.values.end()) continue;
      ++s.trials;
      if (it->second <= c.tolerance) ++s.passes;
      extreme = c.existential ? std::min(extreme, it->second) : std::max(extreme, it->second);
    }
    s.worst_violation = s.trials > 0 ? std::max(0.0, extreme) : 0.0;
    s.passed = s.trials > 0 && (c.existential ? s.passes > 0 : s.passes == s.trials);
    r.checks.push_back(s);
  }
  for (const TrialResult& t : results) {
    if (t.failed) {
      ++r.numerical_failures;
      r.failure_messages.push_back(t.message);
      continue;
    }
    bool ok = true;
    for (const CheckSpec& c : checks) {
      if (c.existential) continue;
      auto it = t.values.find(c.name);
      if (it != t.values.end() && !(it->second <= c.tolerance)) ok = false;
    }
    if (ok) ++r.passes;
  }
  r.tolerance = r.checks.front().tolerance;
  r.worst_violation = r.checks.front().worst_violation;

  std::ostringstream key;
  key << "claim=" << id << ";trials=" << trials << ";seed=" << config.seed << ";tolerance="
      << format_double(r.tolerance) << ";restarts=" << config.budget.restarts
      << ";max_evals=" << config.budget.max_evals << ";budget_seed=" << config.budget.seed << ";version=" << kVersion;
  r.input_digest = digest_hex(key.str());
  r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace swivel::cli
