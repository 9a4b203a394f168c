#include "swivel/combos.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"
#include "swivel/entropy.hpp"
#include "swivel/error.hpp"

namespace swivel {

namespace {

constexpr double kDualPathTol = 1e-8;

std::vector<int> members_of(Subset s, std::size_t n) {
  std::vector<int> out;
  for (std::size_t k = 0; k < n; ++k) {
    if (s & (Subset(1) << k)) out.push_back(static_cast<int>(k));
  }
  return out;
}

Matrix marginal_matrix(const NormalizedCombo& nc, Subset s) {
  const std::vector<int> dims = nc.combo.dims();
  if (s == nc.combo.full()) return nc.state.matrix();
  std::vector<int> traced;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (!(s & (Subset(1) << k))) traced.push_back(static_cast<int>(k));
  }
  return partial_trace(nc.state.matrix(), dims, traced);
}

Matrix embedded(const NormalizedCombo& nc, Subset s, const Matrix& op) {
  const std::vector<int> dims = nc.combo.dims();
  const std::vector<int> sys = members_of(s, dims.size());
  return embed(op, dims, sys);
}

bool marginal_pd(const DensityOperator& state, const EntropyCombo& combo, Subset s) {
  const std::vector<int> dims = combo.dims();
  std::vector<int> traced;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (!(s & (Subset(1) << k))) traced.push_back(static_cast<int>(k));
  }
  const HermitianOperator m(traced.empty() ? state.matrix() : partial_trace(state.matrix(), dims, traced));
  return m.positive_definite();
}

struct ChainParts {
  std::vector<Matrix> factors;
  std::vector<Commutant> groups;
};

// [Π_S ρ_S^{e_S} V_S] ρ^{last} with the first swivel dropped (it commutes to the left).
ChainParts combo_chain_parts(const NormalizedCombo& nc, double alpha, NormFamily family) {
  const std::vector<Subset>& order = nc.combo.order;
  const double scale = family == NormFamily::F ? (alpha - 1.0) : alpha_prime(alpha);
  std::vector<Matrix> e;
  std::vector<Commutant> g;
  const std::vector<int> dims = nc.combo.dims();
  for (Subset s : order) {
    const HermitianOperator m(marginal_matrix(nc, s));
    const double a = nc.combo.coeff(s);
    e.push_back(embedded(nc, s, power(m, -0.5 * a * scale)));
    g.push_back(embed_commutant(commutant_of(m), dims, members_of(s, dims.size())));
  }
  const Matrix last = power(nc.state.op(), family == NormFamily::F ? 0.5 * alpha : 0.5);
  ChainParts parts;
  if (e.empty()) {
    parts.factors.push_back(last);
    return parts;
  }
  if (e.size() == 1) {
    parts.factors.push_back(e[0] * last);
    return parts;
  }
  parts.factors.push_back(e[0] * e[1]);
  for (std::size_t j = 2; j < e.size(); ++j) parts.factors.push_back(e[j]);
  parts.factors.push_back(last);
  for (std::size_t j = 1; j < g.size(); ++j) parts.groups.push_back(g[j]);
  return parts;
}

void check_alpha_family(double alpha, NormFamily family) {
  if (family == NormFamily::F) {
    if (!(alpha >= 0) || std::isinf(alpha)) fail(ErrorKind::InvalidArgument, "alpha must be finite and >= 0");
    require_alpha_away_from_one(alpha);
  } else {
    if (!(alpha > 0)) fail(ErrorKind::InvalidArgument, "alpha must be positive");
    if (!std::isinf(alpha)) require_alpha_away_from_one(alpha);
  }
}

SwivelValue combo_value(const NormalizedCombo& nc, double alpha, NormFamily family, const SwivelOptions& opts) {
  check_alpha_family(alpha, family);
  ChainParts parts = combo_chain_parts(nc, alpha, family);
  const NormChain chain(std::move(parts.factors), SwivelSpace(std::move(parts.groups)));
  const double p = family_norm_index(family, alpha);
  const OptimizeResult r = maximize(
      chain.space().search_space(), [&](std::span<const double> x) { return chain.log_norm(x, p); }, opts.budget,
      opts.warm_starts);
  SwivelValue v;
  v.optimum.value = r.value;
  v.optimum.point.params = r.params;
  v.optimum.restarts_used = r.restarts_used;
  v.optimum.certified = r.certified;
  v.optimum.budget_exceeded = r.budget_exceeded;
  v.optimum.evaluations = r.evaluations;
  const double pre = family == NormFamily::F ? 2.0 / (alpha - 1.0) : 2.0 / alpha_prime(alpha);
  v.value = pre * r.value;
  return v;
}

char fresh_label(const EntropyCombo& combo) {
  std::set<char> used;
  for (const ComboSystem& s : combo.systems) used.insert(s.label[0]);
  for (char c : std::string("RSTUVWXYZDEFGHIJKLMNOPQ")) {
    if (!used.count(c)) return c;
  }
  fail(ErrorKind::InvalidArgument, "no free label for the purifying system");
}

}  // namespace

int EntropyCombo::coeff(Subset s) const {
  const auto it = coeffs.find(s);
  return it == coeffs.end() ? 0 : it->second;
}

std::vector<int> EntropyCombo::dims() const {
  std::vector<int> d;
  for (const ComboSystem& s : systems) d.push_back(s.dim);
  return d;
}

void validate_combo(const EntropyCombo& combo) {
  const std::size_t n = combo.systems.size();
  if (n == 0 || n > 16) fail(ErrorKind::InvalidArgument, "combo needs between 1 and 16 systems");
  std::set<std::string> labels;
  for (const ComboSystem& s : combo.systems) {
    if (s.label.size() != 1) fail(ErrorKind::InvalidArgument, "system labels must be single characters");
    if (!labels.insert(s.label).second) fail(ErrorKind::InvalidArgument, "duplicate system label");
    if (s.dim < 1) fail(ErrorKind::InvalidArgument, "system dimensions must be positive");
  }
  const Subset full = combo.full();
  std::set<Subset> needed;
  for (const auto& [s, a] : combo.coeffs) {
    if (s == 0 || (s & ~full)) fail(ErrorKind::InvalidArgument, "coefficient on an invalid subset");
    if (a < -1 || a > 1) fail(ErrorKind::InvalidArgument, "coefficients must be -1, 0 or +1");
    if (a != 0 && s != full) needed.insert(s);
  }
  std::set<Subset> seen;
  for (Subset s : combo.order) {
    if (!needed.count(s)) fail(ErrorKind::InvalidArgument, "order lists a subset without a non-zero coefficient");
    if (!seen.insert(s).second) fail(ErrorKind::InvalidArgument, "order lists a subset twice");
  }
  if (seen.size() != needed.size()) fail(ErrorKind::InvalidArgument, "order must list every non-zero proper subset");
}

std::string subset_label(const EntropyCombo& combo, Subset s) {
  std::string out;
  for (int k : members_of(s, combo.systems.size())) out += combo.systems[k].label;
  std::sort(out.begin(), out.end());
  return out;
}

Subset parse_subset(const EntropyCombo& combo, std::string_view label) {
  Subset s = 0;
  for (char c : label) {
    bool found = false;
    for (std::size_t k = 0; k < combo.systems.size(); ++k) {
      if (combo.systems[k].label[0] == c) {
        if (s & (Subset(1) << k)) fail(ErrorKind::InvalidArgument, "repeated label in subset");
        s |= Subset(1) << k;
        found = true;
      }
    }
    if (!found) fail(ErrorKind::InvalidArgument, std::string("unknown system label in subset: ") + c);
  }
  if (s == 0) fail(ErrorKind::InvalidArgument, "empty subset");
  return s;
}

EntropyCombo cmi_combo(int d_a, int d_b, int d_c) {
  EntropyCombo c;
  c.systems = {{"A", d_a}, {"B", d_b}, {"C", d_c}};
  const Subset a = 1, b = 2, cc = 4;
  c.coeffs = {{a | b | cc, -1}, {a | cc, 1}, {b | cc, 1}, {cc, -1}};
  c.order = {b | cc, cc, a | cc};
  return c;
}

NormalizedCombo normalize_combo(const EntropyCombo& combo, const DensityOperator& state, double epsilon) {
  validate_combo(combo);
  if (state.dim() != product(combo.dims())) fail(ErrorKind::DimensionMismatch, "state does not match the combo");
  if (epsilon < 0) fail(ErrorKind::InvalidArgument, "mixing weight must be non-negative");
  EntropyCombo c = combo;
  ComboProvenance prov;
  const Subset full = c.full();
  if (c.coeff(full) == 1) {
    for (auto& kv : c.coeffs) kv.second = -kv.second;
    prov.factored_minus_one = true;
  }
  const bool purify_needed = c.coeff(full) == 0;

  bool need_mix = !purify_needed && !state.op().positive_definite();
  for (Subset s : c.order) need_mix = need_mix || !marginal_pd(state, c, s);

  DensityOperator work = state;
  double used_eps = 0.0;
  if (need_mix && epsilon > 0) {
    work = mix_with_maximally_mixed(state, epsilon);
    prov.mixed = true;
    used_eps = epsilon;
  }
  if (purify_needed) {
    const int d = work.dim();
    work = purify(work);
    c.coeffs.erase(full);
    c.systems.push_back({std::string(1, fresh_label(c)), d});
    c.coeffs[c.full()] = -1;
    prov.purified = true;
  }
  return {std::move(c), std::move(work), used_eps, prov};
}

LValueParts l_value_parts(const NormalizedCombo& nc) {
  const Subset full = nc.combo.full();
  if (nc.combo.coeff(full) != -1) fail(ErrorKind::InvalidArgument, "combo is not normalised");
  LValueParts out;
  const int n = nc.state.dim();
  Matrix m = Matrix::Zero(n, n);
  for (const auto& [s, a] : nc.combo.coeffs) {
    if (a == 0) continue;
    const HermitianOperator marg(marginal_matrix(nc, s));
    out.direct += a * vn_entropy(marg);
    if (s == full) continue;
    if (!marg.positive_definite()) {
      fail(ErrorKind::SupportViolation, "marginal " + subset_label(nc.combo, s) + " is not positive definite");
    }
    m += a * embedded(nc, s, log_support(marg));
  }
  const HermitianOperator mh(m);
  const SpectralDecomposition& eig = mh.spectrum();
  const Matrix expm =
      eig.eigenvectors * eig.eigenvalues.array().exp().matrix().cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
  out.relent = relative_entropy(nc.state.op(), HermitianOperator(expm));
  return out;
}

double l_value(const NormalizedCombo& nc) {
  const LValueParts p = l_value_parts(nc);
  if (std::abs(p.direct - p.relent) > kDualPathTol * std::max(1.0, std::abs(p.direct))) {
    fail(ErrorKind::NonConvergence, "direct and relative-entropy evaluations of L disagree");
  }
  return p.direct;
}

NormChain build_combo_chain(const NormalizedCombo& nc, double alpha, NormFamily family) {
  if (family == NormFamily::Trace) fail(ErrorKind::InvalidArgument, "combo chains use the F or G family");
  ChainParts parts = combo_chain_parts(nc, alpha, family);
  return NormChain(std::move(parts.factors), SwivelSpace(std::move(parts.groups)));
}

SwivelValue l_prime(const NormalizedCombo& nc, double alpha, const SwivelOptions& opts) {
  return combo_value(nc, alpha, NormFamily::F, opts);
}

SwivelValue l_tilde_prime(const NormalizedCombo& nc, double alpha, const SwivelOptions& opts) {
  return combo_value(nc, alpha, NormFamily::G, opts);
}

OneSidedLimits l_limits_at_one(const NormalizedCombo& nc, const SwivelOptions& opts) {
  const std::vector<Subset>& order = nc.combo.order;
  const std::vector<int> dims = nc.combo.dims();
  std::vector<Matrix> logs;
  std::vector<double> coeff;
  std::vector<Commutant> groups;
  for (std::size_t j = 0; j < order.size(); ++j) {
    const HermitianOperator m(marginal_matrix(nc, order[j]));
    if (!m.positive_definite()) fail(ErrorKind::SupportViolation, "limits need positive definite marginals");
    logs.push_back(embedded(nc, order[j], log_support(m)));
    coeff.push_back(nc.combo.coeff(order[j]));
    if (j > 0) groups.push_back(embed_commutant(commutant_of(m), dims, members_of(order[j], dims.size())));
  }
  const SwivelSpace space(groups);
  const Matrix& rho = nc.state.matrix();
  const double tr_rho_log = (rho * log_support(nc.state.op())).trace().real();
  const int n = nc.state.dim();

  auto f1 = [&](std::span<const double> x) {
    const std::vector<Matrix> v = space.members(x);
    Matrix w = Matrix::Identity(n, n);
    double acc = tr_rho_log;
    for (std::size_t j = order.size(); j-- > 0;) {
      if (j > 0) w = v[j - 1] * w;
      acc -= coeff[j] * (w * rho * w.adjoint() * logs[j]).trace().real();
    }
    return acc;
  };
  auto make = [&](const OptimizeResult& r, double sign) {
    SwivelOptimum o;
    o.value = sign * r.value;
    o.point.params = r.params;
    o.restarts_used = r.restarts_used;
    o.certified = r.certified;
    o.budget_exceeded = r.budget_exceeded;
    o.evaluations = r.evaluations;
    return o;
  };
  const OptimizeResult hi = maximize(space.search_space(), f1, opts.budget, opts.warm_starts);
  const OptimizeResult lo = maximize(
      space.search_space(), [&](std::span<const double> x) { return -f1(x); }, opts.budget, opts.warm_starts);
  OneSidedLimits out;
  out.right_opt = make(hi, 1.0);
  out.left_opt = make(lo, -1.0);
  out.right = out.right_opt.value;
  out.left = out.left_opt.value;
  return out;
}

SwivelValue trace_quantity(const Instance& inst, double p, const SwivelOptions& opts) {
  if (!(p >= 2.0) || std::isinf(p)) fail(ErrorKind::InvalidArgument, "trace quantity needs finite p >= 2");
  SwivelValue v;
  v.optimum = maximize_norm(inst, p, NormFamily::Trace, opts);
  v.value = std::exp(p * v.optimum.value);
  return v;
}

SwivelValue cmi_trace_quantity(const TripartiteState& state, double alpha, const SwivelOptions& opts) {
  if (!(alpha >= 0.0) || alpha > 2.0) fail(ErrorKind::InvalidArgument, "alpha must lie in [0, 2]");
  require_alpha_away_from_one(alpha);
  double a = alpha;
  if (alpha > 1.0) {
    if (!state.state().op().positive_definite()) {
      fail(ErrorKind::SupportViolation, "alpha in (1,2] needs a positive definite state");
    }
    a = 2.0 - alpha;
  }
  CmiProblem p = cmi_instance(state, opts.cluster_tol);
  SwivelOptions o = opts;
  o.groups = std::move(p.groups);
  return trace_quantity(p.instance, 2.0 / (1.0 - a), o);
}

double cmi_trace_direct(const TripartiteState& state, double alpha, const Matrix& v_c) {
  require_alpha_away_from_one(alpha);
  const std::array<int, 3>& d = state.dims();
  if (v_c.rows() != d[2] || v_c.cols() != d[2]) fail(ErrorKind::DimensionMismatch, "V must act on C");
  const double a = 0.5 * (1.0 - alpha);
  const int ac[2] = {0, 2}, bc[2] = {1, 2}, c[1] = {2};
  const Matrix pac = embed(power(state.rho_ac().op(), a), d, ac);
  const Matrix pc = embed(power(state.rho_c().op(), -a), d, c);
  const Matrix pbc = embed(power(state.rho_bc().op(), 2.0 * a), d, bc);
  const Matrix v = embed(v_c, d, c);
  const Matrix inner = pac * v * pc * pbc * pc * v.adjoint() * pac;
  const HermitianOperator h(Matrix(0.5 * (inner + inner.adjoint())));
  const SpectralDecomposition& eig = h.spectrum();
  const double e = 1.0 / (1.0 - alpha);
  double acc = 0.0;
  for (int k = 0; k < eig.eigenvalues.size(); ++k) {
    if (eig.in_support(k) && eig.eigenvalues[k] > 0) acc += std::pow(eig.eigenvalues[k], e);
  }
  return acc;
}

std::string combo_to_json(const EntropyCombo& combo) {
  using nlohmann::json;
  json j;
  json systems = json::array();
  for (const ComboSystem& s : combo.systems) systems.push_back({{"label", s.label}, {"dim", s.dim}});
  j["systems"] = std::move(systems);
  json coeffs = json::object();
  for (const auto& [s, a] : combo.coeffs) coeffs[subset_label(combo, s)] = a;
  j["coeffs"] = std::move(coeffs);
  json order = json::array();
  for (Subset s : combo.order) order.push_back(subset_label(combo, s));
  j["order"] = std::move(order);
  return j.dump(1) + "\n";
}

EntropyCombo combo_from_json(std::string_view text) {
  using nlohmann::json;
  EntropyCombo c;
  try {
    const json j = json::parse(text);
    for (const json& s : j.at("systems")) c.systems.push_back({s.at("label").get<std::string>(), s.at("dim").get<int>()});
    for (const auto& [key, val] : j.at("coeffs").items()) c.coeffs[parse_subset(c, key)] = val.get<int>();
    for (const json& s : j.at("order")) c.order.push_back(parse_subset(c, s.get<std::string>()));
  } catch (const json::exception& e) {
    fail(ErrorKind::IoError, std::string("combo JSON: ") + e.what());
  }
  validate_combo(c);
  return c;
}

}  // namespace swivel
