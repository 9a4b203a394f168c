#pragma once

// Scalar formulas for commuting (diagonal) instances, written against plain
// probability vectors so they share no code with the matrix implementation.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace swivel::oracle {

using Dist = std::vector<double>;
using Stochastic = std::vector<std::vector<double>>;  // P[y][x] = P(y|x)

inline Dist push_forward(const Dist& p, const Stochastic& ch) {
  Dist out(ch.size(), 0.0);
  for (std::size_t y = 0; y < ch.size(); ++y) {
    for (std::size_t x = 0; x < p.size(); ++x) out[y] += ch[y][x] * p[x];
  }
  return out;
}

inline double entropy(const Dist& p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0) h -= v * std::log(v);
  }
  return h;
}

inline double relative_entropy(const Dist& p, const Dist& q) {
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0) d += p[i] * (std::log(p[i]) - std::log(q[i]));
  }
  return d;
}

inline double renyi(const Dist& p, const Dist& q, double a) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0) s += std::pow(p[i], a) * std::pow(q[i], 1.0 - a);
  }
  return std::log(s) / (a - 1.0);
}

inline double delta(const Dist& p, const Dist& q, const Stochastic& ch) {
  return relative_entropy(p, q) - relative_entropy(push_forward(p, ch), push_forward(q, ch));
}

// Δ′_α: (1/(α−1)) log Σ_{x,y} p^α q^{1−α} P(y|x) Np^{1−α} Nq^{α−1}; ρ^0 is the support indicator.
inline double delta_prime(const Dist& p, const Dist& q, const Stochastic& ch, double a) {
  const Dist np = push_forward(p, ch), nq = push_forward(q, ch);
  double s = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] <= 0) continue;
    for (std::size_t y = 0; y < np.size(); ++y) {
      s += std::pow(p[x], a) * std::pow(q[x], 1.0 - a) * ch[y][x] * std::pow(np[y], 1.0 - a) *
           std::pow(nq[y], a - 1.0);
    }
  }
  return std::log(s) / (a - 1.0);
}

// Δ̃′_α: (1/(α−1)) log Σ_x d_x^α with d_x = p_x q_x^{−α′} Σ_y P(y|x) (Nq_y/Np_y)^{α′}.
inline double delta_tilde_prime(const Dist& p, const Dist& q, const Stochastic& ch, double a) {
  const Dist np = push_forward(p, ch), nq = push_forward(q, ch);
  const double ap = std::isinf(a) ? 1.0 : (a - 1.0) / a;
  std::vector<double> d(p.size(), 0.0);
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (std::size_t y = 0; y < np.size(); ++y) d[x] += ch[y][x] * std::pow(nq[y] / np[y], ap);
    d[x] *= p[x] * std::pow(q[x], -ap);
  }
  if (std::isinf(a)) return std::log(*std::max_element(d.begin(), d.end()));
  double s = 0.0;
  for (double v : d) s += std::pow(v, a);
  return std::log(s) / (a - 1.0);
}

// Σ_x (Σ_y Np_y^{2/p} Nq_y^{−2/p} P(y|x) q_x^{2/p})^{p/2}.
inline double trace_quantity(const Dist& p, const Dist& q, const Stochastic& ch, double pp) {
  const Dist np = push_forward(p, ch), nq = push_forward(q, ch);
  double s = 0.0;
  for (std::size_t x = 0; x < q.size(); ++x) {
    double d = 0.0;
    for (std::size_t y = 0; y < np.size(); ++y) d += std::pow(np[y] / nq[y], 2.0 / pp) * ch[y][x];
    d *= std::pow(q[x], 2.0 / pp);
    s += std::pow(d, pp / 2.0);
  }
  return s;
}

/// Joint distribution over ⊗dims, flattened with the first index most significant.
struct Joint {
  std::vector<int> dims;
  Dist p;

  std::vector<int> digits(std::size_t i) const {
    std::vector<int> d(dims.size());
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
      d[k] = static_cast<int>(i % dims[k]);
      i /= dims[k];
    }
    return d;
  }

  /// Marginal probability of the outcome restricted to `mask`, for every full outcome.
  Dist marginal_at(unsigned mask) const {
    std::vector<double> sums;
    std::vector<std::size_t> key(p.size());
    std::vector<std::vector<int>> keys;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const std::vector<int> d = digits(i);
      std::vector<int> k;
      for (std::size_t s = 0; s < dims.size(); ++s) k.push_back((mask >> s) & 1U ? d[s] : -1);
      auto it = std::find(keys.begin(), keys.end(), k);
      if (it == keys.end()) {
        keys.push_back(k);
        sums.push_back(0.0);
        it = keys.end() - 1;
      }
      key[i] = static_cast<std::size_t>(it - keys.begin());
      sums[key[i]] += p[i];
    }
    Dist out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = sums[key[i]];
    return out;
  }

  double marginal_entropy(unsigned mask) const {
    const Dist m = marginal_at(mask);
    double h = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] > 0) h -= p[i] * std::log(m[i]);
    }
    return h;
  }
};

inline double cmi(const Joint& j) {
  return j.marginal_entropy(0b101) + j.marginal_entropy(0b110) - j.marginal_entropy(0b100) -
         j.marginal_entropy(0b111);
}

/// (1/(α−1)) log Σ_x p(x)^α Π_S p_S(x_S)^{−a_S(α−1)}, S over the proper subsets.
inline double combo_prime(const Joint& j, const std::vector<std::pair<unsigned, int>>& coeffs, double a) {
  std::vector<Dist> margs;
  for (const auto& c : coeffs) margs.push_back(j.marginal_at(c.first));
  double s = 0.0;
  for (std::size_t i = 0; i < j.p.size(); ++i) {
    if (j.p[i] <= 0) continue;
    double t = std::pow(j.p[i], a);
    for (std::size_t k = 0; k < coeffs.size(); ++k) t *= std::pow(margs[k][i], -coeffs[k].second * (a - 1.0));
    s += t;
  }
  return std::log(s) / (a - 1.0);
}

/// Swiveled CMI for a classical joint distribution (both families coincide).
inline double cmi_prime(const Joint& j, double a) {
  return combo_prime(j, {{0b110, 1}, {0b100, -1}, {0b101, 1}}, a);
}

}  // namespace swivel::oracle
