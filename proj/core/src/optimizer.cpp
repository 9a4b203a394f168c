#include "swivel/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>
#include <numeric>

#include "swivel/random.hpp"

namespace swivel {

namespace {

constexpr int kMaxGridDim = 4;
constexpr int kMaxPointsPerAngle = 2000;
constexpr int kMinPointsPerAngle = 8;
constexpr int kMaxCertifiedDim = 3;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double safe(double v) { return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v; }

struct Counted {
  const Objective& f;
  long evals = 0;
  double operator()(std::span<const double> x) {
    ++evals;
    return safe(f(x));
  }
};

struct LocalResult {
  std::vector<double> x;
  double value;
  bool converged;
};

// Nelder–Mead on −f with restarts from the incumbent at shrinking scales.
LocalResult nelder_mead(Counted& f, std::vector<double> x0, double f0, double h, long max_evals) {
  const int n = static_cast<int>(x0.size());
  const long start_evals = f.evals;
  std::vector<double> best_x = x0;
  double best = f0;
  bool converged = true;

  for (int round = 0; round < 4; ++round) {
    std::vector<std::vector<double>> simplex(n + 1, best_x);
    std::vector<double> val(n + 1);
    val[0] = best;
    for (int i = 0; i < n; ++i) {
      simplex[i + 1][i] += h;
      val[i + 1] = f(simplex[i + 1]);
    }
    std::vector<int> idx(n + 1);
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    bool done = false;
    while (!done) {
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(), [&](int a, int b) { return val[a] > val[b]; });
      const int ib = idx[0], iw = idx[n], isw = idx[n - 1];
      double spread = 0.0, diam = 0.0;
      for (int i = 1; i <= n; ++i) {
        spread = std::max(spread, std::abs(val[idx[i]] - val[ib]));
        for (int j = 0; j < n; ++j) diam = std::max(diam, std::abs(simplex[idx[i]][j] - simplex[ib][j]));
      }
      if ((spread <= 1e-15 * std::max(1.0, std::abs(val[ib])) && diam <= 1e-9) || diam <= 1e-13) break;
      if (f.evals - start_evals >= max_evals) {
        converged = false;
        break;
      }
      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) centroid[j] += simplex[idx[i]][j] / n;
      }
      for (int j = 0; j < n; ++j) xr[j] = centroid[j] + (centroid[j] - simplex[iw][j]);
      const double fr = f(xr);
      if (fr > val[ib]) {
        for (int j = 0; j < n; ++j) xe[j] = centroid[j] + 2.0 * (centroid[j] - simplex[iw][j]);
        const double fe = f(xe);
        if (fe > fr) {
          simplex[iw] = xe;
          val[iw] = fe;
        } else {
          simplex[iw] = xr;
          val[iw] = fr;
        }
        continue;
      }
      if (fr > val[isw]) {
        simplex[iw] = xr;
        val[iw] = fr;
        continue;
      }
      const bool outside = fr > val[iw];
      for (int j = 0; j < n; ++j) {
        const double far = outside ? xr[j] : simplex[iw][j];
        xc[j] = centroid[j] + 0.5 * (far - centroid[j]);
      }
      const double fc = f(xc);
      if (fc > std::max(outside ? fr : val[iw], val[iw])) {
        simplex[iw] = xc;
        val[iw] = fc;
        continue;
      }
      for (int i = 1; i <= n; ++i) {
        std::vector<double>& p = simplex[idx[i]];
        for (int j = 0; j < n; ++j) p[j] = simplex[ib][j] + 0.5 * (p[j] - simplex[ib][j]);
        val[idx[i]] = f(p);
      }
    }
    int ib = 0;
    for (int i = 1; i <= n; ++i) {
      if (val[i] > val[ib]) ib = i;
    }
    const double gain = val[ib] - best;
    if (val[ib] > best) {
      best = val[ib];
      best_x = simplex[ib];
    }
    if (!converged) break;
    if (round > 0 && gain <= 1e-14 * std::max(1.0, std::abs(best))) break;
    h *= 0.1;
  }
  return {std::move(best_x), best, converged};
}

std::vector<int> digits(long index, int n, int k) {
  std::vector<int> d(k);
  for (int j = k - 1; j >= 0; --j) {
    d[j] = static_cast<int>(index % n);
    index /= n;
  }
  return d;
}

}  // namespace

int grid_points_per_angle(const SearchSpace& space, const OptimizerBudget& budget) {
  if (!space.torus || space.dim < 1 || space.dim > kMaxGridDim) return 0;
  int n = static_cast<int>(std::floor(std::pow(static_cast<double>(budget.max_evals), 1.0 / space.dim) + 1e-9));
  n = std::min(n, kMaxPointsPerAngle);
  long total = 1;
  for (int j = 0; j < space.dim; ++j) total *= n;
  while (n > 1 && total > budget.max_evals) {
    --n;
    total = 1;
    for (int j = 0; j < space.dim; ++j) total *= n;
  }
  return n >= kMinPointsPerAngle ? n : 0;
}

OptimizeResult maximize(const SearchSpace& space, const Objective& objective, const OptimizerBudget& budget,
                        std::span<const std::vector<double>> warm_starts) {
  Counted f{objective};
  OptimizeResult res;
  const int k = space.dim;
  res.params.assign(k, 0.0);
  res.value = f(res.params);
  if (k == 0) {
    res.certified = true;
    res.evaluations = f.evals;
    return res;
  }

  struct Start {
    std::vector<double> x;
    double value;
    double step;
  };
  std::vector<Start> starts;
  const int n = grid_points_per_angle(space, budget);
  const long local_budget = 600L * (k + 1);

  if (n > 0) {
    long total = 1;
    for (int j = 0; j < k; ++j) total *= n;
    const double step = kTwoPi / n;
    std::vector<double> grid(total);
    std::vector<double> x(k);
    for (long i = 0; i < total; ++i) {
      const std::vector<int> d = digits(i, n, k);
      for (int j = 0; j < k; ++j) x[j] = step * d[j];
      grid[i] = i == 0 ? res.value : f(x);
    }
    // Local maxima with periodic wrap; ties resolved towards the lower index.
    std::vector<long> peaks;
    std::vector<int> offs(k);
    long strides[kMaxGridDim];
    strides[k - 1] = 1;
    for (int j = k - 2; j >= 0; --j) strides[j] = strides[j + 1] * n;
    long neighbours = 1;
    for (int j = 0; j < k; ++j) neighbours *= 3;
    for (long i = 0; i < total; ++i) {
      const std::vector<int> d = digits(i, n, k);
      bool peak = true;
      for (long c = 0; c < neighbours && peak; ++c) {
        long rem = c, nb = 0;
        bool centre = true;
        for (int j = 0; j < k; ++j) {
          const int o = static_cast<int>(rem % 3) - 1;
          rem /= 3;
          if (o != 0) centre = false;
          nb += strides[j] * ((d[j] + o + n) % n);
        }
        if (centre) continue;
        if (grid[nb] > grid[i] || (grid[nb] == grid[i] && nb < i)) peak = false;
      }
      if (peak) peaks.push_back(i);
    }
    std::stable_sort(peaks.begin(), peaks.end(), [&](long a, long b) { return grid[a] > grid[b]; });
    const std::size_t keep = std::min<std::size_t>(peaks.size(), std::max(1, budget.restarts));
    for (std::size_t p = 0; p < keep; ++p) {
      const std::vector<int> d = digits(peaks[p], n, k);
      std::vector<double> xs(k);
      for (int j = 0; j < k; ++j) xs[j] = step * d[j];
      starts.push_back({std::move(xs), grid[peaks[p]], step});
    }
    for (const std::vector<double>& w : warm_starts) {
      if (static_cast<int>(w.size()) == k) starts.push_back({w, f(w), 0.5 * step});
    }
  } else {
    starts.push_back({res.params, res.value, 0.5});
    for (const std::vector<double>& w : warm_starts) {
      if (static_cast<int>(w.size()) == k) starts.push_back({w, f(w), 0.1});
    }
    Rng rng(budget.seed, 0x5157);
    for (int r = 1; r < budget.restarts; ++r) {
      std::vector<double> xs(k);
      for (double& v : xs) v = (2.0 * rng.uniform() - 1.0) * std::numbers::pi;
      const double v0 = f(xs);
      starts.push_back({std::move(xs), v0, 0.5});
    }
  }

  for (Start& s : starts) {
    LocalResult lr = nelder_mead(f, s.x, s.value, s.step, local_budget);
    ++res.restarts_used;
    if (!lr.converged) res.budget_exceeded = true;
    if (lr.value > res.value) {
      res.value = lr.value;
      res.params = std::move(lr.x);
    }
  }
  res.certified = n > 0 && k <= kMaxCertifiedDim && !res.budget_exceeded;
  res.evaluations = f.evals;
  return res;
}

std::uint64_t params_hash(std::span<const double> params) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double v : params) {
    if (v == 0.0) v = 0.0;
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

}  // namespace swivel
