#include "smallball/variation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "smallball/pow_util.hpp"

namespace smallball {

namespace {

int sign_of(double d) { return (d > 0.0) - (d < 0.0); }

// Direction-change skeleton: the first index, then the last index of each
// maximal (weakly) monotone run. Equal-value runs are absorbed, so consecutive
// skeleton values strictly alternate. For p >= 1 an optimal partition can be
// supported on these indices: merging same-direction steps never decreases
// |sum|^p, and an interior point of a monotone run is dominated by its ends.
std::vector<std::size_t> skeleton(const double* x, std::size_t len) {
  std::vector<std::size_t> skel;
  skel.reserve(64);
  skel.push_back(0);
  int run_dir = 0;  // direction of the step into skel.back(), 0 before any move
  for (std::size_t i = 1; i < len; ++i) {
    const int d = sign_of(x[i] - x[skel.back()]);
    if (d == 0) continue;
    if (d == run_dir) {
      skel.back() = i;
    } else {
      skel.push_back(i);
      run_dir = d;
    }
  }
  return skel;
}

struct CoreResult {
  double value = 0.0;
  double root = 0.0;
  std::vector<std::size_t> indices;  // into the input range
};

// Exact O(m^2) DP over the skeleton. g[i] is the best sum of a partition
// starting at skeleton node i; arg[i] the smallest maximizing successor, so
// following the chain from the smallest optimal start yields the
// lexicographically smallest witness over the skeleton.
//
// When p*log2(oscillation) leaves the representable range the DP runs on
// values normalized by the oscillation; `root` is then reconstructed exactly
// while `value` may round to 0 or inf.
CoreResult pvar_core(const double* x, std::size_t len, double p) {
  CoreResult out;
  const std::vector<std::size_t> skel = skeleton(x, len);
  const std::size_t m = skel.size();
  if (m < 2) {
    out.indices.assign(1, 0);
    return out;
  }

  double vmin = x[skel[0]], vmax = vmin;
  for (std::size_t i = 1; i < m; ++i) {
    vmin = std::min(vmin, x[skel[i]]);
    vmax = std::max(vmax, x[skel[i]]);
  }
  const double osc = vmax - vmin;
  const bool normalized = std::abs(p * std::log2(osc)) > 500.0;
  const double scale = normalized ? 1.0 / osc : 1.0;

  std::vector<double> y(m);
  for (std::size_t i = 0; i < m; ++i) y[i] = x[skel[i]] * scale;

  std::vector<double> g(m, 0.0);
  std::vector<std::size_t> arg(m, m);
  for (std::size_t i = m - 1; i-- > 0;) {
    const double yi = y[i];
    double best = 0.0;
    std::size_t best_j = m;
    for (std::size_t j = i + 1; j < m; ++j) {
      const double cand = pow_abs(y[j] - yi, p) + g[j];
      if (cand > best) {
        best = cand;
        best_j = j;
      }
    }
    g[i] = best;
    arg[i] = best_j;
  }

  double best = g[0];
  std::size_t start = 0;
  for (std::size_t i = 1; i < m; ++i) {
    if (g[i] > best) {
      best = g[i];
      start = i;
    }
  }

  for (std::size_t cur = start;;) {
    out.indices.push_back(skel[cur]);
    if (arg[cur] == m) break;
    cur = arg[cur];
  }

  if (normalized) {
    out.root = osc * std::pow(best, 1.0 / p);
    out.value = std::pow(out.root, p);
  } else {
    out.value = best;
    out.root = std::pow(best, 1.0 / p);
  }
  return out;
}

void require_pvar_domain(const std::vector<double>& values, double p, const char* who) {
  if (!(p >= 1.0))
    throw std::invalid_argument(std::string(who) +
                                ": requires p >= 1 (pure-jump paths: jump_p_sum)");
  if (values.empty()) throw std::invalid_argument(std::string(who) + ": empty sequence");
}

// max over i < j of pow_abs(v[j]-v[i], p) / (t[j]-t[i]), nondecreasing t.
// Blocks of 64 points carry their value range; a block pair is enumerated only
// when range/min-gap cannot be beaten by the current maximum. A strided exact
// pass seeds the maximum so distant pairs prune early.
double holder_ratio_pow_max(const double* t, const double* v, std::size_t len, double p) {
  if (len < 2) return 0.0;
  constexpr std::size_t kBlock = 64;
  const std::size_t nb = (len + kBlock - 1) / kBlock;
  std::vector<double> bmin(nb), bmax(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    const std::size_t lo = b * kBlock, hi = std::min(len, lo + kBlock);
    double mn = v[lo], mx = v[lo];
    for (std::size_t i = lo + 1; i < hi; ++i) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    bmin[b] = mn;
    bmax[b] = mx;
  }

  double best = 0.0;
  const std::size_t stride = std::max<std::size_t>(1, len / 96);
  for (std::size_t i = 0; i < len; i += stride) {
    for (std::size_t j = i + stride; j < len; j += stride) {
      const double dt = t[j] - t[i];
      if (dt <= 0.0) continue;
      best = std::max(best, pow_abs(v[j] - v[i], p) / dt);
    }
  }

  for (std::size_t bi = 0; bi < nb; ++bi) {
    const std::size_t ilo = bi * kBlock, ihi = std::min(len, ilo + kBlock);
    for (std::size_t bj = bi; bj < nb; ++bj) {
      const std::size_t jlo = bj * kBlock, jhi = std::min(len, jlo + kBlock);
      if (bj > bi + 1) {
        const double gap = t[jlo] - t[ihi - 1];
        const double dv = std::max(bmax[bj] - bmin[bi], bmax[bi] - bmin[bj]);
        if (gap > 0.0 && pow_abs(dv, p) <= best * gap) continue;
      }
      for (std::size_t i = ilo; i < ihi; ++i) {
        const double ti = t[i], vi = v[i];
        for (std::size_t j = std::max(jlo, i + 1); j < jhi; ++j) {
          const double dt = t[j] - ti;
          if (dt <= 0.0) continue;
          const double num = pow_abs(v[j] - vi, p);
          if (num > best * dt) best = num / dt;
        }
      }
    }
  }
  return best;
}

}  // namespace

VariationResult pvar_dp(const std::vector<double>& values, double p) {
  require_pvar_domain(values, p, "pvar_dp");
  CoreResult core = pvar_core(values.data(), values.size(), p);
  VariationResult r;
  r.value = core.value;
  r.root = core.root;
  r.p = p;
  r.optimal_indices = std::move(core.indices);
  return r;
}

VariationResult pvar_bruteforce(const std::vector<double>& values, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("pvar_bruteforce: requires p > 0");
  const std::size_t n = values.size();
  if (n == 0) throw std::invalid_argument("pvar_bruteforce: empty sequence");
  if (n > 20) throw std::invalid_argument("pvar_bruteforce: length > 20");

  VariationResult best;
  best.p = p;
  best.optimal_indices = {0};
  std::vector<std::size_t> idx;
  idx.reserve(n);
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    if (std::popcount(mask) < 2) continue;
    idx.clear();
    double sum = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!((mask >> i) & 1u)) continue;
      if (!idx.empty()) sum += pow_abs(values[i] - prev, p);
      prev = values[i];
      idx.push_back(i);
    }
    if (sum > best.value ||
        (sum == best.value &&
         std::lexicographical_compare(idx.begin(), idx.end(), best.optimal_indices.begin(),
                                      best.optimal_indices.end()))) {
      best.value = sum;
      best.optimal_indices = idx;
    }
  }
  best.root = std::pow(best.value, 1.0 / p);
  return best;
}

double pvar_mesh(const std::vector<double>& values, double p, std::size_t max_gap) {
  require_pvar_domain(values, p, "pvar_mesh");
  if (max_gap < 1) throw std::invalid_argument("pvar_mesh: max_gap must be >= 1");
  const std::size_t n = values.size();
  std::vector<double> f(n, 0.0);
  double best = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t j0 = i > max_gap ? i - max_gap : 0;
    double fi = 0.0;
    for (std::size_t j = j0; j < i; ++j)
      fi = std::max(fi, f[j] + pow_abs(values[i] - values[j], p));
    f[i] = fi;
    best = std::max(best, fi);
  }
  return best;
}

BlockDecomposition block_pvars(const std::vector<double>& values, double p,
                               std::size_t n_blocks) {
  require_pvar_domain(values, p, "block_pvars");
  if (values.size() < 2) throw std::invalid_argument("block_pvars: need at least one step");
  const std::size_t steps = values.size() - 1;
  if (n_blocks == 0 || steps % n_blocks != 0)
    throw std::invalid_argument("block_pvars: step count not divisible by n_blocks");
  const std::size_t w = steps / n_blocks;

  BlockDecomposition d;
  d.n_blocks = n_blocks;
  d.boundaries.resize(n_blocks + 1);
  d.block_values.resize(n_blocks);
  for (std::size_t k = 0; k <= n_blocks; ++k) d.boundaries[k] = k * w;
  for (std::size_t k = 0; k < n_blocks; ++k)
    d.block_values[k] = pvar_core(values.data() + k * w, w + 1, p).value;
  return d;
}

double sup_norm(const std::vector<double>& values) {
  double s = 0.0;
  for (double x : values) s = std::max(s, std::fabs(x));
  return s;
}

double oscillation(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  return *mx - *mn;
}

double holder_seminorm(const std::vector<double>& values, double p, std::size_t n) {
  if (!(p >= 1.0)) throw std::invalid_argument("holder_seminorm: requires p >= 1");
  if (n < 1 || values.size() != n + 1)
    throw std::invalid_argument("holder_seminorm: values must have n+1 grid points");
  std::vector<double> t(n + 1);
  for (std::size_t i = 0; i <= n; ++i) t[i] = static_cast<double>(i) / static_cast<double>(n);
  const double r = holder_ratio_pow_max(t.data(), values.data(), values.size(), p);
  return std::pow(r, 1.0 / p);
}

double holder_sup_pth(const std::vector<double>& times, const std::vector<double>& values,
                      double p) {
  if (times.size() != values.size())
    throw std::invalid_argument("holder_sup_pth: times/values size mismatch");
  return holder_ratio_pow_max(times.data(), values.data(), values.size(), p);
}

double l2_norm(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("l2_norm: empty sequence");
  if (values.size() == 1) return std::fabs(values[0]);
  const std::size_t n = values.size() - 1;
  KahanSum s;
  for (std::size_t k = 0; k < n; ++k) s.add(values[k] * values[k]);
  return std::sqrt(s.value() / static_cast<double>(n));
}

LemmaWitness lemma1_check(const std::vector<double>& values, double p, std::size_t n_blocks) {
  const BlockDecomposition d = block_pvars(values, p, n_blocks);
  KahanSum s;
  for (double v : d.block_values) s.add(v);
  LemmaWitness w;
  w.premise = true;
  w.lhs = pvar_dp(values, p).value;
  w.rhs = s.value() + static_cast<double>(n_blocks) * pow_abs(oscillation(values), p);
  w.holds = w.lhs <= w.rhs * (1.0 + 1e-12);
  return w;
}

LemmaWitness lemma2_check(const std::vector<double>& values, double p, std::size_t n_blocks,
                          double epsilon) {
  const BlockDecomposition d = block_pvars(values, p, n_blocks);
  bool premise = true;
  for (std::size_t k = 1; k <= n_blocks; ++k) {
    const double b_prev = values[d.boundaries[k - 1]];
    const double b_k = values[d.boundaries[k]];
    if (!(d.block_values[k - 1] <= epsilon) || (b_k - b_prev) * b_k > 0.0) {
      premise = false;
      break;
    }
  }
  LemmaWitness w;
  w.premise = premise;
  w.lhs = pvar_dp(values, p).value;
  w.rhs = pow_abs(5.0, p) * static_cast<double>(n_blocks) * epsilon;
  w.holds = !premise || w.lhs <= w.rhs * (1.0 + 1e-12);
  return w;
}

}  // namespace smallball
