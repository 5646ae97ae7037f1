#include <algorithm>
#include <cmath>

#include "dires/parallel.hpp"
#include "dires/pipeline.hpp"

// Bad-vertex classifiers. All verdicts are sampled and one-sided: "bad"
// carries a witness set, "not bad" means no sampled witness survived.
//
// Small-set regularity at desk scale cannot be tested by raw sub-density
// deviations: with |Q| * ell * d only a handful of arcs, every random host
// would be flagged. The surrogate used here compares the pair's degree
// profile against the binomial reference at the measured density: a pruned
// neighborhood passes when its density sits near the host pair's density and
// both degree profiles have no more outliers than a binomial quantile at the
// configured false-positive rate allows. Planted irregular blocks concentrate
// degrees far outside the reference and are caught immediately.

namespace dires {

void PipelineConfig::validate() const {
  auto positive = [](double v) { return v > 0.0; };
  if (!(positive(lambda) && positive(rho) && positive(eps_prime) && positive(xi) && positive(alpha)))
    throw param_error("pipeline config: constants must be positive");
  if (!(lambda < rho && rho < eps_prime && eps_prime < xi && xi < alpha))
    throw param_error("pipeline config: need lambda < rho < eps_prime < xi < alpha");
  if (!(eps > 0.0 && eps <= eps_prime))
    throw param_error("pipeline config: need 0 < eps <= eps_prime");
  if (!(eps_atypical > 0.0 && eps_atypical <= 1.0))
    throw param_error("pipeline config: eps_atypical must be in (0,1]");
  if (k < 1) throw param_error("pipeline config: k must be positive");
  if (witness_budget < 1 || inner_reg_samples < 1)
    throw param_error("pipeline config: sampling budgets must be positive");
  if (!(small_set_fp > 0.0 && small_set_fp < 0.1))
    throw param_error("pipeline config: small_set_fp must be in (0, 0.1)");
}

DerivedParams derive_params(const PipelineConfig& cfg, double p, int ell, int r, int n) {
  DerivedParams dp;
  dp.p = p;
  dp.delta = cfg.xi * p;
  dp.ell = ell;
  dp.r = r;
  dp.q1 = cfg.lambda * ell * p;
  dp.q2 = 2.0 * ell * p;
  dp.a0_size = std::max(1, static_cast<int>(std::ceil(dp.q1 - 1e-9)));
  dp.dangerous_part = 100.0 * cfg.rho * ell * p;
  dp.dangerous_outside = n * p / 20.0;
  double cap = (1.0 - cfg.eps_prime) * (1.0 - cfg.eps) * dp.delta * cfg.eps_prime * ell;
  if (dp.q1 > cap)
    throw param_error("pipeline config: q1 = lambda*ell*p exceeds (1-eps')(1-eps)*delta*eps'*ell");
  return dp;
}

std::vector<char> classify_atypical(const Digraph& d, const std::vector<std::vector<int>>& parts,
                                    double eps, double p) {
  const int n = d.n();
  std::vector<int> part_of(n, -1);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (int v : parts[i]) part_of[v] = static_cast<int>(i);
  const int r = static_cast<int>(parts.size());
  std::vector<int> dout(static_cast<std::size_t>(n) * r, 0), din(static_cast<std::size_t>(n) * r, 0);
  for (int u = 0; u < n; ++u)
    for (int v : d.out(u)) {
      int j = part_of[v];
      if (j >= 0) ++dout[static_cast<std::size_t>(u) * r + j];
      int i = part_of[u];
      if (i >= 0) ++din[static_cast<std::size_t>(v) * r + i];
    }
  std::vector<char> atypical(n, 0);
  if (parts.empty()) return atypical;
  const double mean = static_cast<double>(parts[0].size()) * p;
  const double slack = eps * mean;
  for (int u = 0; u < n; ++u)
    for (int j = 0; j < r; ++j)
      if (std::abs(dout[static_cast<std::size_t>(u) * r + j] - mean) >= slack ||
          std::abs(din[static_cast<std::size_t>(u) * r + j] - mean) >= slack) {
        atypical[u] = 1;
        break;
      }
  return atypical;
}

namespace {

// P(Bin(n,p) <= k)
double binom_cdf(int k, int n, double p) {
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  if (p <= 0.0) return 1.0;
  if (p >= 1.0) return 0.0;
  double logq = std::log1p(-p), logp = std::log(p);
  double logpmf = n * logq;  // pmf(0)
  double cdf = std::exp(logpmf);
  for (int i = 1; i <= k; ++i) {
    logpmf += std::log(static_cast<double>(n - i + 1) / i) + logp - logq;
    cdf += std::exp(logpmf);
  }
  return std::min(cdf, 1.0);
}

// smallest t with P(Bin(n,p) >= t) <= tail
int binom_upper_threshold(int n, double p, double tail) {
  if (p >= 1.0) return n + 1;
  double logq = std::log1p(-std::min(p, 1.0 - 1e-15));
  double logp = std::log(std::max(p, 1e-300));
  double logpmf = n * logq;
  double cdf = std::exp(logpmf);
  if (1.0 - cdf <= tail) return 1;
  for (int i = 1; i <= n; ++i) {
    logpmf += std::log(static_cast<double>(n - i + 1) / i) + logp - logq;
    cdf += std::exp(logpmf);
    if (1.0 - cdf <= tail) return i + 1;
  }
  return n + 1;
}

struct SmallPairStats {
  int ns = 0, nt = 0;     // side sizes
  long long arcs = 0;
  double dq = 0.0;        // arcs / (ns * nt)
  std::vector<int> deg_s;  // per left member, degree into the right side
  std::vector<int> deg_t;  // per right member, degree from the left side
};

// Degree profiles consistent with a binomial host at the measured density?
// Outlier counts are tested on a ladder of deviation levels (multiples of
// eps' up to the extreme all-or-nothing degrees): mild levels catch broad
// skews, the extreme levels catch planted block structure, and each level is
// held to the binomial quantile at tail fp, so a genuinely random pair
// almost never trips any rung.
bool profile_ok(const SmallPairStats& st, double eps_prime, double fp) {
  if (st.ns == 0 || st.nt == 0) return false;
  auto side_ok = [&](const std::vector<int>& deg, int other) {
    const int n_side = static_cast<int>(deg.size());
    for (double t : {1.0, 2.0, 4.0, 8.0}) {
      const double lo = (1.0 - t * eps_prime) * st.dq * other;
      const double hi = (1.0 + t * eps_prime) * st.dq * other;
      if (lo > 0) {
        int c_lo = 0;
        for (int d : deg) c_lo += d < lo;
        double pi = binom_cdf(static_cast<int>(std::ceil(lo - 1e-9)) - 1, other, st.dq);
        if (c_lo >= binom_upper_threshold(n_side, pi, fp)) return false;
      }
      if (hi < other) {
        int c_hi = 0;
        for (int d : deg) c_hi += d > hi;
        double pi = 1.0 - binom_cdf(static_cast<int>(std::floor(hi + 1e-9)), other, st.dq);
        if (c_hi >= binom_upper_threshold(n_side, pi, fp)) return false;
      }
    }
    // extremes: all-zero and all-full degrees
    int c_zero = 0, c_full = 0;
    for (int d : deg) {
      c_zero += d == 0;
      c_full += d == other;
    }
    double pi_zero = binom_cdf(0, other, st.dq);
    double pi_full = 1.0 - binom_cdf(other - 1, other, st.dq);
    if (c_zero >= binom_upper_threshold(n_side, pi_zero, fp)) return false;
    if (c_full >= binom_upper_threshold(n_side, pi_full, fp)) return false;
    return true;
  };
  return side_ok(st.deg_s, st.nt) && side_ok(st.deg_t, st.ns);
}

double noise_sigma(double d, double z, double cells) {
  double dd = std::clamp(d, 1e-9, 1.0 - 1e-9);
  return z * std::sqrt(dd * (1.0 - dd) / cells);
}

// density band around [lo_ref, hi_ref] with sampling-noise slack
bool band_ok(const SmallPairStats& st, double lo_ref, double hi_ref, double z) {
  double sigma = noise_sigma(0.5 * (lo_ref + hi_ref), z, static_cast<double>(st.ns) * st.nt);
  return st.dq >= lo_ref - sigma - 1e-12 && st.dq <= hi_ref + sigma + 1e-12;
}

// Shared context for classifying vertices against one ordered pair (L, R).
struct PairCtx {
  const Digraph* dpr = nullptr;
  const PartSlicedAdj* adj = nullptr;  // set in the fast (census) path
  const std::vector<int>* pos_in_part = nullptr;
  int left_part = -1, right_part = -1;
  std::vector<int> left, right;
  std::vector<int> pos_left, pos_right;  // global -> local (generic path)
  double d_pair = 0.0;

  int lpos(int v) const { return pos_left.empty() ? (*pos_in_part)[v] : pos_left[v]; }
  int rpos(int v) const { return pos_right.empty() ? (*pos_in_part)[v] : pos_right[v]; }

  template <class F>
  void for_out_in_right(int q, F&& f) const {
    if (adj) {
      for (int v : adj->out_slice(q, right_part)) f(v);
    } else {
      for (int v : dpr->out(q))
        if (pos_right[v] >= 0) f(v);
    }
  }
  template <class F>
  void for_in_in_left(int q, F&& f) const {
    if (adj) {
      for (int v : adj->in_slice(q, left_part)) f(v);
    } else {
      for (int v : dpr->in(q))
        if (pos_left[v] >= 0) f(v);
    }
  }

  // stats of (Qt, R) when out_side, else (L, Qt); Qt always the small side
  SmallPairStats stats_vs_part(const std::vector<int>& qt, bool out_side) const {
    SmallPairStats st;
    const int other = static_cast<int>(out_side ? right.size() : left.size());
    st.deg_s.assign(qt.size(), 0);
    st.deg_t.assign(other, 0);
    for (std::size_t i = 0; i < qt.size(); ++i) {
      int deg = 0;
      if (out_side) {
        for_out_in_right(qt[i], [&](int v) {
          ++deg;
          ++st.deg_t[rpos(v)];
        });
      } else {
        for_in_in_left(qt[i], [&](int v) {
          ++deg;
          ++st.deg_t[lpos(v)];
        });
      }
      st.deg_s[i] = deg;
      st.arcs += deg;
    }
    st.ns = static_cast<int>(qt.size());
    st.nt = other;
    st.dq = st.ns && st.nt ? static_cast<double>(st.arcs) / (static_cast<double>(st.ns) * st.nt) : 0;
    return st;
  }

  // stats of (ql, qr), both small vertex lists, arcs L -> R
  SmallPairStats stats_small_pair(const std::vector<int>& ql, const std::vector<int>& qr) const {
    SmallPairStats st;
    st.ns = static_cast<int>(ql.size());
    st.nt = static_cast<int>(qr.size());
    st.deg_s.assign(st.ns, 0);
    st.deg_t.assign(st.nt, 0);
    std::vector<int> local(st.nt);
    std::vector<std::uint64_t> bits((right.size() + 63) / 64, 0);
    std::vector<int> slot(right.size(), -1);
    for (int j = 0; j < st.nt; ++j) {
      int pos = rpos(qr[j]);
      bits[pos >> 6] |= 1ull << (pos & 63);
      slot[pos] = j;
    }
    for (int i = 0; i < st.ns; ++i) {
      for_out_in_right(ql[i], [&](int v) {
        int pos = rpos(v);
        if (bits[pos >> 6] >> (pos & 63) & 1) {
          ++st.deg_s[i];
          ++st.deg_t[slot[pos]];
          ++st.arcs;
        }
      });
    }
    st.dq = st.ns && st.nt ? static_cast<double>(st.arcs) / (static_cast<double>(st.ns) * st.nt) : 0;
    return st;
  }
};

PairCtx make_generic_ctx(const Digraph& dpr, std::span<const int> x, std::span<const int> y) {
  PairCtx ctx;
  ctx.dpr = &dpr;
  ctx.left.assign(x.begin(), x.end());
  ctx.right.assign(y.begin(), y.end());
  ctx.pos_left.assign(dpr.n(), -1);
  ctx.pos_right.assign(dpr.n(), -1);
  for (std::size_t i = 0; i < ctx.left.size(); ++i) ctx.pos_left[ctx.left[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < ctx.right.size(); ++i)
    ctx.pos_right[ctx.right[i]] = static_cast<int>(i);
  long long e = 0;
  for (int u : ctx.left)
    for (int v : dpr.out(u)) e += ctx.pos_right[v] >= 0;
  ctx.d_pair = static_cast<double>(e) /
               (static_cast<double>(ctx.left.size()) * static_cast<double>(ctx.right.size()));
  return ctx;
}

// One clause of the type-I definition. True (bad) iff some sampled Q of size
// in [q1,q2] admits no passing pruned subset.
bool type1_clause(const PairCtx& ctx, const PipelineConfig& cfg, const DerivedParams& dp, int u,
                  bool out_side, int witness_budget, Rng& rng, std::vector<int>* witness) {
  std::vector<int> nbr;
  if (out_side) {
    if (ctx.adj) {
      auto s = ctx.adj->out_slice(u, ctx.left_part);
      nbr.assign(s.begin(), s.end());
    } else {
      for (int v : ctx.dpr->out(u))
        if (ctx.pos_left[v] >= 0) nbr.push_back(v);
    }
  } else {
    if (ctx.adj) {
      auto s = ctx.adj->in_slice(u, ctx.right_part);
      nbr.assign(s.begin(), s.end());
    } else {
      for (int v : ctx.dpr->in(u))
        if (ctx.pos_right[v] >= 0) nbr.push_back(v);
    }
  }
  const int lo = std::max(1, static_cast<int>(std::ceil(dp.q1 - 1e-9)));
  const int hi = std::min(static_cast<int>(nbr.size()), static_cast<int>(std::floor(dp.q2 + 1e-9)));
  if (hi < lo) return false;  // neighborhood below q1: the condition is vacuous

  const double lo_ref = (1.0 - cfg.eps) * ctx.d_pair;
  const double hi_ref = (1.0 + cfg.eps) * ctx.d_pair;
  auto passes = [&](const std::vector<int>& qt) {
    auto st = ctx.stats_vs_part(qt, out_side);
    return band_ok(st, lo_ref, hi_ref, cfg.noise_z) &&
           profile_ok(st, cfg.eps_prime, cfg.small_set_fp);
  };

  for (int w = 0; w < witness_budget; ++w) {
    int qs = lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
    auto pick = rng.sample_indices(static_cast<int>(nbr.size()), qs);
    std::vector<int> qt(qs);
    for (int i = 0; i < qs; ++i) qt[i] = nbr[pick[i]];
    bool passed = passes(qt);
    int prunes = static_cast<int>(std::floor(cfg.eps_prime * qs));
    for (int round = 0; round < prunes && !passed; ++round) {
      // drop the member whose far-side degree deviates most from typical
      auto st = ctx.stats_vs_part(qt, out_side);
      double target = ctx.d_pair * st.nt;
      std::size_t worst = 0;
      double worst_dev = -1.0;
      for (std::size_t i = 0; i < qt.size(); ++i) {
        double dev = std::abs(st.deg_s[i] - target);
        if (dev > worst_dev) {
          worst_dev = dev;
          worst = i;
        }
      }
      qt.erase(qt.begin() + static_cast<std::ptrdiff_t>(worst));
      if (qt.empty()) break;
      passed = passes(qt);
    }
    if (!passed) {
      if (witness) {
        witness->clear();
        for (int i : pick) witness->push_back(nbr[i]);
      }
      return true;
    }
  }
  return false;
}

// Type-II condition (iv): neighborhoods on both sides of the pair boundary
// whose every pruned sub-pair fails the profile test with density within
// (1 +- eps')^2 of the pair density.
bool cond_iv(const PairCtx& ctx, const PipelineConfig& cfg, const DerivedParams& dp, int u,
             int witness_budget, Rng& rng) {
  std::vector<int> nl, nr;
  if (ctx.adj) {
    auto sl = ctx.adj->in_slice(u, ctx.left_part);
    nl.assign(sl.begin(), sl.end());
    auto sr = ctx.adj->out_slice(u, ctx.right_part);
    nr.assign(sr.begin(), sr.end());
  } else {
    for (int v : ctx.dpr->in(u))
      if (ctx.pos_left[v] >= 0) nl.push_back(v);
    for (int v : ctx.dpr->out(u))
      if (ctx.pos_right[v] >= 0) nr.push_back(v);
  }
  const int lo = std::max(1, static_cast<int>(std::ceil(dp.q1 - 1e-9)));
  const int hi_l = std::min(static_cast<int>(nl.size()), static_cast<int>(std::floor(dp.q2 + 1e-9)));
  const int hi_r = std::min(static_cast<int>(nr.size()), static_cast<int>(std::floor(dp.q2 + 1e-9)));
  if (hi_l < lo || hi_r < lo) return false;

  const double lo_ref = (1.0 - cfg.eps_prime) * (1.0 - cfg.eps_prime) * ctx.d_pair;
  const double hi_ref = (1.0 + cfg.eps_prime) * (1.0 + cfg.eps_prime) * ctx.d_pair;

  auto pair_passes = [&](std::vector<int> ql, std::vector<int> qr) {
    int prunes =
        static_cast<int>(std::floor(cfg.eps_prime * std::min(ql.size(), qr.size())));
    for (int round = 0; round <= prunes; ++round) {
      if (round > 0) {
        auto st = ctx.stats_small_pair(ql, qr);
        // alternate sides, dropping the member least typical for the pair
        bool left_side = round % 2 == 1;
        auto& side = left_side ? ql : qr;
        const auto& deg = left_side ? st.deg_s : st.deg_t;
        if (side.size() <= 1) break;
        double target = st.dq * (left_side ? st.nt : st.ns);
        std::size_t worst = 0;
        double worst_dev = -1.0;
        for (std::size_t i = 0; i < side.size(); ++i) {
          double dev = std::abs(deg[i] - target);
          if (dev > worst_dev) {
            worst_dev = dev;
            worst = i;
          }
        }
        side.erase(side.begin() + static_cast<std::ptrdiff_t>(worst));
      }
      auto st = ctx.stats_small_pair(ql, qr);
      if (band_ok(st, lo_ref, hi_ref, cfg.noise_z) &&
          profile_ok(st, cfg.eps_prime, cfg.small_set_fp))
        return true;
    }
    return false;
  };

  for (int w = 0; w < witness_budget; ++w) {
    int qs_l = lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi_l - lo + 1)));
    int qs_r = lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi_r - lo + 1)));
    std::vector<int> ql, qr;
    for (int i : rng.sample_indices(static_cast<int>(nl.size()), qs_l)) ql.push_back(nl[i]);
    for (int i : rng.sample_indices(static_cast<int>(nr.size()), qs_r)) qr.push_back(nr[i]);
    if (!pair_passes(std::move(ql), std::move(qr))) return true;
  }
  return false;
}

}  // namespace

Type1Verdict classify_bad_type1(const Digraph& dprime, int u, std::span<const int> x,
                                std::span<const int> y, const PipelineConfig& cfg,
                                const DerivedParams& dp, int witness_budget, std::uint64_t seed) {
  PairCtx ctx = make_generic_ctx(dprime, x, y);
  if (ctx.pos_left[u] >= 0 || ctx.pos_right[u] >= 0)
    throw param_error("classify_bad_type1: u must avoid X and Y");
  Type1Verdict v;
  Rng rng(derive_seed(seed, "type1-standalone", static_cast<std::uint64_t>(u)));
  std::vector<int> witness;
  if (type1_clause(ctx, cfg, dp, u, true, witness_budget, rng, &witness)) {
    v.bad = true;
    v.witness = witness;
    v.clause = "out";
    return v;
  }
  if (type1_clause(ctx, cfg, dp, u, false, witness_budget, rng, &witness)) {
    v.bad = true;
    v.witness = witness;
    v.clause = "in";
    return v;
  }
  return v;
}

namespace {

struct CensusEngine {
  const Digraph& dpr;
  const std::vector<std::vector<int>>& parts;
  const PipelineConfig& cfg;
  const DerivedParams& dp;
  std::vector<int> part_of, pos_in_part;
  PartSlicedAdj adj;
  std::vector<PairCtx> pair_ctx;  // pair a = (V_a, V_{a+1})

  CensusEngine(const Digraph& dprime, const std::vector<std::vector<int>>& parts_in,
               const PipelineConfig& cfg_in, const DerivedParams& dp_in)
      : dpr(dprime), parts(parts_in), cfg(cfg_in), dp(dp_in) {
    const int n = dpr.n();
    const int r = static_cast<int>(parts.size());
    part_of.assign(n, -1);
    pos_in_part.assign(n, -1);
    for (int i = 0; i < r; ++i)
      for (std::size_t j = 0; j < parts[i].size(); ++j) {
        part_of[parts[i][j]] = i;
        pos_in_part[parts[i][j]] = static_cast<int>(j);
      }
    adj = build_part_sliced(dpr, part_of, r);
    pair_ctx.resize(r);
    for (int a = 0; a < r; ++a) {
      auto& ctx = pair_ctx[a];
      int b = (a + 1) % r;
      ctx.dpr = &dpr;
      ctx.adj = &adj;
      ctx.pos_in_part = &pos_in_part;
      ctx.left_part = a;
      ctx.right_part = b;
      ctx.left = parts[a];
      ctx.right = parts[b];
      long long e = 0;
      for (int uvert : parts[a]) e += adj.out_deg(uvert, b);
      ctx.d_pair = static_cast<double>(e) /
                   (static_cast<double>(parts[a].size()) * static_cast<double>(parts[b].size()));
    }
  }

  bool type1_at(int u, int a, std::uint64_t seed) const {
    const auto& ctx = pair_ctx[a];
    if (part_of[u] == ctx.left_part || part_of[u] == ctx.right_part) return false;
    Rng rng(derive_seed(seed, "census-type1", static_cast<std::uint64_t>(u) * parts.size() + a));
    if (type1_clause(ctx, cfg, dp, u, true, cfg.witness_budget, rng, nullptr)) return true;
    return type1_clause(ctx, cfg, dp, u, false, cfg.witness_budget, rng, nullptr);
  }

  bool iv_at(int u, int i, std::uint64_t seed) const {
    const auto& ctx = pair_ctx[i];
    if (part_of[u] == ctx.left_part || part_of[u] == ctx.right_part) return false;
    Rng rng(derive_seed(seed, "census-iv", static_cast<std::uint64_t>(u) * parts.size() + i));
    return cond_iv(ctx, cfg, dp, u, cfg.witness_budget, rng);
  }
};

BadCensus census_impl(const Digraph& d, const Digraph& dprime,
                      const std::vector<std::vector<int>>& parts, const PipelineConfig& cfg,
                      const DerivedParams& dp, std::uint64_t seed, bool parallel) {
  const int n = dprime.n();
  const int r = static_cast<int>(parts.size());
  BadCensus census;
  census.atypical = classify_atypical(d, parts, cfg.eps_atypical, dp.p);
  CensusEngine eng(dprime, parts, cfg, dp);

  census.type1.assign(r, std::vector<char>(n, 0));
  auto t1_job = [&](std::int64_t idx) {
    int u = static_cast<int>(idx / r);
    int a = static_cast<int>(idx % r);
    census.type1[a][u] = eng.type1_at(u, a, seed);
  };
  if (parallel)
    parallel_for(static_cast<std::int64_t>(n) * r, t1_job);
  else
    serial_for(static_cast<std::int64_t>(n) * r, t1_job);

  census.type1_fwd.assign(n, 0);
  census.type1_bwd.assign(n, 0);
  for (int u = 0; u < n; ++u) {
    int s = eng.part_of[u];
    if (s < 0) continue;
    census.type1_fwd[u] = census.type1[(s + 1) % r][u];          // U_s: pair (V_{s+1}, V_{s+2})
    census.type1_bwd[u] = census.type1[(s - 2 + 2 * r) % r][u];  // W_s: pair (V_{s-2}, V_{s-1})
  }

  census.i_bad.assign(r, std::vector<char>(n, 0));
  auto iv_job = [&](std::int64_t idx) {
    int u = static_cast<int>(idx / r);
    int i = static_cast<int>(idx % r);
    bool bad = census.type1[(i - 1 + r) % r][u] || census.type1[i][u] ||
               census.type1[(i + 1) % r][u] || eng.iv_at(u, i, seed);
    census.i_bad[i][u] = bad;
  };
  if (parallel)
    parallel_for(static_cast<std::int64_t>(n) * r, iv_job);
  else
    serial_for(static_cast<std::int64_t>(n) * r, iv_job);

  census.type2.assign(n, 0);
  const double threshold = cfg.alpha * r / 40.0;
  for (int u = 0; u < n; ++u) {
    int cnt = 0;
    for (int i = 0; i < r; ++i) cnt += census.i_bad[i][u];
    census.type2[u] = cnt > 0 && cnt >= threshold;
  }
  for (int u = 0; u < n; ++u) {
    census.b_size += census.atypical[u];
    census.t1_size += census.type1_fwd[u] || census.type1_bwd[u];
    census.t2_size += census.type2[u];
  }
  return census;
}

}  // namespace

Type2Verdict classify_bad_type2(const Digraph& dprime, int u,
                                const std::vector<std::vector<int>>& parts,
                                const PipelineConfig& cfg, const DerivedParams& dp,
                                int witness_budget, std::uint64_t seed) {
  if (parts.size() < 5) throw param_error("classify_bad_type2: need a part cycle of length >= 5");
  const int r = static_cast<int>(parts.size());
  PipelineConfig local = cfg;
  local.witness_budget = witness_budget;
  CensusEngine eng(dprime, parts, local, dp);
  std::vector<char> t1(r, 0);
  for (int a = 0; a < r; ++a) t1[a] = eng.type1_at(u, a, seed);
  Type2Verdict v;
  for (int i = 0; i < r; ++i) {
    bool bad = t1[(i - 1 + r) % r] || t1[i] || t1[(i + 1) % r] || eng.iv_at(u, i, seed);
    if (bad) v.i_bad.push_back(i);
  }
  v.bad = !v.i_bad.empty() && static_cast<double>(v.i_bad.size()) >= cfg.alpha * r / 40.0;
  return v;
}

BadCensus compute_bad_census(const Digraph& d, const Digraph& dprime,
                             const std::vector<std::vector<int>>& parts, const PipelineConfig& cfg,
                             const DerivedParams& dp, std::uint64_t seed) {
  return census_impl(d, dprime, parts, cfg, dp, seed, true);
}

BadCensus compute_bad_census_serial(const Digraph& d, const Digraph& dprime,
                                    const std::vector<std::vector<int>>& parts,
                                    const PipelineConfig& cfg, const DerivedParams& dp,
                                    std::uint64_t seed) {
  return census_impl(d, dprime, parts, cfg, dp, seed, false);
}

AbsorptionIndices find_absorption_indices(const Digraph& d, const Digraph& dprime, int u,
                                          const std::vector<std::vector<int>>& parts,
                                          const PipelineConfig& cfg, const DerivedParams& dp,
                                          const std::vector<char>& i_bad_for_u) {
  AbsorptionIndices res;
  const int r = static_cast<int>(parts.size());
  const int n = dprime.n();
  double lhs = static_cast<double>(r) * dp.ell * (1.0 - cfg.alpha / 4.0 - 2.0 / r) *
               (1.0 - cfg.eps - cfg.alpha / 2.0);
  res.hypothesis_ok = lhs >= (1.0 - cfg.alpha) * n;
  if (!res.hypothesis_ok)
    res.diagnostics = "size hypothesis r*ell*(1-a/4-2/r)*(1-e-a/2) >= (1-a)*n fails; ";

  std::vector<int> part_of(n, -1);
  for (int i = 0; i < r; ++i)
    for (int v : parts[i]) part_of[v] = i;
  const double min_deg = cfg.alpha * dp.ell * dp.p / 2.0;
  int up = part_of[u];

  int starved_outside = 0, starved_degree = 0, starved_bad = 0;
  std::vector<int> candidates;
  for (int i = 0; i < r; ++i) {
    int inext = (i + 1) % r;
    if (up == i || up == inext) {
      ++starved_outside;
      continue;
    }
    int din = 0, dout = 0;
    for (int v : dprime.in(u)) din += part_of[v] == i;
    for (int v : dprime.out(u)) dout += part_of[v] == inext;
    if (din < min_deg || dout < min_deg) {
      ++starved_degree;
      continue;
    }
    if (!i_bad_for_u.empty() && i_bad_for_u[i]) {
      ++starved_bad;
      continue;
    }
    candidates.push_back(i);
  }
  // keep every fifth element in cyclic order
  std::vector<int> chosen;
  for (int i : candidates) {
    bool clash = false;
    for (int j : chosen) {
      int fwd = ((i - j) % r + r) % r, bwd = ((j - i) % r + r) % r;
      if (fwd < 5 || bwd < 5) {
        clash = true;
        break;
      }
    }
    if (!clash) chosen.push_back(i);
  }
  res.indices = chosen;
  double need = cfg.alpha * r / 40.0;
  res.ok = !chosen.empty() && static_cast<double>(chosen.size()) >= need;
  if (!res.ok)
    res.diagnostics += "greedy yielded " + std::to_string(chosen.size()) + " indices (need " +
                       std::to_string(need) + "); filters: own-part " +
                       std::to_string(starved_outside) + ", degree " +
                       std::to_string(starved_degree) + ", i-bad " + std::to_string(starved_bad);
  return res;
}

}  // namespace dires
