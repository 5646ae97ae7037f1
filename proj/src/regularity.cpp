#include "dires/regularity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "dires/hamilton.hpp"
#include "dires/parallel.hpp"
#include "dires/rng.hpp"

namespace dires {

Partition equitable_partition(const Digraph& d, int k, std::uint64_t seed) {
  int n = d.n();
  if (k < 1 || k > n) throw param_error("equitable_partition: need 1 <= k <= n");
  Partition p;
  p.n = n;
  p.ell = n / k;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  Rng rng(derive_seed(seed, "equitable-partition"));
  rng.shuffle(perm);
  p.parts.resize(k);
  for (int i = 0; i < k; ++i) {
    p.parts[i].assign(perm.begin() + static_cast<std::ptrdiff_t>(i) * p.ell,
                      perm.begin() + static_cast<std::ptrdiff_t>(i + 1) * p.ell);
    std::sort(p.parts[i].begin(), p.parts[i].end());
  }
  p.v0.assign(perm.begin() + static_cast<std::ptrdiff_t>(k) * p.ell, perm.end());
  std::sort(p.v0.begin(), p.v0.end());
  return p;
}

std::string write_partition_text(const Partition& p) {
  std::string out = "partition " + std::to_string(p.n) + " " + std::to_string(p.k()) + " " +
                    std::to_string(p.ell) + "\n";
  auto append_row = [&out](const std::vector<int>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(row[i]);
    }
    out += '\n';
  };
  append_row(p.v0);
  for (const auto& part : p.parts) append_row(part);
  return out;
}

void write_partition(const Partition& p, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw param_error("write_partition: cannot open " + path);
  f << write_partition_text(p);
}

Partition read_partition_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw parse_error("missing header", 1);
  Partition p;
  int k = 0;
  {
    std::istringstream hs(line);
    std::string word;
    if (!(hs >> word >> p.n >> k >> p.ell) || word != "partition")
      throw parse_error("header must be 'partition <n> <k> <ell>'", 1);
  }
  if (k < 1 || p.ell < 0) throw parse_error("bad partition header values", 1);
  auto read_row = [&](long lineno) {
    if (!std::getline(in, line)) throw parse_error("unexpected end of file", lineno);
    std::istringstream ls(line);
    std::vector<int> row;
    int v;
    while (ls >> v) row.push_back(v);
    return row;
  };
  p.v0 = read_row(2);
  for (int i = 0; i < k; ++i) {
    p.parts.push_back(read_row(3 + i));
    if (static_cast<int>(p.parts.back().size()) != p.ell)
      throw parse_error("part size mismatch", 3 + i);
  }
  std::vector<char> seen(p.n, 0);
  long covered = 0;
  auto mark = [&](const std::vector<int>& row, long lineno) {
    for (int v : row) {
      if (v < 0 || v >= p.n || seen[v]) throw parse_error("invalid or repeated vertex", lineno);
      seen[v] = 1;
      ++covered;
    }
  };
  mark(p.v0, 2);
  for (int i = 0; i < k; ++i) mark(p.parts[i], 3 + i);
  if (covered != p.n) throw parse_error("partition does not cover V", 2 + k);
  return p;
}

Partition read_partition(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw param_error("read_partition: cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return read_partition_text(ss.str());
}

namespace {

// Arc counting between index-subsets of fixed (a, b) with a membership map.
struct PairView {
  const Digraph& d;
  std::vector<int> a, b;
  std::vector<int> b_pos;  // vertex -> local index in b, -1 otherwise
  double density = 0.0;

  PairView(const Digraph& dg, std::span<const int> av, std::span<const int> bv)
      : d(dg), a(av.begin(), av.end()), b(bv.begin(), bv.end()), b_pos(dg.n(), -1) {
    for (std::size_t i = 0; i < b.size(); ++i) b_pos[b[i]] = static_cast<int>(i);
    long long e = 0;
    for (int u : a)
      for (int v : d.out(u)) e += (b_pos[v] >= 0);
    density = static_cast<double>(e) / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
  }

  // e(X, Y) where X is a list of a-indices and y_mask flags b-indices.
  long long count(std::span<const int> x_idx, const std::vector<char>& y_mask) const {
    long long e = 0;
    for (int i : x_idx)
      for (int v : d.out(a[i])) {
        int j = b_pos[v];
        if (j >= 0 && y_mask[j]) ++e;
      }
    return e;
  }
};

int min_subset_size(double eps, std::size_t side) {
  double bound = eps * static_cast<double>(side);
  int sz = static_cast<int>(std::ceil(bound - 1e-9));
  return std::max(sz, 1);
}

void check_disjoint(const Digraph& d, std::span<const int> a, std::span<const int> b,
                    const char* who) {
  if (a.empty() || b.empty()) throw param_error(std::string(who) + ": empty set");
  std::vector<char> seen(d.n(), 0);
  for (int v : a) seen[v] = 1;
  for (int v : b)
    if (seen[v]) throw param_error(std::string(who) + ": sets overlap");
}

}  // namespace

RegularityVerdict is_regular_pair(const Digraph& d, std::span<const int> a, std::span<const int> b,
                                  const RegParams& params) {
  check_disjoint(d, a, b, "is_regular_pair");
  PairView pv(d, a, b);
  RegularityVerdict verdict;
  verdict.mode = params.mode;
  verdict.density = pv.density;
  const double scale = params.scale > 0 ? params.scale : pv.density;
  const double tol = params.eps * scale;
  const int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
  const int min_x = min_subset_size(params.eps, a.size());
  const int min_y = min_subset_size(params.eps, b.size());

  auto make_witness = [&](std::span<const int> x_idx, std::span<const int> y_idx) {
    std::vector<int> xs, ys;
    for (int i : x_idx) xs.push_back(pv.a[i]);
    for (int j : y_idx) ys.push_back(pv.b[j]);
    verdict.witness = std::pair{std::move(xs), std::move(ys)};
    verdict.regular = false;
  };

  if (params.mode == RegMode::exhaustive) {
    if (na > 12 || nb > 12)
      throw param_error("is_regular_pair: exhaustive mode requires |A|,|B| <= 12");
    // Row masks over b for every a-vertex, then popcount per subset pair.
    std::vector<std::uint32_t> row(na, 0);
    for (int i = 0; i < na; ++i)
      for (int v : d.out(pv.a[i])) {
        int j = pv.b_pos[v];
        if (j >= 0) row[i] |= 1u << j;
      }
    std::vector<int> members;
    for (std::uint32_t xm = 1; xm < (1u << na); ++xm) {
      if (std::popcount(xm) < min_x) continue;
      for (std::uint32_t ym = 1; ym < (1u << nb); ++ym) {
        int ys = std::popcount(ym);
        if (ys < min_y) continue;
        long long e = 0;
        std::uint32_t rest = xm;
        while (rest) {
          int i = std::countr_zero(rest);
          rest &= rest - 1;
          e += std::popcount(row[i] & ym);
        }
        int xs = std::popcount(xm);
        double dev = std::abs(static_cast<double>(e) / (static_cast<double>(xs) * ys) - pv.density);
        verdict.worst_dev = std::max(verdict.worst_dev, dev);
        if (dev > tol + 1e-12) {
          std::vector<int> xi, yi;
          for (int i = 0; i < na; ++i)
            if (xm >> i & 1) xi.push_back(i);
          for (int j = 0; j < nb; ++j)
            if (ym >> j & 1) yi.push_back(j);
          make_witness(xi, yi);
          return verdict;
        }
      }
    }
    return verdict;
  }

  // Sampled mode. Witnesses must clear the definitional tolerance plus a
  // binomial-noise margin, otherwise small random subsets of genuinely random
  // pairs would be flagged constantly.
  Rng rng(derive_seed(params.seed, "regular-pair-samples"));
  const double dbar = std::clamp(pv.density, 1e-9, 1.0 - 1e-9);
  auto noise = [&](int xs, int ys) {
    return params.noise_z * std::sqrt(dbar * (1.0 - dbar) / (static_cast<double>(xs) * ys));
  };

  auto test_subset = [&](const std::vector<int>& x_idx, const std::vector<int>& y_idx) {
    std::vector<char> y_mask(nb, 0);
    for (int j : y_idx) y_mask[j] = 1;
    long long e = pv.count(x_idx, y_mask);
    double dev = std::abs(
        static_cast<double>(e) / (static_cast<double>(x_idx.size()) * y_idx.size()) - pv.density);
    verdict.worst_dev = std::max(verdict.worst_dev, dev);
    if (dev > tol + noise(static_cast<int>(x_idx.size()), static_cast<int>(y_idx.size())) + 1e-12) {
      make_witness(x_idx, y_idx);
      return false;
    }
    return true;
  };

  const int x_sizes[3] = {min_x, std::max(min_x, na / 2), na};
  const int y_sizes[3] = {min_y, std::max(min_y, nb / 2), nb};
  for (int s = 0; s < params.samples; ++s) {
    int xs = x_sizes[static_cast<int>(rng.below(3))];
    int ys = y_sizes[static_cast<int>(rng.below(3))];
    if (!test_subset(rng.sample_indices(na, xs), rng.sample_indices(nb, ys))) return verdict;
  }

  // Degree-outlier candidates: a regular pair keeps the number of vertices
  // with atypical degree into the other side below eps * side.
  std::vector<int> out_low, out_high;
  for (int i = 0; i < na; ++i) {
    std::vector<char> all_b(nb, 1);
    long long deg = pv.count(std::span{&i, 1}, all_b);
    if (deg < (1.0 - params.eps) * pv.density * nb) out_low.push_back(i);
    if (deg > (1.0 + params.eps) * pv.density * nb) out_high.push_back(i);
  }
  std::vector<int> all_y(nb);
  for (int j = 0; j < nb; ++j) all_y[j] = j;
  for (auto* cand : {&out_low, &out_high}) {
    if (static_cast<int>(cand->size()) >= min_x && !cand->empty()) {
      if (!test_subset(*cand, all_y)) return verdict;
    }
  }
  return verdict;
}

BoundednessReport check_boundedness(const Digraph& d, double eta, double L, double p, int samples,
                                    std::uint64_t seed) {
  if (!(eta > 0.0 && eta <= 1.0)) throw param_error("check_boundedness: eta must be in (0,1]");
  if (!(L > 1.0)) throw param_error("check_boundedness: L must exceed 1");
  const int n = d.n();
  const int min_size = static_cast<int>(std::ceil(eta * n - 1e-9));
  if (min_size < 1) throw param_error("check_boundedness: eta*n below 1");
  if (2 * min_size > n) throw param_error("check_boundedness: cannot fit two disjoint sets");
  Rng rng(derive_seed(seed, "boundedness"));
  BoundednessReport rep;
  for (int s = 0; s < samples; ++s) {
    int sa = min_size + static_cast<int>(rng.below(n / 2 - min_size + 1));
    int sb = min_size + static_cast<int>(rng.below(n - sa - min_size + 1));
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    rng.shuffle(perm);
    std::vector<int> a(perm.begin(), perm.begin() + sa);
    std::vector<int> b(perm.begin() + sa, perm.begin() + sa + sb);
    long long e = count_arcs_between(d, a, b);
    double ratio = p > 0 ? static_cast<double>(e) / (p * sa * static_cast<double>(sb))
                         : (e > 0 ? std::numeric_limits<double>::infinity() : 0.0);
    rep.worst_ratio = std::max(rep.worst_ratio, ratio);
  }
  rep.bounded = rep.worst_ratio <= L;
  return rep;
}

OutlierCensus degree_outlier_census(const Digraph& d, std::span<const int> a, std::span<const int> b,
                                    double eps, double dens) {
  check_disjoint(d, a, b, "degree_outlier_census");
  std::vector<char> in_a(d.n(), 0), in_b(d.n(), 0);
  for (int v : a) in_a[v] = 1;
  for (int v : b) in_b[v] = 1;
  OutlierCensus c;
  const double hi_b = (1.0 + eps) * dens * static_cast<double>(b.size());
  const double lo_b = (1.0 - eps) * dens * static_cast<double>(b.size());
  for (int u : a) {
    int deg = 0;
    for (int v : d.out(u)) deg += in_b[v];
    if (deg > hi_b) ++c.out_high;
    if (deg < lo_b) ++c.out_low;
  }
  const double hi_a = (1.0 + eps) * dens * static_cast<double>(a.size());
  const double lo_a = (1.0 - eps) * dens * static_cast<double>(a.size());
  for (int v : b) {
    int deg = 0;
    for (int u : d.in(v)) deg += in_a[u];
    if (deg > hi_a) ++c.in_high;
    if (deg < lo_a) ++c.in_low;
  }
  return c;
}

Digraph equalize_densities(const Digraph& d, const Partition& p,
                           const std::vector<std::pair<int, int>>& pair_list, long long m_t,
                           std::uint64_t seed) {
  if (m_t < static_cast<long long>(kGsMinArcFactor) * 2 * p.ell)
    throw param_error("equalize_densities: m_t below " + std::to_string(kGsMinArcFactor) +
                      " * 2 * ell");
  std::vector<int> part_of(d.n(), -1);
  for (int i = 0; i < p.k(); ++i)
    for (int v : p.parts[i]) part_of[v] = i;
  std::vector<std::vector<std::pair<int, int>>> pair_arcs(pair_list.size());
  std::vector<std::vector<int>> which(p.k(), std::vector<int>(p.k(), -1));
  for (std::size_t idx = 0; idx < pair_list.size(); ++idx) {
    auto [i, j] = pair_list[idx];
    if (i < 0 || i >= p.k() || j < 0 || j >= p.k() || i == j)
      throw param_error("equalize_densities: bad pair index");
    which[i][j] = static_cast<int>(idx);
  }
  std::vector<std::pair<int, int>> keep;
  for (auto [u, v] : d.arcs()) {
    int pi = part_of[u], pj = part_of[v];
    int idx = (pi >= 0 && pj >= 0) ? which[pi][pj] : -1;
    if (idx >= 0)
      pair_arcs[idx].emplace_back(u, v);
    else
      keep.emplace_back(u, v);
  }
  Rng rng(derive_seed(seed, "equalize"));
  for (std::size_t idx = 0; idx < pair_list.size(); ++idx) {
    auto& arcs = pair_arcs[idx];
    if (static_cast<long long>(arcs.size()) < m_t)
      throw param_error("equalize_densities: pair (" + std::to_string(pair_list[idx].first) + "," +
                        std::to_string(pair_list[idx].second) + ") has only " +
                        std::to_string(arcs.size()) + " arcs, need " + std::to_string(m_t));
    auto chosen = rng.sample_indices(static_cast<int>(arcs.size()), static_cast<int>(m_t));
    for (int ci : chosen) keep.push_back(arcs[ci]);
  }
  return Digraph::from_arcs(d.n(), std::move(keep));
}

namespace {

RegularityDigraph build_r(const Digraph& d, const Partition& p, double delta,
                          const RegParams& params, bool parallel) {
  RegularityDigraph r;
  r.k = p.k();
  r.density.assign(r.k, std::vector<double>(r.k, -1.0));
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < r.k; ++i)
    for (int j = 0; j < r.k; ++j)
      if (i != j) pairs.emplace_back(i, j);
  auto job = [&](std::int64_t t) {
    auto [i, j] = pairs[t];
    RegParams local = params;
    local.seed = derive_seed(params.seed, "regularity-digraph-pair",
                             static_cast<std::uint64_t>(i) * r.k + j);
    auto verdict = is_regular_pair(d, p.parts[i], p.parts[j], local);
    if (verdict.regular && verdict.density >= delta) r.density[i][j] = verdict.density;
  };
  if (parallel)
    parallel_for(static_cast<std::int64_t>(pairs.size()), job);
  else
    serial_for(static_cast<std::int64_t>(pairs.size()), job);
  return r;
}

}  // namespace

RegularityDigraph build_regularity_digraph(const Digraph& d, const Partition& p, double delta,
                                           const RegParams& params) {
  return build_r(d, p, delta, params, true);
}

RegularityDigraph build_regularity_digraph_serial(const Digraph& d, const Partition& p, double delta,
                                                  const RegParams& params) {
  return build_r(d, p, delta, params, false);
}

ReducedCycleResult reduced_hamilton_cycle(const RegularityDigraph& r) {
  const int k = r.k;
  std::vector<char> alive(k, 1);
  std::vector<int> outd(k, 0), ind(k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (r.has_arc(i, j)) {
        ++outd[i];
        ++ind[j];
      }
  // Threshold k/2 refers to the original k throughout the peeling.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < k; ++i) {
      if (!alive[i]) continue;
      if (2 * outd[i] < k || 2 * ind[i] < k) {
        alive[i] = 0;
        changed = true;
        for (int j = 0; j < k; ++j) {
          if (alive[j] && r.has_arc(i, j)) --ind[j];
          if (alive[j] && r.has_arc(j, i)) --outd[j];
        }
      }
    }
  }
  std::vector<int> survivors;
  for (int i = 0; i < k; ++i)
    if (alive[i]) survivors.push_back(i);
  if (survivors.empty()) return {false, {}, "reduced digraph vanished"};

  std::vector<std::pair<int, int>> arcs;
  std::vector<int> local(k, -1);
  for (std::size_t i = 0; i < survivors.size(); ++i) local[survivors[i]] = static_cast<int>(i);
  for (int i : survivors)
    for (int j : survivors)
      if (r.has_arc(i, j)) arcs.emplace_back(local[i], local[j]);
  Digraph sub = Digraph::from_arcs(static_cast<int>(survivors.size()), std::move(arcs));
  ReducedCycleResult res;
  if (sub.n() < 2) return {false, {}, "reduced digraph vanished"};
  Cycle c = ghouila_houri_cycle(sub);  // min degrees >= k/2 >= |R'|/2 by construction
  res.ok = true;
  res.cycle.reserve(c.order.size());
  for (int v : c.order) res.cycle.push_back(survivors[v]);
  return res;
}

}  // namespace dires
