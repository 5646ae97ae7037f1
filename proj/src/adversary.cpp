#include "dires/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dires/rng.hpp"

namespace dires {

namespace {

std::vector<int> alpha_budgets(const Digraph& d, double alpha, bool out_side) {
  std::vector<int> b(d.n());
  for (int u = 0; u < d.n(); ++u) {
    int deg = out_side ? d.out_degree(u) : d.in_degree(u);
    b[u] = static_cast<int>(std::floor((0.5 - alpha) * deg + 1e-12));
  }
  return b;
}

// Deletes candidate arcs in the given order while both endpoint budgets last.
AdversaryOutcome apply_deletions(const Digraph& d, const std::vector<std::pair<int, int>>& candidates,
                                 std::vector<int> budget_out, std::vector<int> budget_in) {
  int n = d.n();
  AdversaryOutcome out;
  out.deleted_out.assign(n, 0);
  out.deleted_in.assign(n, 0);
  std::vector<std::pair<int, int>> removed;
  removed.reserve(candidates.size());
  for (auto [u, v] : candidates) {
    if (out.deleted_out[u] < budget_out[u] && out.deleted_in[v] < budget_in[v]) {
      ++out.deleted_out[u];
      ++out.deleted_in[v];
      removed.emplace_back(u, v);
    }
  }
  std::sort(removed.begin(), removed.end());
  std::vector<std::pair<int, int>> keep;
  keep.reserve(d.m() - static_cast<long long>(removed.size()));
  std::size_t ri = 0;
  for (auto arc : d.arcs()) {
    if (ri < removed.size() && removed[ri] == arc) {
      ++ri;
      continue;
    }
    keep.push_back(arc);
  }
  out.surviving = Digraph::from_arcs(n, std::move(keep));
  out.frac_out.assign(n, 0.0);
  out.frac_in.assign(n, 0.0);
  for (int u = 0; u < n; ++u) {
    if (d.out_degree(u) > 0) out.frac_out[u] = static_cast<double>(out.deleted_out[u]) / d.out_degree(u);
    if (d.in_degree(u) > 0) out.frac_in[u] = static_cast<double>(out.deleted_in[u]) / d.in_degree(u);
  }
  return out;
}

Bipartition draw_balanced_split(int n, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "bipartition-split"));
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  rng.shuffle(perm);
  int half = (n + 1) / 2;
  Bipartition split;
  split.first.assign(perm.begin(), perm.begin() + half);
  split.second.assign(perm.begin() + half, perm.end());
  std::sort(split.first.begin(), split.first.end());
  std::sort(split.second.begin(), split.second.end());
  return split;
}

std::vector<std::pair<int, int>> cut_arcs(const Digraph& d, const Bipartition& split) {
  std::vector<char> in_v1(d.n(), 0);
  for (int v : split.first) in_v1[v] = 1;
  std::vector<std::pair<int, int>> arcs;
  for (int u : split.first)
    for (int v : d.out(u))
      if (!in_v1[v]) arcs.emplace_back(u, v);
  return arcs;
}

void check_split(const Digraph& d, const Bipartition& split) {
  if (std::llabs(static_cast<long long>(split.first.size()) - static_cast<long long>(split.second.size())) > 1)
    throw param_error("bipartition_adversary: part sizes differ by more than 1");
  std::vector<char> seen(d.n(), 0);
  std::size_t total = split.first.size() + split.second.size();
  if (total != static_cast<std::size_t>(d.n()))
    throw param_error("bipartition_adversary: split does not cover V");
  for (const auto* part : {&split.first, &split.second})
    for (int v : *part) {
      if (v < 0 || v >= d.n() || seen[v]) throw param_error("bipartition_adversary: invalid split");
      seen[v] = 1;
    }
}

}  // namespace

AdversaryOutcome bipartition_adversary(const Digraph& d, const std::optional<Bipartition>& split_in,
                                       std::uint64_t seed) {
  Bipartition split = split_in ? *split_in : draw_balanced_split(d.n(), seed);
  check_split(d, split);
  const int unlimited = std::numeric_limits<int>::max();
  auto out = apply_deletions(d, cut_arcs(d, split), std::vector<int>(d.n(), unlimited),
                             std::vector<int>(d.n(), unlimited));
  out.split = split;
  return out;
}

AdversaryOutcome random_budget_adversary(const Digraph& d, double alpha, std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha <= 0.5)) throw param_error("random_budget_adversary: alpha must be in (0, 1/2]");
  auto arcs = d.arcs();
  Rng rng(derive_seed(seed, "random-budget-order"));
  rng.shuffle(arcs);
  auto out = apply_deletions(d, arcs, alpha_budgets(d, alpha, true), alpha_budgets(d, alpha, false));
  out.alpha = alpha;
  return out;
}

AdversaryOutcome greedy_cut_adversary(const Digraph& d, double alpha, std::uint64_t seed) {
  if (!(alpha >= 0.0 && alpha <= 0.5)) throw param_error("greedy_cut_adversary: alpha must be in [0, 1/2]");
  Bipartition split = draw_balanced_split(d.n(), seed);
  auto arcs = cut_arcs(d, split);
  Rng rng(derive_seed(seed, "greedy-cut-order"));
  rng.shuffle(arcs);
  auto out = apply_deletions(d, arcs, alpha_budgets(d, alpha, true), alpha_budgets(d, alpha, false));
  out.alpha = alpha;
  out.split = split;
  return out;
}

AdversaryOutcome random_level_adversary(const Digraph& d, int level, std::uint64_t seed) {
  if (level < 0) throw param_error("random_level_adversary: negative level");
  auto arcs = d.arcs();
  Rng rng(derive_seed(seed, "random-level-order"));
  rng.shuffle(arcs);
  return apply_deletions(d, arcs, std::vector<int>(d.n(), level), std::vector<int>(d.n(), level));
}

AdversaryOutcome cut_level_adversary(const Digraph& d, int level, std::uint64_t seed) {
  if (level < 0) throw param_error("cut_level_adversary: negative level");
  Bipartition split = draw_balanced_split(d.n(), seed);
  auto arcs = cut_arcs(d, split);
  Rng rng(derive_seed(seed, "cut-level-order"));
  rng.shuffle(arcs);
  auto out = apply_deletions(d, arcs, std::vector<int>(d.n(), level), std::vector<int>(d.n(), level));
  out.split = split;
  return out;
}

BudgetCheck verify_budget(const Digraph& original, const AdversaryOutcome& outcome, double alpha) {
  for (int u = 0; u < original.n(); ++u) {
    int bo = static_cast<int>(std::floor((0.5 - alpha) * original.out_degree(u) + 1e-12));
    int bi = static_cast<int>(std::floor((0.5 - alpha) * original.in_degree(u) + 1e-12));
    if (outcome.deleted_out[u] > bo || outcome.deleted_in[u] > bi) return {false, u};
  }
  return {true, -1};
}

}  // namespace dires
