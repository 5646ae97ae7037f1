// Independent test oracles. These deliberately avoid the library's solver
// code paths: the permutation oracle enumerates cyclic orders, the subset
// enumerator walks all admissible subset pairs recursively, and the matching
// oracle is a small max-flow.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "dires/digraph.hpp"

namespace oracle {

// Hamiltonicity by enumeration of all cyclic vertex orders (fix vertex 0).
inline bool hamiltonian_by_permutations(const dires::Digraph& d) {
  int n = d.n();
  if (n < 2) return false;
  std::vector<int> rest(n - 1);
  std::iota(rest.begin(), rest.end(), 1);
  do {
    bool ok = d.has_arc(0, rest[0]) && d.has_arc(rest.back(), 0);
    for (std::size_t i = 0; ok && i + 1 < rest.size(); ++i) ok = d.has_arc(rest[i], rest[i + 1]);
    if (ok) return true;
  } while (std::next_permutation(rest.begin(), rest.end()));
  return false;
}

// Exact eps-regularity with scale: enumerates every subset pair with
// |X| >= max(1, eps|A|), |Y| >= max(1, eps|B|). Independent of the library's
// bitmask walk: plain index recursion and a direct arc count.
inline bool regular_by_enumeration(const dires::Digraph& d, const std::vector<int>& a,
                                   const std::vector<int>& b, double eps, double scale) {
  long long e_ab = 0;
  for (int u : a)
    for (int v : b) e_ab += d.has_arc(u, v);
  double dens = static_cast<double>(e_ab) / (a.size() * b.size());
  double tol = eps * (scale > 0 ? scale : dens);
  int min_x = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(eps * a.size() - 1e-9)));
  int min_y = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(eps * b.size() - 1e-9)));

  std::vector<std::vector<int>> xs, ys;
  std::vector<int> cur;
  std::function<void(std::size_t, const std::vector<int>&, int, std::vector<std::vector<int>>&)>
      gen = [&](std::size_t i, const std::vector<int>& base, int min_size,
                std::vector<std::vector<int>>& out) {
        if (i == base.size()) {
          if (static_cast<int>(cur.size()) >= min_size) out.push_back(cur);
          return;
        }
        gen(i + 1, base, min_size, out);
        cur.push_back(base[i]);
        gen(i + 1, base, min_size, out);
        cur.pop_back();
      };
  gen(0, a, min_x, xs);
  gen(0, b, min_y, ys);
  for (const auto& x : xs)
    for (const auto& y : ys) {
      long long e = 0;
      for (int u : x)
        for (int v : y) e += d.has_arc(u, v);
      double dev = std::abs(static_cast<double>(e) / (x.size() * y.size()) - dens);
      if (dev > tol + 1e-12) return false;
    }
  return true;
}

// Maximum bipartite matching size via augmenting BFS/DFS flows.
inline int matching_by_flow(int n_left, int n_right, const std::vector<std::vector<int>>& adj) {
  // simple Hopcroft-free Kuhn on shuffled-free deterministic order is fine as
  // an oracle, but use an actual flow formulation for independence
  int n = n_left + n_right + 2;
  int src = n - 2, dst = n - 1;
  std::vector<std::vector<int>> cap(n, std::vector<int>(n, 0));
  for (int a = 0; a < n_left; ++a) cap[src][a] = 1;
  for (int b = 0; b < n_right; ++b) cap[n_left + b][dst] = 1;
  for (int a = 0; a < n_left; ++a)
    for (int b : adj[a]) cap[a][n_left + b] = 1;
  int flow = 0;
  for (;;) {
    std::vector<int> parent(n, -1);
    parent[src] = src;
    std::vector<int> queue{src};
    for (std::size_t qi = 0; qi < queue.size() && parent[dst] < 0; ++qi) {
      int u = queue[qi];
      for (int v = 0; v < n; ++v)
        if (parent[v] < 0 && cap[u][v] > 0) {
          parent[v] = u;
          queue.push_back(v);
        }
    }
    if (parent[dst] < 0) break;
    for (int v = dst; v != src; v = parent[v]) {
      cap[parent[v]][v] -= 1;
      cap[v][parent[v]] += 1;
    }
    ++flow;
  }
  return flow;
}

}  // namespace oracle
