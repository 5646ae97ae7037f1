#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dires/error.hpp"

namespace dires {

// Immutable simple digraph on vertices 0..n-1. No self-loops, no parallel
// arcs. Adjacency is stored in both directions so in-neighborhood queries
// cost O(deg); each list is sorted ascending.
class Digraph {
 public:
  Digraph() = default;

  // Validates: vertex range, no self-loops, no duplicate arcs.
  static Digraph from_arcs(int n, std::vector<std::pair<int, int>> arcs);

  // D(n,p): every ordered pair (u,v), u != v, becomes an arc independently
  // with probability p. Pairs are visited in ascending (u,v) order so the
  // coin-flip sequence — and hence the graph — is a pure function of
  // (n, p, seed) on every platform.
  static Digraph random(int n, double p, std::uint64_t seed);

  static Digraph complete(int n);
  static Digraph empty(int n);

  int n() const { return n_; }
  long long m() const { return m_; }

  std::span<const int> out(int u) const {
    return {out_flat_.data() + out_off_[u], out_flat_.data() + out_off_[u + 1]};
  }
  std::span<const int> in(int u) const {
    return {in_flat_.data() + in_off_[u], in_flat_.data() + in_off_[u + 1]};
  }
  int out_degree(int u) const { return static_cast<int>(out_off_[u + 1] - out_off_[u]); }
  int in_degree(int u) const { return static_cast<int>(in_off_[u + 1] - in_off_[u]); }

  bool has_arc(int u, int v) const;

  std::vector<std::pair<int, int>> arcs() const;  // ascending

  bool operator==(const Digraph& other) const {
    return n_ == other.n_ && out_off_ == other.out_off_ && out_flat_ == other.out_flat_;
  }

 private:
  int n_ = 0;
  long long m_ = 0;
  std::vector<std::int64_t> out_off_, in_off_;
  std::vector<int> out_flat_, in_flat_;

  static Digraph from_sorted_out_lists(int n, const std::vector<std::vector<int>>& out_lists);
  friend Digraph induced_subdigraph(const Digraph&, const std::vector<int>&);
};

struct DegreeSummary {
  int min_out = 0, min_in = 0, max_out = 0, max_in = 0;
  std::vector<int> out_deg, in_deg;
};

DegreeSummary degree_stats(const Digraph& d);

// Arcs from A to B only, divided by |A||B|. A and B must be nonempty,
// disjoint subsets of V.
double induced_density(const Digraph& d, std::span<const int> a, std::span<const int> b);
long long count_arcs_between(const Digraph& d, std::span<const int> a, std::span<const int> b);

// Subgraph induced on `keep` (ascending, distinct); vertex i of the result is
// keep[i].
Digraph induced_subdigraph(const Digraph& d, const std::vector<int>& keep);

// Text format: line 1 "digraph <n> <m>", then exactly m lines "<u> <v>"
// sorted ascending. Round-trip identity: read(write(D)) == D.
Digraph read_digraph(const std::string& path);
void write_digraph(const Digraph& d, const std::string& path);
Digraph read_digraph_text(const std::string& text);
std::string write_digraph_text(const Digraph& d);

}  // namespace dires
