#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dires/digraph.hpp"
#include "dires/rng.hpp"

namespace dires {

// Adjacency of one digraph re-grouped by part: the out/in neighbors of u that
// lie in part j form a contiguous sorted slice. Bucket r holds vertices
// outside every part.
struct PartSlicedAdj {
  int n = 0, r = 0;
  std::vector<std::int64_t> out_off, in_off;  // n*(r+1)+1 offsets
  std::vector<int> out_flat, in_flat;

  std::span<const int> out_slice(int u, int j) const {
    std::size_t base = static_cast<std::size_t>(u) * (r + 1) + j;
    return {out_flat.data() + out_off[base], out_flat.data() + out_off[base + 1]};
  }
  std::span<const int> in_slice(int u, int j) const {
    std::size_t base = static_cast<std::size_t>(u) * (r + 1) + j;
    return {in_flat.data() + in_off[base], in_flat.data() + in_off[base + 1]};
  }
  int out_deg(int u, int j) const { return static_cast<int>(out_slice(u, j).size()); }
  int in_deg(int u, int j) const { return static_cast<int>(in_slice(u, j).size()); }
};

PartSlicedAdj build_part_sliced(const Digraph& d, const std::vector<int>& part_of, int r);

// Everything the step primitives need to know about the host: the deleted
// digraph, the part cycle V_0..V_{r-1} (equal size ell, indices cyclic), and
// the niceness thresholds. `dens` is the density scale of the niceness
// definition (the pipeline passes delta = xi*p).
struct HostView {
  const Digraph* d = nullptr;
  const std::vector<std::vector<int>>* parts = nullptr;
  const std::vector<int>* part_of = nullptr;  // -1 = outside every part
  const PartSlicedAdj* adj = nullptr;
  int r = 0, ell = 0;
  double dens = 0.0, eps = 0.0, eps_prime = 0.0, q1 = 0.0, q2 = 0.0;

  int next_part(int s) const { return s + 1 < r ? s + 1 : 0; }
  int prev_part(int s) const { return s > 0 ? s - 1 : r - 1; }
  int shift_part(int s, int by) const { return ((s + by) % r + r) % r; }
};

enum class NiceKind { very_nice, nice, backwards_nice, neither };

// Counts out-neighbors of u in part j avoiding X.
int free_out_degree(const HostView& hv, int u, int j, const std::vector<char>& forbidden);
int free_in_degree(const HostView& hv, int u, int j, const std::vector<char>& forbidden);
int free_part_size(const HostView& hv, int j, const std::vector<char>& forbidden);

// nice: q2 >= deg+(u, V_{s+1}\X) >= (1-eps')(1-eps) dens |V_{s+1}\X| >= q1,
// with the in/previous-part mirror for backwards nice. u must lie in a part
// and outside X.
NiceKind niceness(const HostView& hv, int u, const std::vector<char>& forbidden);
bool is_nice(const HostView& hv, int u, const std::vector<char>& forbidden);
bool is_backwards_nice(const HostView& hv, int u, const std::vector<char>& forbidden);

struct StepResult {
  bool ok = false;
  int vertex = -1;
  std::string failure;
};

// Lowest-index nice out-neighbor of x in the next part, avoiding X.
StepResult standard_forward_step(const HostView& hv, int x, const std::vector<char>& forbidden);
// Lowest-index backwards-nice in-neighbor of v0 in the previous part.
StepResult standard_backward_step(const HostView& hv, int v0, const std::vector<char>& forbidden);
// Uniform over the nice out-neighbors of x in the next part, avoiding X.
StepResult random_forward_step(const HostView& hv, int x, const std::vector<char>& forbidden,
                               Rng& rng);

struct BigStepResult {
  bool ok = false;
  // x -> y[0] -> y[1] -> y[2] -> v -> y[3] -> y[4]; y[4] ends nice.
  std::array<int, 5> y{-1, -1, -1, -1, -1};
  std::string first_empty;  // which choice set starved (y1..y5)
};

// Big step from x via v: the entry chain runs through V_{s+1}, V_{s+2} into
// an in-in-neighbor of v; the exit chain leaves v through out-neighbors into
// a nice vertex of part j_exit. in_v / in_in_v flag N^-(v, V\X) and
// N^-(N^-(v), V\X); out_v flags N^+(v, V\X).
BigStepResult big_step_with_sets(const HostView& hv, int x, int v,
                                 const std::vector<char>& forbidden, const std::vector<char>& in_v,
                                 const std::vector<char>& in_in_v, const std::vector<char>& out_v,
                                 int j_exit);

// Convenience wrapper that computes the neighborhood sets and picks the exit
// part itself (first part holding at least ell/3 of the out-out-neighborhood).
BigStepResult big_step(const HostView& hv, int x, int v, const std::vector<char>& forbidden);

struct ClosingStepResult {
  bool ok = false;
  std::array<int, 3> y{-1, -1, -1};  // x -> y1 -> y2 -> y3 -> z
  std::string failure;
};

// Closing step from x in V_s to z in V_{s+4}: four arcs through the three
// intermediate parts, avoiding X.
ClosingStepResult closing_step(const HostView& hv, int x, int z, const std::vector<char>& forbidden);

}  // namespace dires
