#include "dires/steps.hpp"

#include <algorithm>
#include <cmath>

namespace dires {

PartSlicedAdj build_part_sliced(const Digraph& d, const std::vector<int>& part_of, int r) {
  PartSlicedAdj a;
  a.n = d.n();
  a.r = r;
  const int buckets = r + 1;
  auto bucket = [&](int v) {
    int p = part_of[v];
    return p < 0 ? r : p;
  };
  a.out_off.assign(static_cast<std::size_t>(a.n) * buckets + 1, 0);
  a.in_off.assign(static_cast<std::size_t>(a.n) * buckets + 1, 0);
  for (int u = 0; u < a.n; ++u) {
    for (int v : d.out(u)) ++a.out_off[static_cast<std::size_t>(u) * buckets + bucket(v) + 1];
    for (int v : d.in(u)) ++a.in_off[static_cast<std::size_t>(u) * buckets + bucket(v) + 1];
  }
  for (std::size_t i = 1; i < a.out_off.size(); ++i) {
    a.out_off[i] += a.out_off[i - 1];
    a.in_off[i] += a.in_off[i - 1];
  }
  a.out_flat.resize(d.m());
  a.in_flat.resize(d.m());
  std::vector<std::int64_t> opos(a.out_off.begin(), a.out_off.end() - 1);
  std::vector<std::int64_t> ipos(a.in_off.begin(), a.in_off.end() - 1);
  for (int u = 0; u < a.n; ++u) {
    for (int v : d.out(u)) a.out_flat[opos[static_cast<std::size_t>(u) * buckets + bucket(v)]++] = v;
    for (int v : d.in(u)) a.in_flat[ipos[static_cast<std::size_t>(u) * buckets + bucket(v)]++] = v;
  }
  return a;
}

int free_out_degree(const HostView& hv, int u, int j, const std::vector<char>& forbidden) {
  int deg = 0;
  for (int v : hv.adj->out_slice(u, j)) deg += !forbidden[v];
  return deg;
}

int free_in_degree(const HostView& hv, int u, int j, const std::vector<char>& forbidden) {
  int deg = 0;
  for (int v : hv.adj->in_slice(u, j)) deg += !forbidden[v];
  return deg;
}

int free_part_size(const HostView& hv, int j, const std::vector<char>& forbidden) {
  int size = 0;
  for (int v : (*hv.parts)[j]) size += !forbidden[v];
  return size;
}

namespace {

bool nice_one_side(const HostView& hv, int deg, int free_side) {
  double lower = (1.0 - hv.eps_prime) * (1.0 - hv.eps) * hv.dens * free_side;
  // The chain q2 >= deg >= lower >= q1 is the definition; all three clauses
  // must hold (boundary inequalities are >=).
  return deg <= hv.q2 + 1e-9 && deg + 1e-9 >= lower && lower + 1e-9 >= hv.q1;
}

}  // namespace

NiceKind niceness(const HostView& hv, int u, const std::vector<char>& forbidden) {
  int s = (*hv.part_of)[u];
  if (s < 0) throw param_error("niceness: vertex lies outside every part");
  if (forbidden[u]) throw param_error("niceness: vertex is in the forbidden set");
  int nxt = hv.next_part(s), prv = hv.prev_part(s);
  bool fwd = nice_one_side(hv, free_out_degree(hv, u, nxt, forbidden),
                           free_part_size(hv, nxt, forbidden));
  bool bwd = nice_one_side(hv, free_in_degree(hv, u, prv, forbidden),
                           free_part_size(hv, prv, forbidden));
  if (fwd && bwd) return NiceKind::very_nice;
  if (fwd) return NiceKind::nice;
  if (bwd) return NiceKind::backwards_nice;
  return NiceKind::neither;
}

bool is_nice(const HostView& hv, int u, const std::vector<char>& forbidden) {
  auto k = niceness(hv, u, forbidden);
  return k == NiceKind::nice || k == NiceKind::very_nice;
}

bool is_backwards_nice(const HostView& hv, int u, const std::vector<char>& forbidden) {
  auto k = niceness(hv, u, forbidden);
  return k == NiceKind::backwards_nice || k == NiceKind::very_nice;
}

StepResult standard_forward_step(const HostView& hv, int x, const std::vector<char>& forbidden) {
  int s = (*hv.part_of)[x];
  int nxt = hv.next_part(s);
  for (int y : hv.adj->out_slice(x, nxt)) {
    if (forbidden[y]) continue;
    if (is_nice(hv, y, forbidden)) return {true, y, ""};
  }
  return {false, -1, "no nice out-neighbor in part " + std::to_string(nxt)};
}

StepResult standard_backward_step(const HostView& hv, int v0, const std::vector<char>& forbidden) {
  int s = (*hv.part_of)[v0];
  int prv = hv.prev_part(s);
  for (int y : hv.adj->in_slice(v0, prv)) {
    if (forbidden[y]) continue;
    if (is_backwards_nice(hv, y, forbidden)) return {true, y, ""};
  }
  return {false, -1, "no backwards-nice in-neighbor in part " + std::to_string(prv)};
}

StepResult random_forward_step(const HostView& hv, int x, const std::vector<char>& forbidden,
                               Rng& rng) {
  int s = (*hv.part_of)[x];
  int nxt = hv.next_part(s);
  std::vector<int> nice;
  for (int y : hv.adj->out_slice(x, nxt)) {
    if (forbidden[y]) continue;
    if (is_nice(hv, y, forbidden)) nice.push_back(y);
  }
  if (nice.empty()) return {false, -1, "no nice out-neighbor in part " + std::to_string(nxt)};
  return {true, nice[rng.below_int(static_cast<int>(nice.size()))], ""};
}

BigStepResult big_step_with_sets(const HostView& hv, int x, int v,
                                 const std::vector<char>& forbidden, const std::vector<char>& in_v,
                                 const std::vector<char>& in_in_v, const std::vector<char>& out_v,
                                 int j_exit) {
  BigStepResult res;
  int s = (*hv.part_of)[x];
  int s1 = hv.next_part(s), s2 = hv.shift_part(s, 2);
  // Exit chain first: v -> y4 -> y5 with y5 nice in part j_exit. The two
  // chains share no parts' constraints, so search them independently and then
  // make the entry chain avoid the exit picks.
  int y4 = -1, y5 = -1;
  for (int cand4 : hv.d->out(v)) {
    if (forbidden[cand4] || !out_v[cand4] || cand4 == x || cand4 == v) continue;
    for (int cand5 : hv.adj->out_slice(cand4, j_exit)) {
      if (forbidden[cand5] || cand5 == x || cand5 == v || cand5 == cand4) continue;
      if (!is_nice(hv, cand5, forbidden)) continue;
      y4 = cand4;
      y5 = cand5;
      break;
    }
    if (y4 >= 0) break;
  }
  if (y4 < 0) {
    res.first_empty = "y4/y5: no exit chain into a nice vertex of part " + std::to_string(j_exit);
    return res;
  }
  bool has_in = false;
  for (char c : in_v) has_in = has_in || c;
  if (!has_in) {
    res.first_empty = "y3: the free in-neighborhood of v is empty";
    return res;
  }
  bool seen_y1 = false, seen_y2 = false;
  for (int y1 : hv.adj->out_slice(x, s1)) {
    if (forbidden[y1] || y1 == v || y1 == y4 || y1 == y5) continue;
    seen_y1 = true;
    for (int y2 : hv.adj->out_slice(y1, s2)) {
      if (forbidden[y2] || !in_in_v[y2] || y2 == v || y2 == y4 || y2 == y5) continue;
      seen_y2 = true;
      for (int y3 : hv.d->out(y2)) {
        if (forbidden[y3] || !in_v[y3] || y3 == v || y3 == y4 || y3 == y5 || y3 == y1) continue;
        res.ok = true;
        res.y = {y1, y2, y3, y4, y5};
        return res;
      }
    }
  }
  res.first_empty = !seen_y1 ? "y1: no free out-neighbor in part " + std::to_string(s1)
                   : !seen_y2
                       ? "y2: out-neighborhood misses the in-in-neighborhood of v in part " +
                             std::to_string(s2)
                       : "y3: no arc into an in-neighbor of v";
  return res;
}

BigStepResult big_step(const HostView& hv, int x, int v, const std::vector<char>& forbidden) {
  const int n = hv.d->n();
  std::vector<char> in_v(n, 0), in_in_v(n, 0), out_v(n, 0);
  for (int z : hv.d->in(v))
    if (!forbidden[z]) in_v[z] = 1;
  for (int z = 0; z < n; ++z)
    if (in_v[z])
      for (int w : hv.d->in(z))
        if (!forbidden[w]) in_in_v[w] = 1;
  for (int z : hv.d->out(v))
    if (!forbidden[z]) out_v[z] = 1;
  // y3 must have a free in-neighbor available (the proof routes y2 through
  // the in-in-neighborhood), and the exit part needs ell/3 of the
  // out-out-neighborhood.
  std::vector<int> per_part(hv.r, 0);
  std::vector<char> out_out(n, 0);
  for (int z = 0; z < n; ++z)
    if (out_v[z])
      for (int w : hv.d->out(z))
        if (!forbidden[w] && !out_out[w]) {
          out_out[w] = 1;
          int pj = (*hv.part_of)[w];
          if (pj >= 0) ++per_part[pj];
        }
  int j_exit = -1;
  int s = (*hv.part_of)[x];
  for (int step = 1; step <= hv.r; ++step) {
    int j = hv.shift_part(s, step);
    if (3 * per_part[j] >= hv.ell) {
      j_exit = j;
      break;
    }
  }
  if (j_exit < 0) {
    BigStepResult res;
    res.first_empty = "y5: no part holds ell/3 of the out-out-neighborhood of v";
    return res;
  }
  return big_step_with_sets(hv, x, v, forbidden, in_v, in_in_v, out_v, j_exit);
}

ClosingStepResult closing_step(const HostView& hv, int x, int z, const std::vector<char>& forbidden) {
  ClosingStepResult res;
  int s = (*hv.part_of)[x];
  int s1 = hv.next_part(s), s2 = hv.shift_part(s, 2), s3 = hv.shift_part(s, 3);
  if ((*hv.part_of)[z] != hv.shift_part(s, 4)) {
    res.failure = "target is not four parts ahead of x";
    return res;
  }
  std::vector<char> z3_ok(hv.d->n(), 0);
  int z3_count = 0;
  for (int y3 : hv.adj->in_slice(z, s3))
    if (!forbidden[y3] && y3 != x) {
      z3_ok[y3] = 1;
      ++z3_count;
    }
  if (z3_count < hv.q1) {
    res.failure = "deg-(z, V_{s+3} \\ X) below q1";
    return res;
  }
  bool reached_midpoint = false;
  for (int y1 : hv.adj->out_slice(x, s1)) {
    if (forbidden[y1] || y1 == z) continue;
    for (int y2 : hv.adj->out_slice(y1, s2)) {
      if (forbidden[y2] || y2 == z) continue;
      reached_midpoint = true;
      for (int y3 : hv.adj->out_slice(y2, s3)) {
        if (!z3_ok[y3]) continue;
        res.ok = true;
        res.y = {y1, y2, y3};
        return res;
      }
    }
  }
  res.failure = reached_midpoint
                    ? "midpoint intersection empty: no V_{s+2} vertex reaches an in-neighbor of z"
                    : "midpoint intersection empty: N+(Y1, V_{s+2} \\ X) starved";
  return res;
}

}  // namespace dires
