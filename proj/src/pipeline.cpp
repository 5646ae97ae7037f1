#include "dires/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <sstream>

#include "dires/adversary.hpp"
#include "dires/parallel.hpp"

namespace dires {

std::string format_step_jsonl(const StepRecord& r) {
  std::ostringstream os;
  os << "{\"stage\":" << r.stage << ",\"step_kind\":\"" << r.kind << "\",\"from\":" << r.from
     << ",\"to\":" << r.to << ",\"part_index\":" << r.part_index << ",\"path_len\":" << r.path_len
     << "}";
  return os.str();
}

struct PipelineRun::Impl {
  const Digraph& d;        // original D
  const Digraph& dpr;      // deleted D'
  std::vector<std::vector<int>> parts;
  PipelineConfig cfg;
  DerivedParams dp;
  double p;
  std::vector<StepRecord>* trace;

  int n = 0, r = 0;
  std::vector<int> part_of, pos_in_part;
  PartSlicedAdj adj;
  HostView hv;
  BadCensus census;
  Rng rng;

  // path state: path.front() = v0 (anchor), path.back() = frontier
  std::deque<int> path;
  std::vector<char> on_path, base_bad, in_a0, forb, in_l1;
  std::vector<int> a0;
  std::vector<int> cnt_free;          // |V_i \ forb|
  std::vector<int> path_per_part;     // |V_i cap P|
  std::vector<long long> cnt_part;    // deg_{D'}(u, V_i cap L1), n*r
  std::vector<long long> cnt_outside; // deg_{D'}(u, outside cap L1)
  std::vector<char> danger_flag;
  std::deque<int> danger_queue;
  int base_part = 0;  // part of v0 after stage 1 ("V_1")
  int stage_done = 0;
  StageFailure fail;
  bool failed = false;
  Cycle final_cycle;
  bool stage1_assertions_ok = true;
  long long stage2_step_count = 0;
  long long min_absorbing = -1;
  std::vector<std::string> warnings;
  std::vector<int> stage2_visits;

  Impl(const Digraph& d_in, const Digraph& dpr_in, std::vector<std::vector<int>> parts_in,
       const PipelineConfig& cfg_in, double p_in, std::uint64_t seed,
       std::vector<StepRecord>* trace_in)
      : d(d_in),
        dpr(dpr_in),
        parts(std::move(parts_in)),
        cfg(cfg_in),
        p(p_in),
        trace(trace_in),
        rng(derive_seed(seed, "pipeline-steps")) {
    cfg.validate();
    n = dpr.n();
    r = static_cast<int>(parts.size());
    if (r < 5) throw param_error("pipeline: need a part cycle of length >= 5");
    int ell = static_cast<int>(parts[0].size());
    for (auto& part : parts)
      if (static_cast<int>(part.size()) != ell) throw param_error("pipeline: unequal part sizes");
    dp = derive_params(cfg, p, ell, r, n);
    part_of.assign(n, -1);
    pos_in_part.assign(n, -1);
    for (int i = 0; i < r; ++i)
      for (std::size_t j = 0; j < parts[i].size(); ++j) {
        part_of[parts[i][j]] = i;
        pos_in_part[parts[i][j]] = static_cast<int>(j);
      }
    adj = build_part_sliced(dpr, part_of, r);
    hv.d = &dpr;
    hv.parts = &parts;
    hv.part_of = &part_of;
    hv.adj = &adj;
    hv.r = r;
    hv.ell = ell;
    hv.dens = dp.delta;
    hv.eps = cfg.eps;
    hv.eps_prime = cfg.eps_prime;
    hv.q1 = dp.q1;
    hv.q2 = dp.q2;

    census = compute_bad_census(d, dpr, parts, cfg, dp, derive_seed(seed, "pipeline-census"));

    on_path.assign(n, 0);
    base_bad.assign(n, 0);
    in_a0.assign(n, 0);
    forb.assign(n, 0);
    in_l1.assign(n, 0);
    cnt_part.assign(static_cast<std::size_t>(n) * r, 0);
    cnt_outside.assign(n, 0);
    danger_flag.assign(n, 0);
    cnt_free.assign(r, 0);
    path_per_part.assign(r, 0);
    stage2_visits.assign(r, 0);
    for (int i = 0; i < r; ++i) cnt_free[i] = ell;
    for (int u = 0; u < n; ++u) {
      bool bad = census.atypical[u] || census.type1_fwd[u] || census.type1_bwd[u] || census.type2[u];
      if (bad) {
        base_bad[u] = 1;
        enter_l1(u);
        refresh_forb(u);
      }
    }
  }

  void record(int stage, const char* kind, int from, int to) {
    if (!trace) return;
    trace->push_back({stage, kind, from, to, to >= 0 ? part_of[to] : -1,
                      static_cast<int>(path.size())});
  }

  void set_failure(int stage, std::string hypothesis, std::string detail, long long iter = -1) {
    failed = true;
    fail = {stage, std::move(hypothesis), std::move(detail), iter};
  }

  void refresh_forb(int v) {
    char now = base_bad[v] | on_path[v] | in_a0[v];
    if (now == forb[v]) return;
    forb[v] = now;
    int pt = part_of[v];
    if (pt >= 0) cnt_free[pt] += now ? -1 : 1;
  }

  // v becomes a member of L1 = B ∪ T1 ∪ T2 ∪ P1: bump the dangerous-vertex
  // counters of its neighbors.
  void enter_l1(int v) {
    if (in_l1[v]) return;
    in_l1[v] = 1;
    int j = part_of[v];
    auto bump = [&](int u) {
      if (j >= 0) {
        long long& c = cnt_part[static_cast<std::size_t>(u) * r + j];
        ++c;
        if (!on_path[u]) {
          if (c >= dp.dangerous_part && !danger_flag[u]) {
            danger_flag[u] = 1;
            danger_queue.push_back(u);
          }
          if (stage_done < 1 && c > 110.0 * cfg.rho * dp.ell * p && stage1_assertions_ok) {
            stage1_assertions_ok = false;
            set_failure(1, "additional-conditions-b",
                        "deg(u, V_s cap L1) exceeded 110*rho*ell*p at u=" + std::to_string(u) +
                            ", s=" + std::to_string(j));
          }
        }
      } else {
        long long& c = cnt_outside[u];
        ++c;
        if (!on_path[u]) {
          if (c >= dp.dangerous_outside && !danger_flag[u]) {
            danger_flag[u] = 1;
            danger_queue.push_back(u);
          }
          if (stage_done < 1 && c > n * p / 10.0 && stage1_assertions_ok) {
            stage1_assertions_ok = false;
            set_failure(1, "additional-conditions-c",
                        "deg(u, V0 cap L1) exceeded n*p/10 at u=" + std::to_string(u));
          }
        }
      }
    };
    for (int u : dpr.in(v)) bump(u);
    for (int u : dpr.out(v)) bump(u);
  }

  void append_path(int v, int stage, const char* kind, int from) {
    on_path[v] = 1;
    int pt = part_of[v];
    if (pt >= 0) ++path_per_part[pt];
    enter_l1(v);
    refresh_forb(v);
    record(stage, kind, from, v);
  }

  bool nice_ignoring_self(int u) {
    char saved = forb[u];
    forb[u] = 0;
    bool ok = is_nice(hv, u, forb);
    forb[u] = saved;
    return ok;
  }

  // --- stage 1 -------------------------------------------------------------

  bool refresh_a0(int v0) {
    for (int v : a0) {
      in_a0[v] = 0;
      refresh_forb(v);
    }
    a0.clear();
    int want = dp.a0_size;
    int prev = hv.prev_part(part_of[v0]);
    for (int y : adj.in_slice(v0, prev)) {
      if (forb[y]) continue;
      a0.push_back(y);
      if (static_cast<int>(a0.size()) == want) break;
    }
    if (static_cast<int>(a0.size()) < want) return false;
    for (int v : a0) {
      in_a0[v] = 1;
      refresh_forb(v);
    }
    return true;
  }

  // big-step neighborhood sets of the absorption target v, within V \ forb
  struct TargetSets {
    std::vector<char> in_v, in_in_v, out_v;
    std::vector<int> in_in_per_part, out_out_per_part;
  };

  TargetSets target_sets(int v) {
    TargetSets ts;
    ts.in_v.assign(n, 0);
    ts.in_in_v.assign(n, 0);
    ts.out_v.assign(n, 0);
    ts.in_in_per_part.assign(r, 0);
    ts.out_out_per_part.assign(r, 0);
    for (int z : dpr.in(v))
      if (!forb[z]) ts.in_v[z] = 1;
    for (int z : dpr.in(v)) {
      if (!ts.in_v[z]) continue;
      for (int w : dpr.in(z))
        if (!forb[w] && !ts.in_in_v[w]) {
          ts.in_in_v[w] = 1;
          int pt = part_of[w];
          if (pt >= 0) ++ts.in_in_per_part[pt];
        }
    }
    std::vector<char> out_out(n, 0);
    for (int z : dpr.out(v))
      if (!forb[z]) ts.out_v[z] = 1;
    for (int z : dpr.out(v)) {
      if (!ts.out_v[z]) continue;
      for (int w : dpr.out(z))
        if (!forb[w] && !out_out[w]) {
          out_out[w] = 1;
          int pt = part_of[w];
          if (pt >= 0) ++ts.out_out_per_part[pt];
        }
    }
    return ts;
  }

  // nearest part (cyclically ahead of `from`) whose count reaches ell/3
  int nearest_part(const std::vector<int>& per_part, int from) {
    for (int step = 0; step < r; ++step) {
      int j = hv.shift_part(from, step);
      if (3 * per_part[j] >= dp.ell) return j;
    }
    return -1;
  }

  bool add_one(int v, long long iteration) {
    if (in_a0[v]) {
      // Algorithm 2, lines 1-3: move the anchor one part back (with respect
      // to L1, so the old reserve is claimable) and draw a fresh reserve.
      for (int w : a0) {
        in_a0[w] = 0;
        refresh_forb(w);
      }
      a0.clear();
      int v0 = path.front();
      auto back = standard_backward_step(hv, v0, forb);
      if (!back.ok) {
        set_failure(1, "steps-exist-backward", back.failure, iteration);
        return false;
      }
      path.push_front(back.vertex);
      append_path(back.vertex, 1, "backward", v0);
      if (!refresh_a0(back.vertex)) {
        set_failure(1, "a0-refresh", "fewer than lambda*ell*p free in-neighbors", iteration);
        return false;
      }
    }

    auto ts = target_sets(v);
    int x = path.back();
    int j1 = nearest_part(ts.in_in_per_part, hv.shift_part(part_of[x], 2));
    if (j1 < 0) {
      set_failure(1, "add-inneighborhood",
                  "no part holds ell/3 of the in-in-neighborhood of v=" + std::to_string(v),
                  iteration);
      return false;
    }
    int j2 = nearest_part(ts.out_out_per_part, j1);
    if (j2 < 0) {
      set_failure(1, "add-outneighborhood",
                  "no part holds ell/3 of the out-out-neighborhood of v=" + std::to_string(v),
                  iteration);
      return false;
    }

    std::vector<int> adds_per_part(r, 0);
    int adds_outside = 0;
    auto count_add = [&](int w) {
      int pt = part_of[w];
      if (pt >= 0)
        ++adds_per_part[pt];
      else
        ++adds_outside;
    };

    // walk to V_{j1 - 2}
    int guard = 0;
    while (hv.shift_part(part_of[path.back()], 2) != j1) {
      auto step = standard_forward_step(hv, path.back(), forb);
      if (!step.ok) {
        set_failure(1, "steps-exist-forward", step.failure, iteration);
        return false;
      }
      int from = path.back();
      path.push_back(step.vertex);
      append_path(step.vertex, 1, "forward", from);
      count_add(step.vertex);
      if (++guard > r + 1) {
        set_failure(1, "add-walk", "forward walk failed to reach the target part", iteration);
        return false;
      }
    }

    auto big = big_step_with_sets(hv, path.back(), v, forb, ts.in_v, ts.in_in_v, ts.out_v, j2);
    if (!big.ok) {
      set_failure(1, "big-step", big.first_empty, iteration);
      return false;
    }
    int from = path.back();
    const int chain[6] = {big.y[0], big.y[1], big.y[2], v, big.y[3], big.y[4]};
    for (int w : chain) {
      path.push_back(w);
      append_path(w, 1, "big", from);
      count_add(w);
      from = w;
    }
    // each ADD call may enlarge any |P1 cap V_i| by at most 8 and the
    // outside intersection by at most 3
    for (int i = 0; i < r; ++i)
      if (adds_per_part[i] > 8) {
        stage1_assertions_ok = false;
        set_failure(1, "claim-at-most-8", "ADD enlarged part " + std::to_string(i) + " by " +
                                              std::to_string(adds_per_part[i]),
                    iteration);
        return false;
      }
    if (adds_outside > 3) {
      stage1_assertions_ok = false;
      set_failure(1, "claim-at-most-8",
                  "ADD enlarged the outside intersection by " + std::to_string(adds_outside),
                  iteration);
      return false;
    }
    return true;
  }

  bool stage1() {
    if (failed) return false;
    // anchor: first very nice vertex of V_0 w.r.t. L1
    int v0 = -1;
    for (int u : parts[0]) {
      if (forb[u]) continue;
      if (niceness(hv, u, forb) == NiceKind::very_nice) {
        v0 = u;
        break;
      }
    }
    if (v0 < 0) {
      set_failure(1, "very-nice-anchor", "no very nice vertex in V_1 w.r.t. L1");
      return false;
    }
    path.push_back(v0);
    append_path(v0, 1, "anchor", -1);
    if (!refresh_a0(v0)) {
      set_failure(1, "a0-init", "fewer than lambda*ell*p free in-neighbors of the anchor");
      return false;
    }

    // absorb queue: dangerous vertices first, then (B ∪ T2) \ P1
    std::vector<int> problematic;
    for (int u = 0; u < n; ++u)
      if (census.atypical[u] || census.type2[u]) problematic.push_back(u);
    std::size_t next_problem = 0;
    long long iteration = 0;
    const double part_cap = 20.0 * cfg.rho * dp.ell;
    for (;;) {
      int v = -1;
      while (!danger_queue.empty()) {
        int u = danger_queue.front();
        danger_queue.pop_front();
        if (!on_path[u]) {
          v = u;
          break;
        }
      }
      if (v < 0) {
        while (next_problem < problematic.size() && on_path[problematic[next_problem]])
          ++next_problem;
        if (next_problem < problematic.size()) v = problematic[next_problem];
      }
      if (v < 0) break;
      ++iteration;
      if (!add_one(v, iteration)) return false;
      for (int i = 0; i < r; ++i)
        if (path_per_part[i] > part_cap) {
          stage1_assertions_ok = false;
          set_failure(1, "additional-conditions-a",
                      "|V_s cap P1| exceeded 20*rho*ell at s=" + std::to_string(i), iteration);
          return false;
        }
      if (failed) return false;  // (b)/(c) violations surface via enter_l1
    }

    base_part = part_of[path.front()];

    // Stage-1 postconditions.
    for (int u = 0; u < n; ++u)
      if ((census.atypical[u] || census.type2[u]) && !on_path[u]) {
        set_failure(1, "summary-1", "problematic vertex left outside P1");
        return false;
      }
    int v0_now = path.front();
    int prev = hv.prev_part(base_part);
    for (int w : a0)
      if (part_of[w] != prev || base_bad[w] || on_path[w] || !dpr.has_arc(w, v0_now)) {
        set_failure(1, "summary-2", "A0 is not a clean in-reserve of the anchor");
        return false;
      }
    double bound4 = 110.0 * cfg.rho * dp.ell * p + dp.q1;
    for (int u = 0; u < n && stage1_assertions_ok; ++u) {
      if (on_path[u]) continue;
      for (int i = 0; i < r; ++i) {
        long long deg = cnt_part[static_cast<std::size_t>(u) * r + i];
        for (int w : a0)
          if (part_of[w] == i) deg += dpr.has_arc(u, w) + dpr.has_arc(w, u);
        if (deg > bound4 + 1e-9) {
          set_failure(1, "summary-4",
                      "deg(u, V_i cap (L1 u A0)) above 110*rho*ell*p + lambda*ell*p");
          return false;
        }
      }
    }
    int x = path.back();
    if (base_bad[x] || in_a0[x]) {
      set_failure(1, "summary-6", "frontier landed in A0 u B u T1 u T2");
      return false;
    }
    if (!nice_ignoring_self(x)) {
      set_failure(1, "summary-6", "frontier is not nice w.r.t. L1 u A0");
      return false;
    }
    stage_done = 1;
    return true;
  }

  // --- stage 2 -------------------------------------------------------------

  bool stage2() {
    if (failed || stage_done < 1) return false;
    const double guard = 3.0 * cfg.eps_prime * dp.ell;
    long long iteration = 0;
    for (;;) {
      int min_free = cnt_free[0];
      for (int i = 1; i < r; ++i) min_free = std::min(min_free, cnt_free[i]);
      if (min_free <= guard) break;
      auto step = random_forward_step(hv, path.back(), forb, rng);
      if (!step.ok) {
        set_failure(2, "steps-exist-random",
                    step.failure + " (free " + std::to_string(min_free) + ")", iteration);
        return false;
      }
      int from = path.back();
      path.push_back(step.vertex);
      append_path(step.vertex, 2, "random", from);
      ++stage2_visits[part_of[step.vertex]];
      ++stage2_step_count;
      ++iteration;
    }
    auto [vmin, vmax] = std::minmax_element(stage2_visits.begin(), stage2_visits.end());
    if (*vmax - *vmin > 1) {
      set_failure(2, "balanced-traversal", "part visit counts differ by more than 1");
      return false;
    }
    // absorbing-arc census for the vertices still outside the path
    min_absorbing = -1;
    std::vector<char> in_mark(n, 0), out_mark(n, 0);
    std::vector<int> pvec(path.begin(), path.end());
    for (int u = 0; u < n; ++u) {
      if (on_path[u]) continue;
      for (int w : dpr.in(u)) in_mark[w] = 1;
      for (int w : dpr.out(u)) out_mark[w] = 1;
      long long cnt = 0;
      for (std::size_t i = 0; i + 1 < pvec.size(); ++i)
        cnt += in_mark[pvec[i]] && out_mark[pvec[i + 1]];
      if (min_absorbing < 0 || cnt < min_absorbing) min_absorbing = cnt;
      for (int w : dpr.in(u)) in_mark[w] = 0;
      for (int w : dpr.out(u)) out_mark[w] = 0;
    }
    stage_done = 2;
    return true;
  }

  // --- stage 3 -------------------------------------------------------------

  bool stage3() {
    if (failed || stage_done < 2) return false;
    int target = hv.shift_part(base_part, r - 4);
    long long iteration = 0;
    while (part_of[path.back()] != target) {
      auto step = standard_forward_step(hv, path.back(), forb);
      if (!step.ok) {
        set_failure(3, "steps-exist-forward", step.failure, iteration);
        return false;
      }
      int from = path.back();
      path.push_back(step.vertex);
      append_path(step.vertex, 3, "forward", from);
      if (++iteration > 2 * r) {
        set_failure(3, "walk-guard", "failed to reach V_{r-3}", iteration);
        return false;
      }
    }
    // the closing step works with respect to L3 (without A0): release the
    // reserve just before closing
    for (int w : a0) {
      in_a0[w] = 0;
      refresh_forb(w);
    }
    auto close = closing_step(hv, path.back(), path.front(), forb);
    if (!close.ok) {
      set_failure(3, "closing-step", close.failure);
      return false;
    }
    int from = path.back();
    for (int w : close.y) {
      path.push_back(w);
      append_path(w, 3, "closing", from);
      from = w;
    }
    record(3, "close-arc", from, path.front());
    final_cycle.order.assign(path.begin(), path.end());
    auto check = validate_cycle(dpr, final_cycle, false);
    if (!check.ok) {
      set_failure(3, "cycle-validation", check.problem);
      return false;
    }
    stage_done = 3;
    return true;
  }

  // --- stage 4 -------------------------------------------------------------

  bool stage4() {
    if (failed || stage_done < 3) return false;
    std::vector<int> leftover;
    for (int u = 0; u < n; ++u)
      if (!on_path[u]) leftover.push_back(u);
    auto res = stage4_absorb(dpr, final_cycle, leftover, cfg.stage4_leftover_cap);
    if (!res.ok) {
      std::string detail = res.failure;
      if (!res.hall_violator.empty())
        detail += "; Hall violator of size " + std::to_string(res.hall_violator.size());
      set_failure(4, "matching", detail);
      return false;
    }
    final_cycle = res.cycle;
    auto check = validate_cycle(dpr, final_cycle, true);
    if (!check.ok) {
      set_failure(4, "cycle-validation", check.problem);
      return false;
    }
    stage_done = 4;
    return true;
  }
};

PipelineRun::PipelineRun(const Digraph& d, const Digraph& dprime,
                         std::vector<std::vector<int>> cycle_parts, const PipelineConfig& cfg,
                         double p, std::uint64_t seed, std::vector<StepRecord>* trace)
    : impl_(new Impl(d, dprime, std::move(cycle_parts), cfg, p, seed, trace)) {}

PipelineRun::~PipelineRun() { delete impl_; }

const BadCensus& PipelineRun::census() const { return impl_->census; }
const DerivedParams& PipelineRun::params() const { return impl_->dp; }
const std::vector<int>& PipelineRun::reserve_a0() const { return impl_->a0; }
int PipelineRun::anchor() const { return impl_->path.empty() ? -1 : impl_->path.front(); }
int PipelineRun::frontier() const { return impl_->path.empty() ? -1 : impl_->path.back(); }
const StageFailure& PipelineRun::failure() const { return impl_->fail; }
const Cycle& PipelineRun::cycle() const { return impl_->final_cycle; }

const std::vector<int>& PipelineRun::path() const {
  static thread_local std::vector<int> copy;
  copy.assign(impl_->path.begin(), impl_->path.end());
  return copy;
}

bool PipelineRun::stage1() { return impl_->stage1(); }
bool PipelineRun::stage2() { return impl_->stage2(); }
bool PipelineRun::stage3() { return impl_->stage3(); }
bool PipelineRun::stage4() { return impl_->stage4(); }

PipelineResult PipelineRun::run() {
  auto t0 = std::chrono::steady_clock::now();
  PipelineResult res;
  res.r = impl_->r;
  res.ell = impl_->dp.ell;
  res.census_b = impl_->census.b_size;
  res.census_t1 = impl_->census.t1_size;
  res.census_t2 = impl_->census.t2_size;
  bool ok = impl_->stage1();
  res.p1_len = static_cast<int>(impl_->path.size());
  if (ok) ok = impl_->stage2();
  res.p2_len = static_cast<int>(impl_->path.size());
  res.stage2_steps = impl_->stage2_step_count;
  res.min_absorbing_arcs = impl_->min_absorbing;
  if (ok) ok = impl_->stage3();
  res.cycle_len = static_cast<int>(impl_->final_cycle.order.size());
  res.leftover = impl_->n - res.cycle_len;
  if (ok) ok = impl_->stage4();
  res.ok = ok;
  res.failure = impl_->fail;
  res.stage1_assertions_ok = impl_->stage1_assertions_ok;
  res.warnings = impl_->warnings;
  if (ok) res.cycle = impl_->final_cycle;
  res.runtime_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

Stage4Result stage4_absorb(const Digraph& dprime, const Cycle& c, std::vector<int> leftover,
                           double leftover_cap_fraction) {
  Stage4Result res;
  std::vector<char> on_cycle(dprime.n(), 0);
  for (int v : c.order) on_cycle[v] = 1;
  for (int u : leftover)
    if (on_cycle[u]) throw param_error("stage4_absorb: leftover vertex already on the cycle");
  if (leftover.empty()) {
    res.ok = true;
    res.cycle = c;
    return res;
  }
  if (static_cast<double>(leftover.size()) > leftover_cap_fraction * dprime.n()) {
    res.failure = "leftover exceeds the configured absorption cap";
    return res;
  }
  const int t = static_cast<int>(leftover.size());
  const int arcs = static_cast<int>(c.order.size());
  std::vector<std::vector<int>> adj(t);
  std::vector<char> in_mark(dprime.n(), 0);
  for (int li = 0; li < t; ++li) {
    int u = leftover[li];
    for (int w : dprime.in(u)) in_mark[w] = 1;
    for (int i = 0; i < arcs; ++i) {
      int x = c.order[i], y = c.order[(i + 1) % arcs];
      if (in_mark[x] && dprime.has_arc(u, y)) adj[li].push_back(i);
    }
    for (int w : dprime.in(u)) in_mark[w] = 0;
  }
  auto hall = hall_matching(t, arcs, adj);
  if (!hall.saturating) {
    for (int a : hall.deficient_set) res.hall_violator.push_back(leftover[a]);
    res.failure = "matching does not saturate the leftover";
    return res;
  }
  std::vector<std::vector<int>> splice(arcs);
  for (int li = 0; li < t; ++li) splice[hall.match_for_left[li]].push_back(leftover[li]);
  std::vector<int> order;
  order.reserve(c.order.size() + leftover.size());
  for (int i = 0; i < arcs; ++i) {
    order.push_back(c.order[i]);
    for (int u : splice[i]) order.push_back(u);  // at most one per arc (matching)
  }
  res.ok = true;
  res.cycle.order = std::move(order);
  return res;
}

PipelineResult run_pipeline_experiment(int n, double p, const PipelineConfig& cfg,
                                       std::uint64_t seed, std::vector<StepRecord>* trace) {
  cfg.validate();
  auto t0 = std::chrono::steady_clock::now();
  Digraph d = Digraph::random(n, p, derive_seed(seed, "pipeline-graph"));
  auto adv = random_budget_adversary(d, cfg.alpha, derive_seed(seed, "pipeline-adversary"));
  const Digraph& dpr = adv.surviving;
  Partition partition = equitable_partition(dpr, cfg.k, derive_seed(seed, "pipeline-partition"));

  RegParams rp;
  rp.eps = cfg.reg_digraph_eps;
  rp.scale = p;
  rp.mode = RegMode::sampled;
  rp.samples = cfg.reg_digraph_samples;
  rp.seed = derive_seed(seed, "pipeline-regularity");
  RegularityDigraph reg = build_regularity_digraph(dpr, partition, cfg.xi * p, rp);
  auto reduced = reduced_hamilton_cycle(reg);

  PipelineResult res;
  if (!reduced.ok) {
    res.failure = {0, "reduced-cycle", reduced.failure};
    return res;
  }
  std::vector<std::vector<int>> cycle_parts;
  for (int idx : reduced.cycle) cycle_parts.push_back(partition.parts[idx]);
  if (cycle_parts.size() < 5) {
    res.failure = {0, "reduced-cycle", "cycle shorter than 5 parts"};
    return res;
  }
  PipelineRun run(d, dpr, std::move(cycle_parts), cfg, p, derive_seed(seed, "pipeline-run"), trace);
  res = run.run();
  res.runtime_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace dires
