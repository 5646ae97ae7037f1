// Acceptance suite: one criterion per invocation (--criterion N), one
// pass/fail line per criterion, exit 0 iff the criterion holds.

#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>
#include <map>
#include <numeric>

#include "dires/adversary.hpp"
#include "dires/digraph.hpp"
#include "dires/hamilton.hpp"
#include "dires/parallel.hpp"
#include "dires/pipeline.hpp"
#include "dires/regularity.hpp"
#include "dires/resilience.hpp"
#include "dires/walkprob.hpp"
#include "oracles.hpp"

using namespace dires;
using Clock = std::chrono::steady_clock;

namespace {

bool report(int criterion, bool pass, const std::string& detail, Clock::time_point t0) {
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::cout << "criterion " << criterion << (pass ? " PASS " : " FAIL ") << detail << " ["
            << secs << "s]\n";
  return pass;
}

Digraph from_mask(int n, unsigned long long mask) {
  std::vector<std::pair<int, int>> arcs;
  int bit = 0;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      if (mask >> bit & 1) arcs.emplace_back(u, v);
      ++bit;
    }
  return Digraph::from_arcs(n, std::move(arcs));
}

// random digraph patched up to min out/in degree ceil(n/2)
Digraph patched_dirac(int n, std::uint64_t seed) {
  auto d = Digraph::random(n, 0.55, seed);
  auto arcs = d.arcs();
  std::vector<int> dout(n, 0), din(n, 0);
  std::vector<std::vector<char>> has(n, std::vector<char>(n, 0));
  for (auto [u, v] : arcs) {
    ++dout[u];
    ++din[v];
    has[u][v] = 1;
  }
  int need = (n + 1) / 2;
  Rng rng(derive_seed(seed, "patch"));
  for (int u = 0; u < n; ++u) {
    while (dout[u] < need) {
      int v = rng.below_int(n);
      if (v == u || has[u][v]) continue;
      has[u][v] = 1;
      arcs.emplace_back(u, v);
      ++dout[u];
      ++din[v];
    }
    while (din[u] < need) {
      int v = rng.below_int(n);
      if (v == u || has[v][u]) continue;
      has[v][u] = 1;
      arcs.emplace_back(v, u);
      ++dout[v];
      ++din[u];
    }
  }
  return Digraph::from_arcs(n, std::move(arcs));
}

// --- criteria -------------------------------------------------------------

bool criterion1() {
  auto t0 = Clock::now();
  long long checked = 0;
  for (unsigned long long mask = 0; mask < 4096; ++mask) {
    auto d = from_mask(4, mask);
    auto res = exact_hamilton(d);
    if (res.status == SolveStatus::unknown) return report(1, false, "unknown verdict at n=4", t0);
    bool truth = oracle::hamiltonian_by_permutations(d);
    if ((res.status == SolveStatus::cycle) != truth)
      return report(1, false, "verdict mismatch at n=4 mask " + std::to_string(mask), t0);
    if (res.status == SolveStatus::cycle && !validate_cycle(d, res.cycle, true).ok)
      return report(1, false, "invalid cycle at n=4", t0);
    ++checked;
  }
  for (int t = 0; t < 1000; ++t) {
    double p = 0.05 + 0.9 * (t % 20) / 20.0;
    auto d = Digraph::random(7, p, derive_seed(100, "accept1", t));
    auto res = exact_hamilton(d);
    if (res.status == SolveStatus::unknown) return report(1, false, "unknown verdict at n=7", t0);
    if ((res.status == SolveStatus::cycle) != oracle::hamiltonian_by_permutations(d))
      return report(1, false, "verdict mismatch at n=7 trial " + std::to_string(t), t0);
    ++checked;
  }
  return report(1, true, "exact solver equals permutation oracle on " + std::to_string(checked) +
                             " digraphs",
                t0);
}

bool criterion2() {
  auto t0 = Clock::now();
  for (int t = 0; t < 500; ++t) {
    int n = 10 + (t * 383) % 191;  // covers 10..200
    auto d = patched_dirac(n, derive_seed(200, "accept2", t));
    auto s = degree_stats(d);
    if (2 * s.min_out < n || 2 * s.min_in < n)
      return report(2, false, "fixture generation broke the degree condition", t0);
    Cycle c;
    try {
      c = ghouila_houri_cycle(d);
    } catch (const std::exception& e) {
      return report(2, false, std::string("solver threw: ") + e.what(), t0);
    }
    if (!validate_cycle(d, c, true).ok)
      return report(2, false, "invalid cycle at trial " + std::to_string(t), t0);
  }
  return report(2, true, "constructive solver delivered 500/500 valid Hamilton cycles", t0);
}

bool criterion3() {
  auto t0 = Clock::now();
  for (int n : {4, 6, 8}) {
    auto est = estimate_resilience(n, 1.0, AdversaryFamily::both, SolverBudget{}, {}, 20,
                                   derive_seed(300, "accept3", n));
    if (!est.upper_found || est.upper != n / 2 || est.lower != n / 2 - 1)
      return report(3, false,
                    "n=" + std::to_string(n) + ": bracket [" + std::to_string(est.lower) + "," +
                        std::to_string(est.upper) + ") instead of floor(n/2)=" +
                        std::to_string(n / 2),
                    t0);
  }
  return report(3, true, "complete-digraph estimates bracket floor(n/2) exactly for n=4,6,8", t0);
}

bool criterion4() {
  auto t0 = Clock::now();
  const int n = 2000;
  const double p = 0.05;
  const double bound = 0.5 + 10.0 * std::sqrt(std::log(static_cast<double>(n)) / (n * p));
  int fraction_ok = 0, certified = 0;
  const int seeds = 50;
  std::vector<char> fraction_flags(seeds, 0), cert_flags(seeds, 0);
  parallel_for(seeds, [&](std::int64_t s) {
    auto d = Digraph::random(n, p, derive_seed(400, "accept4-graph", s));
    auto out = bipartition_adversary(d, std::nullopt, derive_seed(400, "accept4-split", s));
    double worst = 0.0;
    for (int u = 0; u < n; ++u) worst = std::max({worst, out.frac_out[u], out.frac_in[u]});
    fraction_flags[s] = worst <= bound;
    // empty-cut certificate: no V1 -> V2 arc survives and both parts are
    // nonempty, so no Hamilton cycle can cross the cut
    std::vector<char> in_v1(n, 0);
    for (int v : out.split->first) in_v1[v] = 1;
    bool cut_empty = true;
    for (int u : out.split->first)
      for (int v : out.surviving.out(u)) cut_empty = cut_empty && in_v1[v];
    cert_flags[s] = cut_empty && !out.split->first.empty() && !out.split->second.empty();
  });
  for (int s = 0; s < seeds; ++s) {
    fraction_ok += fraction_flags[s];
    certified += cert_flags[s];
  }
  bool pass = fraction_ok >= static_cast<int>(0.95 * seeds) && certified == seeds;
  return report(4, pass,
                "deletion fractions within bound in " + std::to_string(fraction_ok) + "/50, cut "
                "certificates " + std::to_string(certified) + "/50",
                t0);
}

bool criterion5() {
  auto t0 = Clock::now();
  const int graphs = 20, draws = 100;
  int hamiltonian = 0;
  std::vector<int> per_graph(graphs, 0);
  parallel_for(graphs, [&](std::int64_t g) {
    auto d = Digraph::random(16, 0.9, derive_seed(500, "accept5-graph", g));
    int ok = 0;
    for (int t = 0; t < draws; ++t) {
      auto out = random_budget_adversary(d, 0.1, derive_seed(500, "accept5-draw", g * 1000 + t));
      ok += exact_hamilton(out.surviving).status == SolveStatus::cycle;
    }
    per_graph[g] = ok;
  });
  for (int g = 0; g < graphs; ++g) hamiltonian += per_graph[g];
  bool pass = hamiltonian >= static_cast<int>(0.99 * graphs * draws);
  return report(5, pass,
                std::to_string(hamiltonian) + "/" + std::to_string(graphs * draws) +
                    " adversary draws stayed Hamiltonian at alpha=0.1",
                t0);
}

bool criterion6() {
  auto t0 = Clock::now();
  const int seeds = 20;
  int ok_bad = 0, ok_exc = 0, ok_abs = 0;

  for (int s = 0; s < seeds; ++s) {
    auto d = Digraph::random(5000, 0.1, derive_seed(600, "accept6-badset", s));
    auto c = bad_set_census(d, 0.2, 0.1, 0.1, 50, derive_seed(601, "accept6-badset-y", s));
    ok_bad += c.respected;
  }
  for (int s = 0; s < seeds; ++s) {
    auto d = Digraph::random(4000, 0.2, derive_seed(602, "accept6-excess", s));
    // window constant c = 1: clause (i) scans |A| in [ell*p, 2*ell*p]
    auto c = degree_excess_census(d, 200, 0.2, 1.0, 50, derive_seed(603, "accept6-excess-a", s));
    ok_exc += c.respected1 && c.respected2;
  }
  for (int s = 0; s < seeds; ++s) {
    auto d = Digraph::random(2000, 0.1, derive_seed(604, "accept6-abs", s));
    Rng rng(derive_seed(605, "accept6-abs-sets", s));
    auto perm = rng.sample_indices(2000, 150);
    rng.shuffle(perm);
    std::vector<int> sset(perm.begin(), perm.begin() + 50);
    std::vector<std::pair<int, int>> tset;
    for (int i = 0; i < 50; ++i) tset.emplace_back(perm[50 + 2 * i], perm[50 + 2 * i + 1]);
    long long count = absorbing_pair_census(d, sset, tset);
    ok_abs += count < 0.2 * 50 * 0.1 * 0.1 * 2000;
  }
  int need = static_cast<int>(0.95 * seeds);
  bool pass = ok_bad >= need && ok_exc >= need && ok_abs >= need;
  return report(6, pass,
                "bad_set " + std::to_string(ok_bad) + "/20, degree_excess " +
                    std::to_string(ok_exc) + "/20, absorbing_pairs " + std::to_string(ok_abs) +
                    "/20 (each needs >= 19)",
                t0);
}

bool criterion7() {
  auto t0 = Clock::now();
  const int trials = 10000;
  std::string detail;
  bool pass = true;
  SyntheticHostSpec lower;
  lower.ell = 200;
  lower.r = 6;
  lower.p = 1.0;
  lower.xi = 1.0;
  lower.seed = derive_seed(700, "accept7-host");
  struct Item {
    WalkLemma lemma;
    const char* name;
    int z;
  };
  for (auto [lemma, name, z] : {Item{WalkLemma::two, "two", 40}, Item{WalkLemma::three, "three", 25},
                                Item{WalkLemma::four, "four", 40}}) {
    auto spec = lower;
    spec.z_size = z;
    auto rep = estimate_walk_probabilities(spec, lemma, trials, derive_seed(701, name));
    pass = pass && rep.respected;
    detail += std::string(name) + (rep.respected ? " ok" : " VIOLATED") + " (" +
              std::to_string(rep.empirical) + " vs " + std::to_string(rep.bound) + "); ";
  }
  SyntheticHostSpec upper;
  upper.ell = 1500;
  upper.r = 6;
  upper.p = 0.25;
  upper.xi = 0.5;
  upper.seed = derive_seed(702, "accept7-upper-host");
  for (auto [lemma, name] : {std::pair{WalkLemma::two_upper, "two_upper"},
                             {WalkLemma::three_upper, "three_upper"}}) {
    auto rep = estimate_walk_probabilities(upper, lemma, trials, derive_seed(703, name));
    pass = pass && rep.respected;
    detail += std::string(name) + (rep.respected ? " ok" : " VIOLATED") + "; ";
  }
  return report(7, pass, detail, t0);
}

bool criterion8() {
  auto t0 = Clock::now();
  const int seeds = 20;
  int ok = 0, assertions_ok = 0;
  std::map<std::string, int> failure_bins;
  PipelineConfig cfg;  // documented defaults
  for (int s = 0; s < seeds; ++s) {
    auto res = run_pipeline_experiment(3000, 0.15, cfg, derive_seed(800, "accept8", s));
    if (res.ok) {
      ++ok;
      assertions_ok += res.stage1_assertions_ok;
    } else {
      ++failure_bins["stage" + std::to_string(res.failure.stage) + ":" + res.failure.hypothesis];
    }
  }
  std::string detail = std::to_string(ok) + "/20 Hamilton cycles, stage-1 assertions green on " +
                       std::to_string(assertions_ok) + "; failures:";
  if (failure_bins.empty()) detail += " none";
  for (auto& [bin, count] : failure_bins) detail += " " + bin + "x" + std::to_string(count);
  bool pass = ok >= 16 && assertions_ok == ok;
  return report(8, pass, detail, t0);
}

bool criterion9() {
  auto t0 = Clock::now();
  for (int seed = 0; seed < 500; ++seed) {
    std::vector<std::pair<int, int>> arcs;
    Rng rng(derive_seed(900, "accept9", seed));
    double p = 0.1 + 0.8 * (seed % 9) / 9.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (rng.bernoulli(p)) arcs.emplace_back(i, 4 + j);
    auto d = Digraph::from_arcs(8, std::move(arcs));
    std::vector<int> a{0, 1, 2, 3}, b{4, 5, 6, 7};
    for (double eps : {0.25, 0.5}) {
      RegParams rp;
      rp.eps = eps;
      rp.scale = 0.5;
      rp.mode = RegMode::exhaustive;
      auto fast = is_regular_pair(d, a, b, rp);
      if (fast.regular != oracle::regular_by_enumeration(d, a, b, eps, 0.5))
        return report(9, false, "verdict mismatch at seed " + std::to_string(seed), t0);
      if (!fast.regular) {
        auto& [wx, wy] = *fast.witness;
        double dev = std::abs(induced_density(d, wx, wy) - fast.density);
        if (dev <= eps * 0.5) return report(9, false, "witness fails to re-verify", t0);
      }
    }
  }
  // planted block construction at |A|=|B|=10
  std::vector<std::pair<int, int>> arcs;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      arcs.emplace_back(i, 10 + j);
      arcs.emplace_back(5 + i, 15 + j);
    }
  auto blocked = Digraph::from_arcs(20, std::move(arcs));
  std::vector<int> a{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, b{10, 11, 12, 13, 14, 15, 16, 17, 18, 19};
  RegParams rp;
  rp.eps = 0.25;
  rp.scale = 1.0;
  rp.mode = RegMode::exhaustive;
  auto v = is_regular_pair(blocked, a, b, rp);
  bool oracle_verdict = oracle::regular_by_enumeration(blocked, a, b, 0.25, 1.0);
  if (v.regular || oracle_verdict) return report(9, false, "planted block not flagged", t0);
  return report(9, true, "exhaustive mode equals the subset enumerator on 500 seeds + block", t0);
}

bool criterion10() {
  auto t0 = Clock::now();
  // resilience: records and level summaries must be byte-identical across
  // worker counts (runtime fields excluded by the harness contract)
  auto render = [](const ResilienceEstimate& est) {
    std::string out = format_level_csv_header() + "\n";
    for (auto& lvl : est.levels) out += format_level_csv_row(lvl) + "\n";
    for (auto rec : est.records) {
      rec.runtime_ms = 0.0;
      out += format_trial_jsonl(rec) + "\n";
    }
    return out;
  };
  set_jobs(1);
  auto est1 = estimate_resilience(12, 0.9, AdversaryFamily::both, SolverBudget{}, {}, 30, 424242);
  set_jobs(2);
  auto est2 = estimate_resilience(12, 0.9, AdversaryFamily::both, SolverBudget{}, {}, 30, 424242);
  set_jobs(0);
  if (render(est1) != render(est2))
    return report(10, false, "resilience outputs differ across --jobs", t0);

  // pipeline: step traces identical across jobs settings
  PipelineConfig cfg;
  cfg.k = 6;
  cfg.witness_budget = 40;
  std::vector<StepRecord> tr1, tr2;
  set_jobs(1);
  auto r1 = run_pipeline_experiment(240, 0.3, cfg, 777, &tr1);
  set_jobs(2);
  auto r2 = run_pipeline_experiment(240, 0.3, cfg, 777, &tr2);
  set_jobs(0);
  if (r1.ok != r2.ok || tr1.size() != tr2.size())
    return report(10, false, "pipeline runs differ across --jobs", t0);
  for (std::size_t i = 0; i < tr1.size(); ++i)
    if (format_step_jsonl(tr1[i]) != format_step_jsonl(tr2[i]))
      return report(10, false, "pipeline traces differ across --jobs", t0);

  // censuses too
  auto d = Digraph::random(240, 0.3, 31);
  auto c1 = bad_set_census(d, 0.3, 0.4, 0.3, 20, 32);
  set_jobs(1);
  auto c2 = bad_set_census(d, 0.3, 0.4, 0.3, 20, 32);
  set_jobs(0);
  if (c1.sizes != c2.sizes) return report(10, false, "census outputs differ across --jobs", t0);
  return report(10, true, "JSONL/CSV renderings byte-identical across worker counts", t0);
}

}  // namespace

int main(int argc, char** argv) {
  int criterion = 0;
  for (int i = 1; i + 1 < argc + 1; ++i)
    if (i + 1 < argc && std::strcmp(argv[i], "--criterion") == 0) criterion = std::atoi(argv[i + 1]);
  if (criterion < 1 || criterion > 10) {
    // run everything
    bool all = true;
    all &= criterion1();
    all &= criterion2();
    all &= criterion3();
    all &= criterion4();
    all &= criterion5();
    all &= criterion6();
    all &= criterion7();
    all &= criterion8();
    all &= criterion9();
    all &= criterion10();
    return all ? 0 : 1;
  }
  bool pass = false;
  switch (criterion) {
    case 1: pass = criterion1(); break;
    case 2: pass = criterion2(); break;
    case 3: pass = criterion3(); break;
    case 4: pass = criterion4(); break;
    case 5: pass = criterion5(); break;
    case 6: pass = criterion6(); break;
    case 7: pass = criterion7(); break;
    case 8: pass = criterion8(); break;
    case 9: pass = criterion9(); break;
    case 10: pass = criterion10(); break;
  }
  return pass ? 0 : 1;
}
