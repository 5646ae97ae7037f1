#include "dires/resilience.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "dires/parallel.hpp"
#include "dires/rng.hpp"

namespace dires {

double chernoff_bound(ChernoffKind kind, int n, double p, double eps_or_x) {
  const double np = static_cast<double>(n) * p;
  switch (kind) {
    case ChernoffKind::i:
    case ChernoffKind::ii:
    case ChernoffKind::iii: {
      double eps = eps_or_x;
      if (!(eps >= 0.0 && eps <= 1.0)) throw param_error("chernoff_bound: eps must be in [0,1]");
      if (kind == ChernoffKind::i) return std::exp(-eps * eps * np / 2.0);
      double b = std::exp(-eps * eps * np / 3.0);
      return kind == ChernoffKind::ii ? b : 2.0 * b;
    }
    case ChernoffKind::iv: {
      double x = eps_or_x;
      if (x < 7.0 * np) throw param_error("chernoff_bound: kind iv needs x >= 7np");
      return std::exp(-x);
    }
  }
  throw param_error("chernoff_bound: bad kind");
}

TailReport empirical_tail(int n, double p, double eps_or_x, ChernoffKind kind, int samples,
                          std::uint64_t seed) {
  TailReport rep;
  rep.bound = chernoff_bound(kind, n, p, eps_or_x);
  const double np = static_cast<double>(n) * p;
  Rng rng(derive_seed(seed, "empirical-tail"));
  long long hits = 0;
  for (int s = 0; s < samples; ++s) {
    int x = 0;
    for (int i = 0; i < n; ++i) x += rng.bernoulli(p);
    bool event = false;
    switch (kind) {
      case ChernoffKind::i: event = x <= (1.0 - eps_or_x) * np; break;
      case ChernoffKind::ii: event = x >= (1.0 + eps_or_x) * np; break;
      case ChernoffKind::iii: event = std::abs(x - np) >= eps_or_x * np; break;
      case ChernoffKind::iv: event = x >= eps_or_x; break;
    }
    hits += event;
  }
  rep.frequency = static_cast<double>(hits) / samples;
  double sigma = std::sqrt(rep.frequency * (1.0 - rep.frequency) / samples) + 1e-12;
  rep.respected = rep.frequency <= rep.bound + 3.0 * sigma;
  return rep;
}

BadSetCensus bad_set_census(const Digraph& d, double c, double eps, double p, int samples,
                            std::uint64_t seed) {
  const int n = d.n();
  const int min_size = static_cast<int>(std::ceil(c * n - 1e-9));
  if (min_size < 1) throw param_error("bad_set_census: c*n below 1");
  BadSetCensus census;
  census.bound = p > 0 ? std::log(static_cast<double>(n)) / p : 0.0;
  census.sizes.resize(samples);
  std::vector<int> sizes_y(samples);
  {
    Rng rng(derive_seed(seed, "bad-set-sizes"));
    for (int s = 0; s < samples; ++s)
      sizes_y[s] = min_size + static_cast<int>(rng.below(std::max(1, n - min_size)));
  }
  parallel_for(samples, [&](std::int64_t s) {
    Rng rng(derive_seed(seed, "bad-set-sample", static_cast<std::uint64_t>(s)));
    auto y = rng.sample_indices(n, sizes_y[s]);
    std::vector<char> in_y(n, 0);
    for (int v : y) in_y[v] = 1;
    const double mean = static_cast<double>(y.size()) * p;
    const double slack = eps * mean;
    int b = 0;
    for (int u = 0; u < n; ++u) {
      if (in_y[u]) continue;
      int dout = 0, din = 0;
      for (int v : d.out(u)) dout += in_y[v];
      for (int v : d.in(u)) din += in_y[v];
      if (std::abs(dout - mean) >= slack || std::abs(din - mean) >= slack) ++b;
    }
    census.sizes[s] = b;
  });
  for (int b : census.sizes) census.max_b = std::max(census.max_b, b);
  census.respected = census.max_b <= census.bound;
  return census;
}

DegreeExcessCensus degree_excess_census(const Digraph& d, int ell, double p, double c, int samples,
                                        std::uint64_t seed) {
  const int n = d.n();
  DegreeExcessCensus census;
  census.bound1 = ell * p;
  census.bound2 = ell * std::pow(p, 1.5);
  census.advisory_warning = ell * p * p < std::log(static_cast<double>(n));
  const int lo1 = std::max(1, static_cast<int>(std::ceil(c * ell * p)));
  const int hi = std::max(lo1, static_cast<int>(std::floor(2.0 * ell * p)));
  const int lo2 = std::min(hi, std::max(1, static_cast<int>(std::ceil(ell * std::pow(p, 1.5)))));
  std::vector<int> worst1(samples, 0), worst2(samples, 0);
  parallel_for(samples, [&](std::int64_t s) {
    Rng rng(derive_seed(seed, "degree-excess-sample", static_cast<std::uint64_t>(s)));
    int a1 = lo1 + static_cast<int>(rng.below(hi - lo1 + 1));
    int a2 = lo2 + static_cast<int>(rng.below(hi - lo2 + 1));
    for (int clause = 0; clause < 2; ++clause) {
      int a = clause == 0 ? a1 : a2;
      auto set_a = rng.sample_indices(n, a);
      std::vector<char> in_a(n, 0);
      for (int v : set_a) in_a[v] = 1;
      double threshold = clause == 0 ? 2.0 * p * a : 7.0 * std::sqrt(p) * a;
      int count = 0;
      for (int u = 0; u < n; ++u) {
        if (in_a[u]) continue;
        int deg = 0;
        for (int v : d.out(u)) deg += in_a[v];
        if (deg >= threshold) ++count;
      }
      (clause == 0 ? worst1[s] : worst2[s]) = count;
    }
  });
  for (int s = 0; s < samples; ++s) {
    census.worst_clause1 = std::max(census.worst_clause1, worst1[s]);
    census.worst_clause2 = std::max(census.worst_clause2, worst2[s]);
  }
  census.respected1 = census.worst_clause1 <= census.bound1;
  census.respected2 = census.worst_clause2 <= census.bound2;
  return census;
}

long long absorbing_pair_census(const Digraph& d, std::span<const int> s,
                                const std::vector<std::pair<int, int>>& t) {
  std::vector<char> in_s(d.n(), 0);
  for (int v : s) in_s[v] = 1;
  std::vector<char> out_used(d.n(), 0), in_used(d.n(), 0);
  for (auto [x, y] : t) {
    if (in_s[x] || in_s[y]) throw param_error("absorbing_pair_census: T touches S");
    if (out_used[x] || in_used[y])
      throw param_error("absorbing_pair_census: T exceeds max out/in degree one");
    out_used[x] = 1;
    in_used[y] = 1;
  }
  long long count = 0;
  for (auto [x, y] : t)
    for (int z : s)
      if (d.has_arc(x, z) && d.has_arc(z, y)) ++count;
  return count;
}

namespace {

TrialRecord run_trial(int n, double p, AdversaryFamily family, const SolverBudget& budget, int level,
                      int trial, std::uint64_t master_seed) {
  TrialRecord rec;
  rec.n = n;
  rec.p = p;
  rec.level = level;
  rec.trial = trial;
  rec.solver = "exact";
  rec.seed = derive_seed(master_seed, "resilience-trial",
                         static_cast<std::uint64_t>(level) * 1'000'003ULL + trial);
  bool use_cut = family == AdversaryFamily::cut || (family == AdversaryFamily::both && trial % 2 == 1);
  rec.adversary = use_cut ? "cut" : "random";
  auto t0 = std::chrono::steady_clock::now();
  Digraph d = Digraph::random(n, p, derive_seed(rec.seed, "graph"));
  AdversaryOutcome out = use_cut ? cut_level_adversary(d, level, derive_seed(rec.seed, "adversary"))
                                 : random_level_adversary(d, level, derive_seed(rec.seed, "adversary"));
  auto res = exact_hamilton(out.surviving, budget);
  rec.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  switch (res.status) {
    case SolveStatus::cycle: rec.verdict = "hamiltonian"; break;
    case SolveStatus::none: rec.verdict = "non_hamiltonian"; break;
    case SolveStatus::unknown:
      rec.verdict = "unknown";
      rec.diagnostics = res.reason;
      break;
  }
  return rec;
}

ResilienceEstimate estimate_impl(int n, double p, AdversaryFamily family, const SolverBudget& budget,
                                 std::vector<int> levels, int trials_per_level,
                                 std::uint64_t master_seed, bool parallel) {
  ResilienceEstimate est;
  est.np = n * p;
  if (levels.empty()) {
    int top = static_cast<int>(std::ceil(0.8 * n * p));
    for (int r = 0; r <= top; ++r) levels.push_back(r);
  }
  std::sort(levels.begin(), levels.end());
  for (int level : levels) {
    std::vector<TrialRecord> recs(trials_per_level);
    auto job = [&](std::int64_t t) {
      recs[t] = run_trial(n, p, family, budget, level, static_cast<int>(t), master_seed);
    };
    if (parallel)
      parallel_for(trials_per_level, job);
    else
      serial_for(trials_per_level, job);
    LevelSummary sum;
    sum.level = level;
    sum.trials = trials_per_level;
    sum.fraction_of_np = est.np > 0 ? level / est.np : 0.0;
    for (auto& r : recs) {
      if (r.verdict == "hamiltonian") ++sum.hamiltonian;
      else if (r.verdict == "non_hamiltonian") ++sum.destroyed;
      else ++sum.unknown;
    }
    est.levels.push_back(sum);
    est.records.insert(est.records.end(), recs.begin(), recs.end());
    if (sum.unknown == sum.trials) {
      est.inconclusive = true;
      est.notes += "level " + std::to_string(level) + " fully censored; ";
      continue;
    }
    if (sum.destroyed > 0) {
      est.upper = level;
      est.upper_found = true;
      break;  // levels scanned ascending; bracket from first destruction
    }
    if (sum.hamiltonian + sum.unknown == sum.trials && sum.hamiltonian > 0) est.lower = level;
  }
  if (!est.upper_found) {
    est.upper = levels.empty() ? 0 : levels.back() + 1;
    est.notes += "no destruction within scanned levels; ";
  }
  return est;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

}  // namespace

ResilienceEstimate estimate_resilience(int n, double p, AdversaryFamily family,
                                       const SolverBudget& budget, std::vector<int> levels,
                                       int trials_per_level, std::uint64_t master_seed) {
  return estimate_impl(n, p, family, budget, std::move(levels), trials_per_level, master_seed, true);
}

ResilienceEstimate estimate_resilience_serial(int n, double p, AdversaryFamily family,
                                              const SolverBudget& budget, std::vector<int> levels,
                                              int trials_per_level, std::uint64_t master_seed) {
  return estimate_impl(n, p, family, budget, std::move(levels), trials_per_level, master_seed, false);
}

std::string format_trial_jsonl(const TrialRecord& r) {
  std::ostringstream os;
  os << "{\"n\":" << r.n << ",\"p\":" << r.p << ",\"seed\":" << r.seed << ",\"level\":" << r.level
     << ",\"trial\":" << r.trial << ",\"adversary\":\"" << r.adversary << "\",\"solver\":\""
     << r.solver << "\",\"verdict\":\"" << r.verdict << "\",\"runtime_ms\":" << r.runtime_ms
     << ",\"diagnostics\":\"" << json_escape(r.diagnostics) << "\"}";
  return os.str();
}

std::string format_level_csv_header() { return "level,trials,hamiltonian,destroyed,unknown,fraction_of_np"; }

std::string format_level_csv_row(const LevelSummary& s) {
  std::ostringstream os;
  os << s.level << ',' << s.trials << ',' << s.hamiltonian << ',' << s.destroyed << ',' << s.unknown
     << ',' << s.fraction_of_np;
  return os.str();
}

}  // namespace dires
