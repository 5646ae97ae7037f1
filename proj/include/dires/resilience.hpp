#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dires/adversary.hpp"
#include "dires/digraph.hpp"
#include "dires/hamilton.hpp"

namespace dires {

enum class ChernoffKind { i, ii, iii, iv };

// Closed-form binomial tail bounds: (i) exp(-e^2 np/2) for the lower tail,
// (ii) exp(-e^2 np/3) for the upper tail, (iii) twice (ii) for both tails,
// (iv) e^{-x} for x >= 7np.
double chernoff_bound(ChernoffKind kind, int n, double p, double eps_or_x);

struct TailReport {
  double frequency = 0.0;
  double bound = 0.0;
  bool respected = true;
};

// Samples Bin(n,p) and reports the empirical frequency of the bounded event
// against the closed form (3-sigma slack on the estimator).
TailReport empirical_tail(int n, double p, double eps_or_x, ChernoffKind kind, int samples,
                          std::uint64_t seed);

struct BadSetCensus {
  int max_b = 0;               // largest |B_Y| over the sampled Y
  double bound = 0.0;          // p^{-1} log n
  bool respected = true;
  std::vector<int> sizes;      // |B_Y| per sample
};

// Draws sampled Y with |Y| >= c*n (sizes uniform up to n-1) and counts the
// vertices outside Y whose in- or out-degree into Y strays from |Y|p by
// eps*|Y|p or more.
BadSetCensus bad_set_census(const Digraph& d, double c, double eps, double p, int samples,
                            std::uint64_t seed);

struct DegreeExcessCensus {
  int worst_clause1 = 0;  // max over samples of #{u : deg+(u,A) >= 2pa}
  int worst_clause2 = 0;  // max over samples of #{u : deg+(u,A) >= 7 sqrt(p) a}
  double bound1 = 0.0;    // ell * p
  double bound2 = 0.0;    // ell * p^{3/2}
  bool respected1 = true, respected2 = true;
  bool advisory_warning = false;  // ell p^2 not >> log n
};

DegreeExcessCensus degree_excess_census(const Digraph& d, int ell, double p, double c, int samples,
                                        std::uint64_t seed);

// Exact count of ((x,y),z) in T x S with (x,z) and (z,y) arcs. T must span a
// digraph with max out- and in-degree one and be disjoint from S.
long long absorbing_pair_census(const Digraph& d, std::span<const int> s,
                                const std::vector<std::pair<int, int>>& t);

enum class AdversaryFamily { random, cut, both };

struct TrialRecord {
  int n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;  // per-trial derived seed
  int level = 0;
  int trial = 0;
  std::string adversary;
  std::string solver;
  std::string verdict;  // hamiltonian | non_hamiltonian | unknown
  double runtime_ms = 0.0;
  std::string diagnostics;  // nonempty iff verdict == unknown
};

struct LevelSummary {
  int level = 0;
  int trials = 0, hamiltonian = 0, destroyed = 0, unknown = 0;
  double fraction_of_np = 0.0;
};

// Bracket estimate of local resilience: lower = largest tested level at which
// every decided draw stayed Hamiltonian, upper = smallest level at which some
// draw destroyed Hamiltonicity. Levels are per-vertex arc budgets.
struct ResilienceEstimate {
  int lower = -1;          // -1: no level survived
  int upper = -1;          // meaningful iff upper_found
  bool upper_found = false;
  bool inconclusive = false;  // some level produced only censored verdicts
  double np = 0.0;
  std::string notes;
  std::vector<TrialRecord> records;
  std::vector<LevelSummary> levels;
};

// Scans levels ascending (default grid 0..ceil(0.8 np)); each trial draws a
// fresh D(n,p), applies the level-capped adversary and asks the exact solver.
// Trials run in a parallel pool; per-trial seeds derive from
// (master seed, level, trial index), so the estimate is independent of worker
// count. Censored (unknown) verdicts never enter the bracket.
ResilienceEstimate estimate_resilience(int n, double p, AdversaryFamily family,
                                       const SolverBudget& budget, std::vector<int> levels,
                                       int trials_per_level, std::uint64_t master_seed);
// Serial reference twin; must produce identical records.
ResilienceEstimate estimate_resilience_serial(int n, double p, AdversaryFamily family,
                                              const SolverBudget& budget, std::vector<int> levels,
                                              int trials_per_level, std::uint64_t master_seed);

std::string format_trial_jsonl(const TrialRecord& r);
std::string format_level_csv_header();
std::string format_level_csv_row(const LevelSummary& s);

}  // namespace dires
