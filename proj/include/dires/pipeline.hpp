#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dires/digraph.hpp"
#include "dires/hamilton.hpp"
#include "dires/regularity.hpp"
#include "dires/steps.hpp"

namespace dires {

// Constants of the cycle-building pipeline. The ordering
// 0 < lambda < rho < eps_prime < xi < alpha is required; magnitudes are
// desk-scale choices, not the asymptotic chain, so stages are
// failure-transparent rather than guaranteed.
struct PipelineConfig {
  double alpha = 0.3;
  double xi = 0.2;
  double eps = 0.01;
  double eps_prime = 0.15;
  double rho = 0.01;
  double lambda = 0.005;
  int k = 20;

  // Degree-atypicality tolerance for the B census. Kept separate from eps:
  // with |deg - ell*p| measured in units of ell*p, desk-scale binomial spread
  // is far above eps*ell*p, so a single tolerance would classify every vertex
  // as atypical.
  double eps_atypical = 0.9;

  // Sampled small-set verdicts accept density deviations within noise_z
  // binomial sigmas on top of the definitional tolerance, and degree-profile
  // outlier counts up to the binomial quantile at tail small_set_fp; without
  // these guards the sub-density granularity at desk scale flags every
  // vertex of a random host.
  double noise_z = 6.0;
  double small_set_fp = 1e-9;
  int witness_budget = 200;     // candidate sets Q per badness clause
  int inner_reg_samples = 12;   // retained for sub-pair sampling budgets

  double reg_digraph_eps = 0.25;  // eps for the regularity-digraph verdicts
  int reg_digraph_samples = 400;

  // Stage-4 refuses leftovers above this fraction of n (the asymptotic
  // budget alpha^4 xi^3 n / 10^11 is unusable at desk scale; stage 2 parks
  // 3*eps'*ell vertices per part, which alone is 45% of n at the defaults).
  double stage4_leftover_cap = 0.6;

  void validate() const;  // throws param_error on ordering violations
};

// Quantities fixed once the host and partition are known.
struct DerivedParams {
  double p = 0.0;      // nominal arc probability of the ambient digraph
  double delta = 0.0;  // xi * p
  double q1 = 0.0;     // lambda * ell * p
  double q2 = 0.0;     // 2 * ell * p
  int ell = 0;
  int r = 0;
  int a0_size = 0;     // ceil(q1), at least 1
  double dangerous_part = 0.0;     // 100 rho ell p
  double dangerous_outside = 0.0;  // n p / 20
};

DerivedParams derive_params(const PipelineConfig& cfg, double p, int ell, int r, int n);

// ---------------------------------------------------------------------------
// Bad-vertex classifiers
// ---------------------------------------------------------------------------

struct Type1Verdict {
  bool bad = false;
  std::vector<int> witness;  // the set Q with no passing subset, when bad
  std::string clause;        // "out" (I.1) or "in" (I.2)
};

// Type-I badness of u with respect to the regular pair (X, Y): some sampled
// Q inside N+(u,X) (or N-(u,Y)) of size in [q1,q2] admits no large subset
// whose pair with the other side looks regular at eps' with density within
// (1 +- eps) of the pair density. One-sided and sampled: "bad" carries a
// witness, "not bad" is evidence.
Type1Verdict classify_bad_type1(const Digraph& dprime, int u, std::span<const int> x,
                                std::span<const int> y, const PipelineConfig& cfg,
                                const DerivedParams& dp, int witness_budget, std::uint64_t seed);

struct Type2Verdict {
  bool bad = false;
  std::vector<int> i_bad;  // all i-bad indices (always filled)
};

Type2Verdict classify_bad_type2(const Digraph& dprime, int u,
                                const std::vector<std::vector<int>>& parts,
                                const PipelineConfig& cfg, const DerivedParams& dp,
                                int witness_budget, std::uint64_t seed);

// Atypical-degree set B: u is in B iff for some part i the in- or out-degree
// of u into V_i (in the ORIGINAL digraph) deviates from ell*p by at least
// eps * ell * p.
std::vector<char> classify_atypical(const Digraph& d, const std::vector<std::vector<int>>& parts,
                                    double eps, double p);

struct BadCensus {
  std::vector<char> atypical;                // B
  std::vector<std::vector<char>> type1;      // type1[a][u]: bad wrt (V_a, V_{a+1})
  std::vector<char> type1_fwd;               // u in U_{part(u)}
  std::vector<char> type1_bwd;               // u in W_{part(u)}
  std::vector<char> type2;                   // T2
  std::vector<std::vector<char>> i_bad;      // i_bad[i][u]
  int b_size = 0, t1_size = 0, t2_size = 0;
};

// Full census over all vertices; per-u work fans out across the worker pool
// (deterministically seeded per vertex). The serial twin is the reference.
BadCensus compute_bad_census(const Digraph& d, const Digraph& dprime,
                             const std::vector<std::vector<int>>& parts, const PipelineConfig& cfg,
                             const DerivedParams& dp, std::uint64_t seed);
BadCensus compute_bad_census_serial(const Digraph& d, const Digraph& dprime,
                                    const std::vector<std::vector<int>>& parts,
                                    const PipelineConfig& cfg, const DerivedParams& dp,
                                    std::uint64_t seed);

// ---------------------------------------------------------------------------
// Absorption indices (stage-2/4 analysis)
// ---------------------------------------------------------------------------

struct AbsorptionIndices {
  bool ok = false;
  std::vector<int> indices;
  bool hypothesis_ok = true;  // the size hypothesis r ell (1-a/4-2/r)(1-e-a/2) >= (1-a) n
  std::string diagnostics;    // which filter starved, when !ok
};

// Greedy construction of I_u: indices i with u outside V_i and V_{i+1}, both
// surviving degrees at least alpha*ell*p/2, cyclic separation >= 5, skipping
// i-bad indices; needs alpha*r/40 of them. The size hypothesis is checked and
// reported but the construction still runs when it fails.
AbsorptionIndices find_absorption_indices(const Digraph& d, const Digraph& dprime, int u,
                                          const std::vector<std::vector<int>>& parts,
                                          const PipelineConfig& cfg, const DerivedParams& dp,
                                          const std::vector<char>& i_bad_for_u);

// ---------------------------------------------------------------------------
// Stages
// ---------------------------------------------------------------------------

struct StepRecord {
  int stage = 0;
  std::string kind;
  int from = -1, to = -1;
  int part_index = -1;
  int path_len = 0;
};

std::string format_step_jsonl(const StepRecord& r);

struct StageFailure {
  int stage = 0;
  std::string hypothesis;  // failed precondition / assertion, machine-binnable
  std::string detail;
  long long iteration = -1;
};

struct PipelineResult {
  bool ok = false;
  Cycle cycle;
  StageFailure failure;
  int r = 0, ell = 0;
  int census_b = 0, census_t1 = 0, census_t2 = 0;
  int p1_len = 0, p2_len = 0, cycle_len = 0, leftover = 0;
  long long stage2_steps = 0;
  bool stage1_assertions_ok = false;
  long long min_absorbing_arcs = -1;  // over u outside P2, after stage 2
  std::vector<std::string> warnings;
  double runtime_sec = 0.0;
};

// Drives stages 1-4 on a prepared host: D' with a part cycle V_0..V_{r-1}.
class PipelineRun {
 public:
  PipelineRun(const Digraph& d, const Digraph& dprime, std::vector<std::vector<int>> cycle_parts,
              const PipelineConfig& cfg, double p, std::uint64_t seed,
              std::vector<StepRecord>* trace = nullptr);
  ~PipelineRun();
  PipelineRun(const PipelineRun&) = delete;
  PipelineRun& operator=(const PipelineRun&) = delete;

  const BadCensus& census() const;
  const DerivedParams& params() const;

  bool stage1();  // absorb problematic vertices into P1
  bool stage2();  // extend to an almost spanning path
  bool stage3();  // close into a cycle
  bool stage4();  // absorb the leftover via a saturating matching

  PipelineResult run();  // all four stages

  // state accessors (tests)
  const std::vector<int>& path() const;
  const std::vector<int>& reserve_a0() const;
  int anchor() const;
  int frontier() const;
  const StageFailure& failure() const;
  const Cycle& cycle() const;

 private:
  struct Impl;
  Impl* impl_;
};

// Stage 4 as a standalone operation: splice every leftover vertex into the
// cycle via a matching between leftovers and absorbable arcs.
struct Stage4Result {
  bool ok = false;
  Cycle cycle;
  std::vector<int> hall_violator;  // leftover vertices without enough arcs
  std::string failure;
};

Stage4Result stage4_absorb(const Digraph& dprime, const Cycle& c, std::vector<int> leftover,
                           double leftover_cap_fraction);

// Full experiment: D(n,p) -> random-budget adversary(alpha) -> partition ->
// regularity digraph -> reduced cycle -> stages 1-4 -> validated Hamilton
// cycle of the surviving digraph.
PipelineResult run_pipeline_experiment(int n, double p, const PipelineConfig& cfg,
                                       std::uint64_t seed, std::vector<StepRecord>* trace = nullptr);

}  // namespace dires
