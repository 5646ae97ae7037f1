#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dires/digraph.hpp"

namespace dires {

// A subdigraph produced under the local-resilience deletion budget, with a
// per-vertex ledger proving compliance.
struct AdversaryOutcome {
  Digraph surviving;
  std::vector<int> deleted_out, deleted_in;
  std::vector<double> frac_out, frac_in;  // deleted fraction of original degree; 0 when degree 0
  double alpha = 0.0;                     // budget parameter, when the draw was alpha-based
  std::optional<std::pair<std::vector<int>, std::vector<int>>> split;  // for cut adversaries
};

using Bipartition = std::pair<std::vector<int>, std::vector<int>>;

// Deletes every arc oriented from V1 to V2. Part sizes must differ by at most
// one; without an explicit split a seeded balanced split is drawn. The
// surviving digraph is non-Hamiltonian whenever both parts are nonempty.
AdversaryOutcome bipartition_adversary(const Digraph& d, const std::optional<Bipartition>& split,
                                       std::uint64_t seed);

// Deletes arcs in a seeded random order; an arc (u,v) is deleted iff u still
// has out-budget and v still has in-budget, with budget
// floor((1/2 - alpha) * deg). Always feasible, possibly not maximal.
AdversaryOutcome random_budget_adversary(const Digraph& d, double alpha, std::uint64_t seed);

// Aims deletions at a random balanced cut until the (1/2 - alpha)-budgets
// bind. Sharper empirical upper bounds than the random adversary; this
// strategy is harness plumbing, not part of the resilience definition.
AdversaryOutcome greedy_cut_adversary(const Digraph& d, double alpha, std::uint64_t seed);

// Level-based variants for the resilience harness: at level r the adversary
// may delete at most r out-going and r in-going arcs per vertex.
AdversaryOutcome random_level_adversary(const Digraph& d, int level, std::uint64_t seed);
AdversaryOutcome cut_level_adversary(const Digraph& d, int level, std::uint64_t seed);

struct BudgetCheck {
  bool ok = true;
  int first_violator = -1;
};

// True iff deleted_out[u] <= floor((1/2-alpha)*deg_out(u)) and the in-analogue
// hold for every u of the original digraph.
BudgetCheck verify_budget(const Digraph& original, const AdversaryOutcome& outcome, double alpha);

}  // namespace dires
