#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dires/digraph.hpp"

namespace dires {

// Directed cycle v_0 -> v_1 -> ... -> v_{k-1} -> v_0 (closing arc implied).
struct Cycle {
  std::vector<int> order;
};

struct SolverBudget {
  int max_vertices_exact = 20;        // Held-Karp cutoff (subset DP table size)
  std::uint64_t node_limit = 50'000'000;  // backtracking nodes before 'unknown'
  // Wall-clock limit in ms; 0 disables it. Node budgets keep verdicts
  // deterministic, so the default limiter is node_limit.
  std::int64_t time_limit_ms = 0;
};

enum class SolveStatus { cycle, none, unknown };

struct SolveResult {
  SolveStatus status = SolveStatus::unknown;
  Cycle cycle;                 // valid iff status == cycle
  std::uint64_t nodes = 0;     // search effort
  std::string reason;          // diagnostics for 'unknown'
};

// Exact Hamiltonicity: 'none' is returned only when the search space was
// exhausted; hitting a budget yields 'unknown', never a wrong verdict.
// Held-Karp subset DP up to budget.max_vertices_exact vertices, pruned
// backtracking beyond.
SolveResult exact_hamilton(const Digraph& d, const SolverBudget& budget = {});

// Constructive solver for digraphs with min out- and in-degree >= n/2:
// start from any cycle, repeatedly insert outside vertices between
// consecutive cycle vertices (lowest-index slot), fall back to two-vertex
// insertion and finally to the exact solver. Throws param_error when the
// degree precondition fails.
Cycle ghouila_houri_cycle(const Digraph& d);

struct CycleCheck {
  bool ok = true;
  std::string problem;  // first missing arc or duplicate vertex
};

CycleCheck validate_cycle(const Digraph& d, const Cycle& c, bool require_hamilton);

// Maximum bipartite matching (augmenting paths) with a Hall certificate:
// either a matching saturating the left side, or a deficient set S with
// |N(S)| < |S| extracted from the final alternating-reachability structure.
struct HallResult {
  bool saturating = false;
  std::vector<int> match_for_left;   // right index per left vertex, -1 if unmatched
  std::vector<int> deficient_set;    // left indices; nonempty iff !saturating
};

HallResult hall_matching(int n_left, int n_right, const std::vector<std::vector<int>>& adj);

}  // namespace dires
