#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dires/digraph.hpp"
#include "dires/steps.hpp"

namespace dires {

// Cyclic blow-up host for the random-walk experiments: r parts of size ell,
// arcs only between consecutive parts. The ambient digraph carries arc
// probability p; the stepped digraph keeps each arc with probability xi, so
// consecutive pairs have density d = xi*p. p = 1 gives the complete blow-up,
// on which every hypothesis holds exactly.
struct SyntheticHostSpec {
  int ell = 500;
  int r = 6;
  double p = 1.0;
  double xi = 1.0;
  double eps = 1e-3;
  double eps_prime = 1e-3;
  double forbidden_fraction = 0.25;
  double q1 = -1.0;  // <=0: max value allowed by the step lemmas
  double q2 = -1.0;  // <=0: 2 * ell * p
  int z_size = -1;   // <=0: lemma-specific default
  std::uint64_t seed = 0;
};

struct SyntheticHost {
  SyntheticHostSpec spec;
  Digraph ambient;   // D
  Digraph stepped;   // D' (walks use this one)
  std::vector<std::vector<int>> parts;
  std::vector<int> part_of;
  std::vector<char> forbidden;
  PartSlicedAdj adj;
  double d = 0.0, q1 = 0.0, q2 = 0.0;
};

SyntheticHost build_synthetic_host(const SyntheticHostSpec& spec);

enum class WalkLemma { two, three, four, two_upper, three_upper };

struct WalkProbReport {
  double empirical = 0.0;
  double bound = 0.0;
  bool lower_bound = true;
  bool respected = true;
  int trials = 0;
  long long hits = 0;
  std::string detail;
};

// Runs `trials` independent walks of 2..4 consecutive random forward steps
// from fresh nice starts and compares the hit frequency on the lemma's target
// set against its bound, within 3-sigma binomial error. Hypotheses are
// asserted before sampling; violations raise param_error naming the failed
// hypothesis.
WalkProbReport estimate_walk_probabilities(const SyntheticHostSpec& spec, WalkLemma lemma, int trials,
                                           std::uint64_t seed);

}  // namespace dires
