#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dires/digraph.hpp"

namespace dires {

// Exceptional set v0 plus k parts of equal size ell.
struct Partition {
  int n = 0;
  int ell = 0;
  std::vector<int> v0;
  std::vector<std::vector<int>> parts;

  int k() const { return static_cast<int>(parts.size()); }
};

// Seeded equitable partition: ell = floor(n/k), |v0| = n - k*ell < k.
Partition equitable_partition(const Digraph& d, int k, std::uint64_t seed);

// Format: line 1 "partition <n> <k> <ell>"; line 2 the v0 members
// (possibly empty); then k lines with the members of each part.
void write_partition(const Partition& p, const std::string& path);
Partition read_partition(const std::string& path);
std::string write_partition_text(const Partition& p);
Partition read_partition_text(const std::string& text);

enum class RegMode { exhaustive, sampled };

struct RegParams {
  double eps = 0.1;
  // Deviation scale: the pair is regular when every admissible sub-density
  // stays within eps*scale of the pair density. scale <= 0 means "use the
  // pair's own density" (the plain eps-regular convention).
  double scale = -1.0;
  RegMode mode = RegMode::sampled;
  int samples = 500;        // sampled subset pairs
  double noise_z = 4.0;     // sampled witnesses must clear this many binomial
                            // sigmas on top of eps*scale; 0 restores the
                            // literal definition
  std::uint64_t seed = 0;
};

struct RegularityVerdict {
  bool regular = true;
  double density = 0.0;
  double worst_dev = 0.0;  // largest |d(X,Y) - d(A,B)| seen
  RegMode mode = RegMode::exhaustive;
  std::optional<std::pair<std::vector<int>, std::vector<int>>> witness;
};

// Exhaustive mode enumerates every subset pair with |X| >= eps|A|,
// |Y| >= eps|B| (and at least one vertex each) and is exact; it requires
// |A|,|B| <= 12. Sampled mode probes seeded subset pairs on the
// {eps|A|, |A|/2, |A|} x {eps|B|, |B|/2, |B|} grid plus degree-outlier
// candidate sets; its witnesses prove irregularity, its "regular" is
// evidence, not proof.
RegularityVerdict is_regular_pair(const Digraph& d, std::span<const int> a, std::span<const int> b,
                                  const RegParams& params);

struct BoundednessReport {
  bool bounded = true;
  double worst_ratio = 0.0;  // max e(A,B) / (p |A| |B|) observed
};

// Samples seeded disjoint pairs with |A|,|B| >= eta*n and checks
// e(A,B) <= L p |A| |B|.
BoundednessReport check_boundedness(const Digraph& d, double eta, double L, double p, int samples,
                                    std::uint64_t seed);

struct OutlierCensus {
  int out_high = 0;  // x in A with deg+(x,B) > (1+eps) d |B|
  int out_low = 0;   // x in A with deg+(x,B) < (1-eps) d |B|
  int in_high = 0;   // y in B with deg-(y,A) > (1+eps) d |A|
  int in_low = 0;    // y in B with deg-(y,A) < (1-eps) d |A|
};

OutlierCensus degree_outlier_census(const Digraph& d, std::span<const int> a, std::span<const int> b,
                                    double eps, double dens);

// For each listed ordered part pair, uniformly subsamples its arc set down to
// exactly m_t arcs; all other arcs are untouched. Every listed pair then
// carries common density m_t / ell^2.
Digraph equalize_densities(const Digraph& d, const Partition& p,
                           const std::vector<std::pair<int, int>>& pair_list, long long m_t,
                           std::uint64_t seed);

// Documented lower bound on m_t: equalize_densities requires
// m_t >= kGsMinArcFactor * 2 * ell (the subgraph must keep a constant number
// of arcs per vertex of the pair).
inline constexpr int kGsMinArcFactor = 4;

struct RegularityDigraph {
  int k = 0;
  std::vector<std::vector<double>> density;  // density[i][j] < 0 when (i,j) is not an arc

  bool has_arc(int i, int j) const { return i != j && density[i][j] >= 0.0; }
  int arc_count() const {
    int c = 0;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (has_arc(i, j)) ++c;
    return c;
  }
};

// Arc (i,j) iff (V_i,V_j) is judged regular with directed density >= delta.
// Pair verdicts are independent and evaluated in parallel with per-pair
// derived seeds.
RegularityDigraph build_regularity_digraph(const Digraph& d, const Partition& p, double delta,
                                           const RegParams& params);
RegularityDigraph build_regularity_digraph_serial(const Digraph& d, const Partition& p, double delta,
                                                  const RegParams& params);

struct ReducedCycleResult {
  bool ok = false;
  std::vector<int> cycle;  // part indices (0-based)
  std::string failure;
};

// Peels vertices of R with out- or in-degree < k/2 (k = the ORIGINAL part
// count), then finds a Hamilton cycle of the surviving digraph via the
// constructive min-degree solver. Fails when peeling empties R.
ReducedCycleResult reduced_hamilton_cycle(const RegularityDigraph& r);

}  // namespace dires
