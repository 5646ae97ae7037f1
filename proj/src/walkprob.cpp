#include "dires/walkprob.hpp"

#include <algorithm>
#include <cmath>

#include "dires/steps.hpp"

namespace dires {

namespace {

Digraph blowup_digraph(int r, int ell, double arc_prob, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "blowup"));
  std::vector<std::pair<int, int>> arcs;
  for (int i = 0; i < r; ++i) {
    int j = (i + 1) % r;
    for (int a = 0; a < ell; ++a)
      for (int b = 0; b < ell; ++b)
        if (arc_prob >= 1.0 || rng.bernoulli(arc_prob)) arcs.emplace_back(i * ell + a, j * ell + b);
  }
  return Digraph::from_arcs(r * ell, std::move(arcs));
}

Digraph thin_arcs(const Digraph& d, double keep, std::uint64_t seed) {
  if (keep >= 1.0) return d;
  Rng rng(derive_seed(seed, "thin"));
  std::vector<std::pair<int, int>> arcs;
  for (auto arc : d.arcs())
    if (rng.bernoulli(keep)) arcs.push_back(arc);
  return Digraph::from_arcs(d.n(), std::move(arcs));
}

}  // namespace

SyntheticHost build_synthetic_host(const SyntheticHostSpec& spec) {
  if (spec.r < 6) throw param_error("synthetic host: need r >= 6");
  if (spec.ell < 4) throw param_error("synthetic host: need ell >= 4");
  SyntheticHost host;
  host.spec = spec;
  host.ambient = blowup_digraph(spec.r, spec.ell, spec.p, spec.seed);
  host.stepped = thin_arcs(host.ambient, spec.xi, derive_seed(spec.seed, "host-xi"));
  host.parts.resize(spec.r);
  host.part_of.assign(spec.r * spec.ell, -1);
  for (int i = 0; i < spec.r; ++i) {
    host.parts[i].resize(spec.ell);
    for (int a = 0; a < spec.ell; ++a) {
      host.parts[i][a] = i * spec.ell + a;
      host.part_of[i * spec.ell + a] = i;
    }
  }
  host.forbidden.assign(spec.r * spec.ell, 0);
  int fcount = static_cast<int>(std::floor(spec.forbidden_fraction * spec.ell));
  Rng rng(derive_seed(spec.seed, "host-forbidden"));
  for (int i = 0; i < spec.r; ++i) {
    auto picks = rng.sample_indices(spec.ell, fcount);
    for (int a : picks) host.forbidden[i * spec.ell + a] = 1;
  }
  host.d = spec.xi * spec.p;
  host.q1 = spec.q1 > 0 ? spec.q1
                        : (1.0 - spec.eps_prime) * (1.0 - spec.eps) * host.d * spec.eps_prime * spec.ell;
  host.q2 = spec.q2 > 0 ? spec.q2 : 2.0 * spec.ell * spec.p;
  host.adj = build_part_sliced(host.stepped, host.part_of, spec.r);
  return host;
}

namespace {

HostView make_view(const SyntheticHost& host) {
  HostView hv;
  hv.d = &host.stepped;
  hv.parts = &host.parts;
  hv.part_of = &host.part_of;
  hv.adj = &host.adj;
  hv.r = host.spec.r;
  hv.ell = host.spec.ell;
  hv.dens = host.d;
  hv.eps = host.spec.eps;
  hv.eps_prime = host.spec.eps_prime;
  hv.q1 = host.q1;
  hv.q2 = host.q2;
  return hv;
}

void require(bool cond, const std::string& what) {
  if (!cond) throw param_error("walk lemma hypothesis failed: " + what);
}

// Structural hypotheses shared by all five lemmas. Regularity of the
// consecutive pairs holds by construction (independent uniform arcs); the
// density declarations are noise-checked rather than exactly asserted.
void assert_common(const SyntheticHost& host, double forbid_cap_fraction) {
  const auto& spec = host.spec;
  require(spec.eps <= spec.eps_prime && spec.eps_prime <= 1e-3, "eps <= eps' <= 1e-3");
  require(host.q1 <= (1.0 - spec.eps_prime) * (1.0 - spec.eps) * host.d * spec.eps_prime * spec.ell,
          "q1 <= (1-eps')(1-eps) d eps' ell");
  int fcount = static_cast<int>(std::floor(spec.forbidden_fraction * spec.ell));
  require(fcount <= forbid_cap_fraction * spec.ell, "|V_i cap X| cap");
  for (int u = 0; u < host.stepped.n(); ++u) {
    if (host.forbidden[u]) continue;
    for (int j = 0; j < spec.r; ++j) {
      require(host.adj.out_deg(u, j) <= host.q2, "deg+(v, V_i) <= q2");
    }
  }
}

}  // namespace

WalkProbReport estimate_walk_probabilities(const SyntheticHostSpec& spec, WalkLemma lemma, int trials,
                                           std::uint64_t seed) {
  SyntheticHost host = build_synthetic_host(spec);
  HostView hv = make_view(host);
  const int ell = spec.ell;
  const double p = spec.p, xi = spec.xi, d = host.d;

  int steps = 0;
  std::vector<int> z_sizes;  // one or two target sets
  int target_part_offset = 0;
  switch (lemma) {
    case WalkLemma::two:
      assert_common(host, 1.0 - spec.eps_prime);
      steps = 2;
      target_part_offset = 2;
      z_sizes = {spec.z_size > 0 ? spec.z_size
                                 : std::max(1, static_cast<int>(std::ceil(2 * spec.eps_prime * ell)))};
      require(z_sizes[0] >= 2 * spec.eps_prime * ell, "|Z| >= 2 eps' ell");
      break;
    case WalkLemma::three:
      assert_common(host, 2.0 / 3.0);
      steps = 3;
      target_part_offset = 3;
      z_sizes = {spec.z_size > 0 ? spec.z_size : std::max(1, static_cast<int>(std::ceil(host.q1)))};
      require(z_sizes[0] >= host.q1 && z_sizes[0] <= host.q2, "q1 <= |Z| <= q2");
      break;
    case WalkLemma::four:
      assert_common(host, 2.0 / 3.0);
      steps = 4;
      target_part_offset = 3;  // Z1 three steps ahead, Z2 four
      {
        int zs = spec.z_size > 0 ? spec.z_size
                                 : std::max(1, static_cast<int>(std::ceil(2 * host.q1)));
        z_sizes = {zs, zs};
        require(zs >= 2 * host.q1 && zs <= host.q2, "2 q1 <= |Z_i| <= q2");
      }
      break;
    case WalkLemma::two_upper:
      assert_common(host, 2.0 / 3.0);
      require(xi < 1.0 || p < 1.0, "upper bounds need d = xi p with p < 1");
      steps = 2;
      target_part_offset = 2;
      z_sizes = {std::max(1, static_cast<int>(std::llround(ell * std::pow(p, 1.5)))),
                 std::max(1, static_cast<int>(std::llround(ell * p)))};
      break;
    case WalkLemma::three_upper:
      assert_common(host, 2.0 / 3.0);
      steps = 3;
      target_part_offset = 3;
      z_sizes = {spec.z_size > 0 ? spec.z_size : std::max(1, static_cast<int>(std::llround(2 * ell * p)))};
      break;
  }

  // Target sets live in V_{s + offset} \ X with s = 0.
  Rng zrng(derive_seed(seed, "walk-z"));
  const int zpart = target_part_offset % spec.r;
  std::vector<int> free_z;
  for (int v : host.parts[zpart])
    if (!host.forbidden[v]) free_z.push_back(v);
  std::vector<std::vector<char>> z_flags;
  for (std::size_t zi = 0; zi < z_sizes.size(); ++zi) {
    bool second_set_next_part = (lemma == WalkLemma::four && zi == 1);
    std::vector<int> pool = free_z;
    if (second_set_next_part) {
      pool.clear();
      for (int v : host.parts[(zpart + 1) % spec.r])
        if (!host.forbidden[v]) pool.push_back(v);
    }
    if (z_sizes[zi] > static_cast<int>(pool.size()))
      throw param_error("walk lemma: |Z| exceeds the free part");
    auto picks = zrng.sample_indices(static_cast<int>(pool.size()), z_sizes[zi]);
    std::vector<char> flags(host.stepped.n(), 0);
    for (int idx : picks) flags[pool[idx]] = 1;
    z_flags.push_back(std::move(flags));
  }

  // Fresh nice start in V_0 \ X per trial.
  std::vector<int> nice_starts;
  for (int v : host.parts[0])
    if (!host.forbidden[v] && is_nice(hv, v, host.forbidden)) nice_starts.push_back(v);
  if (nice_starts.empty()) throw param_error("walk lemma: no nice start vertices");

  Rng rng(derive_seed(seed, "walk-trials"));
  long long hits = 0, hits_b = 0, completed = 0;
  for (int t = 0; t < trials; ++t) {
    int x = nice_starts[rng.below_int(static_cast<int>(nice_starts.size()))];
    std::vector<int> visited;
    bool dead = false;
    for (int s = 0; s < steps; ++s) {
      auto step = random_forward_step(hv, x, host.forbidden, rng);
      if (!step.ok) {
        dead = true;
        break;
      }
      x = step.vertex;
      visited.push_back(x);
    }
    if (dead) continue;
    ++completed;
    bool hit = false;
    switch (lemma) {
      case WalkLemma::two:
      case WalkLemma::three:
      case WalkLemma::three_upper:
        hit = z_flags[0][visited[steps - 1]];
        break;
      case WalkLemma::two_upper:
        hit = z_flags[0][visited[1]];          // clause (a): Z1 of size ell p^{3/2}
        hits_b += z_flags[1][visited[1]];      // clause (b): Z2 of size ell p
        break;
      case WalkLemma::four:
        hit = z_flags[0][visited[2]] && z_flags[1][visited[3]];
        break;
    }
    hits += hit;
  }

  WalkProbReport rep;
  rep.trials = static_cast<int>(completed);
  rep.hits = hits;
  rep.empirical = completed > 0 ? static_cast<double>(hits) / completed : 0.0;
  const int free_target = free_part_size(hv, zpart, host.forbidden);
  switch (lemma) {
    case WalkLemma::two:
      rep.lower_bound = true;
      rep.bound = (0.99 * z_sizes[0] - spec.eps_prime * ell) / free_target;
      break;
    case WalkLemma::three:
      rep.lower_bound = true;
      rep.bound = 0.95 * z_sizes[0] / ell;
      break;
    case WalkLemma::four:
      rep.lower_bound = true;
      rep.bound = static_cast<double>(z_sizes[0]) * z_sizes[1] / (2.0 * ell * static_cast<double>(ell));
      break;
    case WalkLemma::two_upper:
      rep.lower_bound = false;
      rep.bound = 44.0 / (xi * xi) * p;
      break;
    case WalkLemma::three_upper:
      rep.lower_bound = false;
      rep.bound = 3000.0 / (xi * xi * xi) * p;
      break;
  }
  double sigma = std::sqrt(std::max(rep.bound * (1.0 - std::min(rep.bound, 1.0)), 1e-12) /
                           std::max<long long>(completed, 1));
  rep.respected = rep.lower_bound ? rep.empirical >= rep.bound - 3.0 * sigma
                                  : rep.empirical <= rep.bound + 3.0 * sigma;
  rep.detail = "completed " + std::to_string(completed) + "/" + std::to_string(trials) + " walks";
  if (lemma == WalkLemma::two_upper) {
    double emp_b = completed > 0 ? static_cast<double>(hits_b) / completed : 0.0;
    double bound_b = 44.0 / (xi * xi) * std::sqrt(p);
    double sigma_b = std::sqrt(std::max(bound_b * (1.0 - std::min(bound_b, 1.0)), 1e-12) /
                               std::max<long long>(completed, 1));
    rep.respected = rep.respected && emp_b <= bound_b + 3.0 * sigma_b;
    rep.detail += "; clause (b): " + std::to_string(emp_b) + " vs " + std::to_string(bound_b);
  }
  return rep;
}

}  // namespace dires
