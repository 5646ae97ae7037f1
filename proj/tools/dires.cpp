// Command-line front end: generation, adversaries, solvers, regularity
// audits, the cycle-building pipeline, the resilience harness, lemma
// censuses, and walk-probability validation.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dires/adversary.hpp"
#include "dires/digraph.hpp"
#include "dires/hamilton.hpp"
#include "dires/parallel.hpp"
#include "dires/pipeline.hpp"
#include "dires/regularity.hpp"
#include "dires/resilience.hpp"
#include "dires/walkprob.hpp"

namespace {

int log_level() {
  const char* env = std::getenv("DIRES_LOG");
  if (!env) return 1;
  std::string v = env;
  if (v == "error") return 0;
  if (v == "debug") return 2;
  return 1;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[dires] " << msg << "\n";
}

bool g_no_timestamp = false;

std::string timestamp_header(const std::string& what) {
  if (g_no_timestamp) return "";
  std::time_t now = std::time(nullptr);
  char buf[64];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return "# dires " + what + " generated " + std::string(buf) + "\n";
}

void banner(const std::string& sub, const std::string& config, std::uint64_t seed) {
  log_info(sub + " " + config + " master_seed=" + std::to_string(seed) +
           " jobs=" + std::to_string(dires::effective_jobs()));
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw dires::param_error("cannot open output file " + path);
  f << text;
}

std::string cycle_to_string(const dires::Cycle& c) {
  std::string s;
  for (std::size_t i = 0; i < c.order.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(c.order[i]);
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"digraph resilience workbench"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI config file (section per subcommand)");
  int jobs = 0;
  app.add_option("--jobs", jobs, "worker pool size (0 = hardware)" )->capture_default_str();
  app.add_flag("--no-timestamp", g_no_timestamp, "suppress timestamp header lines in outputs");

  // ---- gen
  auto* gen = app.add_subcommand("gen", "generate a random digraph D(n,p)");
  int gen_n = 100;
  double gen_p = 0.5;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "vertex count")->required();
  gen->add_option("--p", gen_p, "arc probability")->required();
  gen->add_option("--seed", gen_seed, "master seed")->required();
  gen->add_option("--out", gen_out, "output digraph file")->required();

  // ---- stats
  auto* stats = app.add_subcommand("stats", "degree summary of a digraph file");
  std::string stats_in;
  stats->add_option("--in", stats_in, "input digraph file")->required();

  // ---- delete
  auto* del = app.add_subcommand("delete", "apply a budgeted adversary");
  std::string del_in, del_out, del_adversary = "random";
  double del_alpha = 0.3;
  std::uint64_t del_seed = 0;
  del->add_option("--in", del_in)->required();
  del->add_option("--out", del_out)->required();
  del->add_option("--adversary", del_adversary, "random | bipartition | cut")
      ->check(CLI::IsMember({"random", "bipartition", "cut"}))
      ->capture_default_str();
  del->add_option("--alpha", del_alpha, "budget parameter in (0, 1/2]")->capture_default_str();
  del->add_option("--seed", del_seed)->required();

  // ---- solve
  auto* solve = app.add_subcommand("solve", "decide/construct a Hamilton cycle");
  std::string solve_in, solver = "exact";
  int solve_max_exact = 20;
  std::uint64_t solve_nodes = 50'000'000;
  solve->add_option("--in", solve_in)->required();
  solve->add_option("--solver", solver, "exact | gh")
      ->check(CLI::IsMember({"exact", "gh"}))
      ->capture_default_str();
  solve->add_option("--max-exact", solve_max_exact, "Held-Karp cutoff")->capture_default_str();
  solve->add_option("--node-limit", solve_nodes)->capture_default_str();

  // ---- regularity
  auto* reg = app.add_subcommand("regularity", "partition and pair audits");
  std::string reg_in, reg_partition_out;
  int reg_k = 20, reg_samples = 500;
  std::uint64_t reg_seed = 0;
  double reg_eps = 0.25, reg_scale = -1.0, reg_delta = -1.0;
  std::string reg_mode = "sampled";
  std::vector<int> reg_pair;
  bool reg_rdigraph = false, reg_bounded = false;
  double reg_eta = 0.1, reg_L = 1.5, reg_p = -1.0;
  reg->add_option("--in", reg_in)->required();
  reg->add_option("--k", reg_k)->capture_default_str();
  reg->add_option("--seed", reg_seed)->required();
  reg->add_option("--eps", reg_eps)->capture_default_str();
  reg->add_option("--scale", reg_scale, "deviation scale p (<=0: pair density)");
  reg->add_option("--delta", reg_delta, "density threshold for the regularity digraph");
  reg->add_option("--mode", reg_mode)->check(CLI::IsMember({"sampled", "exhaustive"}));
  reg->add_option("--samples", reg_samples)->capture_default_str();
  reg->add_option("--pair", reg_pair, "audit one ordered part pair i j")->expected(2);
  reg->add_flag("--rdigraph", reg_rdigraph, "build the regularity digraph and reduced cycle");
  reg->add_flag("--bounded", reg_bounded, "run the boundedness audit");
  reg->add_option("--eta", reg_eta)->capture_default_str();
  reg->add_option("--L", reg_L)->capture_default_str();
  reg->add_option("--p", reg_p, "nominal arc probability for audits");
  reg->add_option("--partition-out", reg_partition_out, "write the partition file");

  // ---- pipeline
  auto* pipe = app.add_subcommand("pipeline", "run the four-stage cycle builder");
  int pipe_n = 3000;
  double pipe_p = 0.15;
  std::uint64_t pipe_seed = 0;
  std::string pipe_trace, pipe_out;
  dires::PipelineConfig pcfg;
  pipe->add_option("--n", pipe_n)->capture_default_str();
  pipe->add_option("--p", pipe_p)->capture_default_str();
  pipe->add_option("--seed", pipe_seed)->required();
  pipe->add_option("--alpha", pcfg.alpha)->capture_default_str();
  pipe->add_option("--xi", pcfg.xi)->capture_default_str();
  pipe->add_option("--eps", pcfg.eps)->capture_default_str();
  pipe->add_option("--eps-prime", pcfg.eps_prime)->capture_default_str();
  pipe->add_option("--rho", pcfg.rho)->capture_default_str();
  pipe->add_option("--lambda", pcfg.lambda)->capture_default_str();
  pipe->add_option("--eps-atypical", pcfg.eps_atypical)->capture_default_str();
  pipe->add_option("--k", pcfg.k)->capture_default_str();
  pipe->add_option("--witness-budget", pcfg.witness_budget)->capture_default_str();
  pipe->add_option("--noise-z", pcfg.noise_z)->capture_default_str();
  pipe->add_option("--leftover-cap", pcfg.stage4_leftover_cap)->capture_default_str();
  pipe->add_option("--trace", pipe_trace, "JSONL step trace output");
  pipe->add_option("--out", pipe_out, "JSON result output");

  // ---- resilience
  auto* resil = app.add_subcommand("resilience", "bracket the local resilience");
  int res_n = 16, res_trials = 100, res_max_exact = 20;
  double res_p = 0.9;
  std::uint64_t res_seed = 0;
  std::string res_adversary = "both", res_out, res_records;
  std::vector<int> res_levels;
  resil->add_option("--n", res_n)->capture_default_str();
  resil->add_option("--p", res_p)->capture_default_str();
  resil->add_option("--trials", res_trials, "trials per level")->capture_default_str();
  resil->add_option("--seed", res_seed)->required();
  resil->add_option("--adversary", res_adversary)
      ->check(CLI::IsMember({"random", "cut", "both"}))
      ->capture_default_str();
  resil->add_option("--levels", res_levels, "explicit level grid (default 0..ceil(0.8 np))");
  resil->add_option("--max-exact", res_max_exact)->capture_default_str();
  resil->add_option("--out", res_out, "summary CSV per level");
  resil->add_option("--records", res_records, "JSONL per-trial records");

  // ---- census
  auto* cen = app.add_subcommand("census", "probabilistic-lemma censuses");
  std::string cen_which, cen_in, cen_out;
  int cen_n = 2000, cen_samples = 50, cen_ell = 0, cen_set_size = 50;
  double cen_p = 0.1, cen_c = 0.2, cen_eps = 0.1, cen_beta = 0.2;
  std::uint64_t cen_seed = 0;
  cen->add_option("--which", cen_which, "bad_set | degree_excess | absorbing_pairs")
      ->check(CLI::IsMember({"bad_set", "degree_excess", "absorbing_pairs"}))
      ->required();
  cen->add_option("--in", cen_in, "input digraph (default: generate D(n,p))");
  cen->add_option("--n", cen_n)->capture_default_str();
  cen->add_option("--p", cen_p)->capture_default_str();
  cen->add_option("--seed", cen_seed)->required();
  cen->add_option("--samples", cen_samples)->capture_default_str();
  cen->add_option("--c", cen_c, "bad_set: min |Y| fraction; degree_excess: clause-1 floor")
      ->capture_default_str();
  cen->add_option("--eps", cen_eps)->capture_default_str();
  cen->add_option("--ell", cen_ell, "degree_excess: ell (default n/20)");
  cen->add_option("--set-size", cen_set_size, "absorbing_pairs: |S| = |T|")->capture_default_str();
  cen->add_option("--beta", cen_beta, "absorbing_pairs: bound coefficient")->capture_default_str();
  cen->add_option("--out", cen_out, "CSV output");

  // ---- walkprob
  auto* walk = app.add_subcommand("walkprob", "walk-probability validation");
  std::string walk_lemma;
  int walk_trials = 10000;
  std::uint64_t walk_seed = 0;
  dires::SyntheticHostSpec wspec;
  walk->add_option("--lemma", walk_lemma, "two | three | four | two_upper | three_upper")
      ->check(CLI::IsMember({"two", "three", "four", "two_upper", "three_upper"}))
      ->required();
  walk->add_option("--trials", walk_trials)->capture_default_str();
  walk->add_option("--seed", walk_seed)->required();
  walk->add_option("--ell", wspec.ell)->capture_default_str();
  walk->add_option("--r", wspec.r)->capture_default_str();
  walk->add_option("--p", wspec.p)->capture_default_str();
  walk->add_option("--xi", wspec.xi)->capture_default_str();
  walk->add_option("--forbidden-frac", wspec.forbidden_fraction)->capture_default_str();
  walk->add_option("--z-size", wspec.z_size)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  dires::set_jobs(jobs);

  try {
    if (*gen) {
      banner("gen", "n=" + std::to_string(gen_n) + " p=" + std::to_string(gen_p), gen_seed);
      auto d = dires::Digraph::random(gen_n, gen_p, gen_seed);
      dires::write_digraph(d, gen_out);
      log_info("wrote " + gen_out + " with m=" + std::to_string(d.m()));
    } else if (*stats) {
      auto d = dires::read_digraph(stats_in);
      auto s = dires::degree_stats(d);
      std::cout << "n " << d.n() << "\nm " << d.m() << "\nmin_out " << s.min_out << "\nmin_in "
                << s.min_in << "\nmax_out " << s.max_out << "\nmax_in " << s.max_in << "\n";
    } else if (*del) {
      banner("delete", "adversary=" + del_adversary + " alpha=" + std::to_string(del_alpha),
             del_seed);
      auto d = dires::read_digraph(del_in);
      dires::AdversaryOutcome out;
      if (del_adversary == "random")
        out = dires::random_budget_adversary(d, del_alpha, del_seed);
      else if (del_adversary == "bipartition")
        out = dires::bipartition_adversary(d, std::nullopt, del_seed);
      else
        out = dires::greedy_cut_adversary(d, del_alpha, del_seed);
      dires::write_digraph(out.surviving, del_out);
      long long deleted = d.m() - out.surviving.m();
      double max_frac = 0.0;
      for (int u = 0; u < d.n(); ++u)
        max_frac = std::max({max_frac, out.frac_out[u], out.frac_in[u]});
      std::cout << "deleted " << deleted << "\nmax_deletion_fraction " << max_frac << "\n";
    } else if (*solve) {
      auto d = dires::read_digraph(solve_in);
      if (solver == "exact") {
        dires::SolverBudget budget;
        budget.max_vertices_exact = solve_max_exact;
        budget.node_limit = solve_nodes;
        auto res = dires::exact_hamilton(d, budget);
        if (res.status == dires::SolveStatus::cycle) {
          std::cout << "hamiltonian " << cycle_to_string(res.cycle) << "\n";
        } else if (res.status == dires::SolveStatus::none) {
          std::cout << "non_hamiltonian\n";
          return 1;
        } else {
          std::cout << "unknown " << res.reason << "\n";
          return 1;
        }
      } else {
        auto c = dires::ghouila_houri_cycle(d);
        std::cout << "hamiltonian " << cycle_to_string(c) << "\n";
      }
    } else if (*reg) {
      banner("regularity", "k=" + std::to_string(reg_k), reg_seed);
      auto d = dires::read_digraph(reg_in);
      auto partition = dires::equitable_partition(d, reg_k, reg_seed);
      if (!reg_partition_out.empty()) dires::write_partition(partition, reg_partition_out);
      dires::RegParams rp;
      rp.eps = reg_eps;
      rp.scale = reg_scale;
      rp.mode = reg_mode == "sampled" ? dires::RegMode::sampled : dires::RegMode::exhaustive;
      rp.samples = reg_samples;
      rp.seed = reg_seed;
      if (reg_pair.size() == 2) {
        auto v = dires::is_regular_pair(d, partition.parts.at(reg_pair[0]),
                                        partition.parts.at(reg_pair[1]), rp);
        std::cout << "pair " << reg_pair[0] << " " << reg_pair[1] << " regular "
                  << (v.regular ? 1 : 0) << " density " << v.density << " worst_dev "
                  << v.worst_dev << "\n";
      }
      if (reg_bounded) {
        double p_for_audit = reg_p > 0 ? reg_p : 0.5;
        auto rep = dires::check_boundedness(d, reg_eta, reg_L, p_for_audit, reg_samples, reg_seed);
        std::cout << "bounded " << (rep.bounded ? 1 : 0) << " worst_ratio " << rep.worst_ratio
                  << "\n";
      }
      if (reg_rdigraph) {
        double delta = reg_delta > 0 ? reg_delta : 0.0;
        auto r = dires::build_regularity_digraph(d, partition, delta, rp);
        std::cout << "rdigraph_arcs " << r.arc_count() << " of " << r.k * (r.k - 1) << "\n";
        auto red = dires::reduced_hamilton_cycle(r);
        if (red.ok) {
          std::cout << "reduced_cycle_length " << red.cycle.size() << "\n";
        } else {
          std::cout << "reduced_cycle_failure " << red.failure << "\n";
          return 1;
        }
      }
    } else if (*pipe) {
      std::ostringstream cfgs;
      cfgs << "n=" << pipe_n << " p=" << pipe_p << " alpha=" << pcfg.alpha << " xi=" << pcfg.xi
           << " eps=" << pcfg.eps << " eps_prime=" << pcfg.eps_prime << " rho=" << pcfg.rho
           << " lambda=" << pcfg.lambda << " k=" << pcfg.k;
      banner("pipeline", cfgs.str(), pipe_seed);
      std::vector<dires::StepRecord> trace;
      auto res = dires::run_pipeline_experiment(pipe_n, pipe_p, pcfg, pipe_seed,
                                                pipe_trace.empty() ? nullptr : &trace);
      if (!pipe_trace.empty()) {
        std::string body = timestamp_header("pipeline-trace");
        for (auto& rec : trace) body += dires::format_step_jsonl(rec) + "\n";
        write_text(pipe_trace, body);
      }
      std::ostringstream js;
      js << "{\"ok\":" << (res.ok ? "true" : "false") << ",\"r\":" << res.r
         << ",\"ell\":" << res.ell << ",\"census_b\":" << res.census_b
         << ",\"census_t1\":" << res.census_t1 << ",\"census_t2\":" << res.census_t2
         << ",\"p1_len\":" << res.p1_len << ",\"p2_len\":" << res.p2_len
         << ",\"cycle_len\":" << res.cycle_len << ",\"leftover\":" << res.leftover
         << ",\"min_absorbing_arcs\":" << res.min_absorbing_arcs << ",\"stage1_assertions\":"
         << (res.stage1_assertions_ok ? "true" : "false");
      if (!res.ok)
        js << ",\"failed_stage\":" << res.failure.stage << ",\"failed_hypothesis\":\""
           << res.failure.hypothesis << "\",\"detail\":\"" << res.failure.detail << "\"";
      js << "}";
      if (!pipe_out.empty())
        write_text(pipe_out, timestamp_header("pipeline") + js.str() + "\n");
      std::cout << js.str() << "\n";
      if (!res.ok) return 1;
    } else if (*resil) {
      banner("resilience",
             "n=" + std::to_string(res_n) + " p=" + std::to_string(res_p) +
                 " trials=" + std::to_string(res_trials) + " adversary=" + res_adversary,
             res_seed);
      dires::AdversaryFamily fam = res_adversary == "random" ? dires::AdversaryFamily::random
                                   : res_adversary == "cut"  ? dires::AdversaryFamily::cut
                                                             : dires::AdversaryFamily::both;
      dires::SolverBudget budget;
      budget.max_vertices_exact = res_max_exact;
      auto est = dires::estimate_resilience(res_n, res_p, fam, budget, res_levels, res_trials,
                                            res_seed);
      if (!res_out.empty()) {
        std::string body = timestamp_header("resilience");
        body += dires::format_level_csv_header() + "\n";
        for (auto& lvl : est.levels) body += dires::format_level_csv_row(lvl) + "\n";
        write_text(res_out, body);
      }
      if (!res_records.empty()) {
        std::string body = timestamp_header("resilience-records");
        for (auto rec : est.records) {
          if (g_no_timestamp) rec.runtime_ms = 0.0;  // keep outputs byte-stable
          body += dires::format_trial_jsonl(rec) + "\n";
        }
        write_text(res_records, body);
      }
      std::cout << "lower " << est.lower << "\nupper "
                << (est.upper_found ? std::to_string(est.upper) : "none") << "\nnp " << est.np
                << "\n";
      if (est.inconclusive) {
        std::cout << "inconclusive 1\n";
        return 1;
      }
    } else if (*cen) {
      banner("census", "which=" + cen_which, cen_seed);
      dires::Digraph d = cen_in.empty()
                             ? dires::Digraph::random(cen_n, cen_p,
                                                      dires::derive_seed(cen_seed, "census-graph"))
                             : dires::read_digraph(cen_in);
      std::ostringstream out;
      bool respected = true;
      if (cen_which == "bad_set") {
        auto c = dires::bad_set_census(d, cen_c, cen_eps, cen_p, cen_samples, cen_seed);
        out << "census,max,bound,respected\nbad_set," << c.max_b << ',' << c.bound << ','
            << (c.respected ? 1 : 0) << "\n";
        respected = c.respected;
      } else if (cen_which == "degree_excess") {
        int ell = cen_ell > 0 ? cen_ell : d.n() / 20;
        auto c = dires::degree_excess_census(d, ell, cen_p, cen_c, cen_samples, cen_seed);
        out << "census,max,bound,respected\n";
        out << "degree_excess_i," << c.worst_clause1 << ',' << c.bound1 << ','
            << (c.respected1 ? 1 : 0) << "\n";
        out << "degree_excess_ii," << c.worst_clause2 << ',' << c.bound2 << ','
            << (c.respected2 ? 1 : 0) << "\n";
        respected = c.respected1 && c.respected2;
      } else {
        dires::Rng rng(dires::derive_seed(cen_seed, "absorbing-sets"));
        long long worst = -1;
        for (int s = 0; s < cen_samples; ++s) {
          auto perm = rng.sample_indices(d.n(), std::min(d.n(), 3 * cen_set_size));
          rng.shuffle(perm);
          if (static_cast<int>(perm.size()) < 3 * cen_set_size)
            throw dires::param_error("census: graph too small for the requested set sizes");
          std::vector<int> sset(perm.begin(), perm.begin() + cen_set_size);
          std::vector<std::pair<int, int>> t;
          for (int i = 0; i < cen_set_size; ++i)
            t.emplace_back(perm[cen_set_size + 2 * i], perm[cen_set_size + 2 * i + 1]);
          worst = std::max(worst, dires::absorbing_pair_census(d, sset, t));
        }
        double bound = cen_beta * cen_set_size * cen_p * cen_p * d.n();
        respected = worst < bound;
        out << "census,max,bound,respected\nabsorbing_pairs," << worst << ',' << bound << ','
            << (respected ? 1 : 0) << "\n";
      }
      if (!cen_out.empty()) write_text(cen_out, timestamp_header("census") + out.str());
      std::cout << out.str();
      if (!respected) return 1;
    } else if (*walk) {
      banner("walkprob", "lemma=" + walk_lemma, walk_seed);
      wspec.seed = dires::derive_seed(walk_seed, "walk-host");
      dires::WalkLemma lemma = walk_lemma == "two"       ? dires::WalkLemma::two
                               : walk_lemma == "three"   ? dires::WalkLemma::three
                               : walk_lemma == "four"    ? dires::WalkLemma::four
                               : walk_lemma == "two_upper" ? dires::WalkLemma::two_upper
                                                           : dires::WalkLemma::three_upper;
      if (walk_lemma == "two_upper" || walk_lemma == "three_upper") {
        if (wspec.p >= 1.0) wspec.p = 0.25;
        if (wspec.xi >= 1.0) wspec.xi = 0.5;
        if (wspec.ell == 500) wspec.ell = 2000;
      }
      auto rep = dires::estimate_walk_probabilities(wspec, lemma, walk_trials, walk_seed);
      std::cout << "empirical " << rep.empirical << "\nbound " << rep.bound << "\nrespected "
                << (rep.respected ? 1 : 0) << "\n"
                << rep.detail << "\n";
      if (!rep.respected) return 1;
    }
  } catch (const dires::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const dires::param_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
