// Benchmarks the OpenMP kernels against their serial reference twins and
// checks that both produce identical results.

#include <chrono>
#include <iostream>

#include "dires/adversary.hpp"
#include "dires/digraph.hpp"
#include "dires/parallel.hpp"
#include "dires/pipeline.hpp"
#include "dires/regularity.hpp"
#include "dires/resilience.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(const std::string& name, double serial, double parallel, bool equal) {
  std::cout << name << ": serial " << serial << "s, parallel " << parallel << "s, speedup "
            << (parallel > 0 ? serial / parallel : 0.0) << "x, outputs "
            << (equal ? "identical" : "DIFFER") << "\n";
}

}  // namespace

int main() {
  std::cout << "jobs: " << dires::effective_jobs() << "\n";

  {
    dires::SolverBudget budget;
    auto t0 = Clock::now();
    auto serial = dires::estimate_resilience_serial(14, 0.8, dires::AdversaryFamily::both, budget,
                                                    {}, 40, 99);
    double ts = seconds_since(t0);
    t0 = Clock::now();
    auto parallel = dires::estimate_resilience(14, 0.8, dires::AdversaryFamily::both, budget, {},
                                               40, 99);
    double tp = seconds_since(t0);
    bool equal = serial.lower == parallel.lower && serial.upper == parallel.upper &&
                 serial.records.size() == parallel.records.size();
    for (std::size_t i = 0; equal && i < serial.records.size(); ++i)
      equal = serial.records[i].verdict == parallel.records[i].verdict &&
              serial.records[i].seed == parallel.records[i].seed;
    report("resilience trials (n=14, 40/level)", ts, tp, equal);
  }

  {
    auto d = dires::Digraph::random(1200, 0.2, 7);
    auto adv = dires::random_budget_adversary(d, 0.3, 8);
    auto partition = dires::equitable_partition(adv.surviving, 8, 9);
    dires::PipelineConfig cfg;
    cfg.k = 8;
    auto dp = dires::derive_params(cfg, 0.2, partition.ell, 8, d.n());
    auto t0 = Clock::now();
    auto serial = dires::compute_bad_census_serial(d, adv.surviving, partition.parts, cfg, dp, 11);
    double ts = seconds_since(t0);
    t0 = Clock::now();
    auto parallel = dires::compute_bad_census(d, adv.surviving, partition.parts, cfg, dp, 11);
    double tp = seconds_since(t0);
    bool equal = serial.type2 == parallel.type2 && serial.type1 == parallel.type1 &&
                 serial.atypical == parallel.atypical;
    report("bad-vertex census (n=1200, k=8)", ts, tp, equal);
  }

  {
    auto d = dires::Digraph::random(2000, 0.2, 21);
    auto partition = dires::equitable_partition(d, 10, 22);
    dires::RegParams rp;
    rp.eps = 0.25;
    rp.scale = 0.2;
    rp.samples = 400;
    rp.seed = 23;
    auto t0 = Clock::now();
    auto serial = dires::build_regularity_digraph_serial(d, partition, 0.05, rp);
    double ts = seconds_since(t0);
    t0 = Clock::now();
    auto parallel = dires::build_regularity_digraph(d, partition, 0.05, rp);
    double tp = seconds_since(t0);
    report("regularity digraph (n=2000, k=10)", ts, tp, serial.density == parallel.density);
  }

  return 0;
}
