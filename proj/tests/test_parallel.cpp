#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <atomic>

#include "dires/parallel.hpp"
#include "dires/regularity.hpp"
#include "dires/resilience.hpp"
#include "doctest.h"

using namespace dires;

TEST_CASE("parallel_for covers every index exactly once") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(1000, [&](std::int64_t i) { hits[i].fetch_add(1); });
  for (auto& h : hits) CHECK(h.load() == 1);
}

TEST_CASE("serial and parallel resilience estimates are identical") {
  SolverBudget budget;
  auto serial = estimate_resilience_serial(8, 0.9, AdversaryFamily::both, budget, {}, 12, 5);
  auto parallel = estimate_resilience(8, 0.9, AdversaryFamily::both, budget, {}, 12, 5);
  CHECK(serial.lower == parallel.lower);
  CHECK(serial.upper == parallel.upper);
  REQUIRE(serial.records.size() == parallel.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    CHECK(serial.records[i].verdict == parallel.records[i].verdict);
    CHECK(serial.records[i].seed == parallel.records[i].seed);
    CHECK(serial.records[i].adversary == parallel.records[i].adversary);
  }
}

TEST_CASE("jobs setting does not change the estimate") {
  SolverBudget budget;
  set_jobs(1);
  auto one = estimate_resilience(8, 0.9, AdversaryFamily::random, budget, {}, 10, 9);
  set_jobs(2);
  auto two = estimate_resilience(8, 0.9, AdversaryFamily::random, budget, {}, 10, 9);
  set_jobs(0);
  REQUIRE(one.records.size() == two.records.size());
  for (std::size_t i = 0; i < one.records.size(); ++i)
    CHECK(format_trial_jsonl(one.records[i]).find("\"verdict\"") ==
          format_trial_jsonl(two.records[i]).find("\"verdict\""));
  CHECK(one.upper == two.upper);
}

TEST_CASE("regularity digraph: serial twin equals the parallel kernel") {
  auto d = Digraph::random(120, 0.4, 61);
  auto p = equitable_partition(d, 6, 62);
  RegParams rp;
  rp.eps = 0.3;
  rp.scale = 0.4;
  rp.samples = 150;
  rp.seed = 63;
  auto a = build_regularity_digraph(d, p, 0.1, rp);
  auto b = build_regularity_digraph_serial(d, p, 0.1, rp);
  CHECK(a.density == b.density);
}
