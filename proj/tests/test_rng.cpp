#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "dires/rng.hpp"
#include "doctest.h"

using namespace dires;

TEST_CASE("identical seeds give identical streams") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("the generator stream is pinned") {
  // Frozen first outputs of xoshiro256** under splitmix64 seeding; a platform
  // or refactoring change that silently alters the stream would invalidate
  // every recorded experiment.
  Rng r(1);
  CHECK(r.next_u64() == 12966619160104079557ULL);
  CHECK(r.next_u64() == 9600361134598540522ULL);
}

TEST_CASE("derive_seed separates purposes and indices") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 100; ++i) {
    seen.insert(derive_seed(7, "graph", i));
    seen.insert(derive_seed(7, "adversary", i));
  }
  CHECK(seen.size() == 200);
  CHECK(derive_seed(7, "graph", 3) == derive_seed(7, "graph", 3));
}

TEST_CASE("below stays in range and covers small supports") {
  Rng r(5);
  std::set<std::uint64_t> vals;
  for (int i = 0; i < 300; ++i) {
    auto v = r.below(7);
    CHECK(v < 7);
    vals.insert(v);
  }
  CHECK(vals.size() == 7);
}

TEST_CASE("bernoulli handles the degenerate probabilities") {
  Rng r(9);
  for (int i = 0; i < 100; ++i) {
    CHECK(r.bernoulli(1.0));
    CHECK_FALSE(r.bernoulli(0.0));
  }
}

TEST_CASE("sample_indices is sorted, distinct, in range") {
  Rng r(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = r.sample_indices(40, 13);
    CHECK(s.size() == 13);
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(s[i] >= 0);
      CHECK(s[i] < 40);
      if (i) CHECK(s[i] > s[i - 1]);
    }
  }
  CHECK(r.sample_indices(5, 5).size() == 5);
  CHECK(r.sample_indices(5, 0).empty());
}
