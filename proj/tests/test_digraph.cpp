#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <filesystem>
#include <fstream>

#include "dires/digraph.hpp"
#include "dires/resilience.hpp"
#include "doctest.h"

using namespace dires;

TEST_CASE("p=1 yields the complete digraph, p=0 the empty one") {
  auto full = Digraph::random(3, 1.0, 123);
  CHECK(full.m() == 6);
  CHECK(full == Digraph::complete(3));
  auto none = Digraph::random(5, 0.0, 99);
  CHECK(none.m() == 0);
}

TEST_CASE("generation is a pure function of (n,p,seed)") {
  auto a = Digraph::random(60, 0.31, 777);
  auto b = Digraph::random(60, 0.31, 777);
  CHECK(a == b);
  auto c = Digraph::random(60, 0.31, 778);
  CHECK_FALSE(a == c);
}

TEST_CASE("p outside [0,1] is rejected") {
  CHECK_THROWS_AS(Digraph::random(5, -0.1, 1), param_error);
  CHECK_THROWS_AS(Digraph::random(5, 1.5, 1), param_error);
  CHECK_THROWS_AS(Digraph::random(0, 0.5, 1), param_error);
}

TEST_CASE("arc count matches Binomial(n(n-1), p) moments over 200 seeds") {
  const int n = 100;
  const double p = 0.3;
  const double pairs = static_cast<double>(n) * (n - 1);
  double total = 0;
  for (int seed = 0; seed < 200; ++seed) total += Digraph::random(n, p, seed).m();
  double mean = total / 200.0;
  double sd_of_mean = std::sqrt(pairs * p * (1 - p) / 200.0);
  CHECK(std::abs(mean - pairs * p) <= 3 * std::sqrt(pairs * p * (1 - p)));
  CHECK(std::abs(mean - 2970.0) <= 5 * sd_of_mean);  // tighter: the mean estimator itself
}

TEST_CASE("structural invariants of generated digraphs") {
  auto d = Digraph::random(80, 0.2, 4242);
  long long m_out = 0, m_in = 0;
  for (int u = 0; u < d.n(); ++u) {
    m_out += d.out_degree(u);
    m_in += d.in_degree(u);
    for (int v : d.out(u)) {
      CHECK(v != u);  // no self-loops
      auto in_list = d.in(v);
      CHECK(std::binary_search(in_list.begin(), in_list.end(), u));  // consistency
    }
  }
  CHECK(m_out == d.m());
  CHECK(m_in == d.m());
}

TEST_CASE("degree_stats on the small fixtures") {
  auto k4 = Digraph::complete(4);
  auto s = degree_stats(k4);
  CHECK(s.min_out == 3);
  CHECK(s.min_in == 3);
  CHECK(s.max_out == 3);
  CHECK(s.max_in == 3);

  auto tri = Digraph::from_arcs(3, {{0, 1}, {1, 2}, {2, 0}});
  s = degree_stats(tri);
  CHECK(s.min_out == 1);
  CHECK(s.max_in == 1);

  auto path = Digraph::from_arcs(3, {{0, 1}, {1, 2}});
  s = degree_stats(path);
  CHECK(s.min_out == 0);  // vertex 2
  CHECK(s.min_in == 0);   // vertex 0
  CHECK(s.out_deg[2] == 0);
  CHECK(s.in_deg[0] == 0);
}

TEST_CASE("induced_density") {
  auto d = Digraph::from_arcs(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  std::vector<int> a{0, 1}, b{2, 3};
  CHECK(induced_density(d, a, b) == doctest::Approx(1.0));
  CHECK(induced_density(d, b, a) == doctest::Approx(0.0));

  auto e = Digraph::from_arcs(5, {{0, 2}, {1, 4}});
  std::vector<int> a2{0, 1}, b2{2, 3, 4};
  CHECK(induced_density(e, a2, b2) == doctest::Approx(1.0 / 3.0));

  CHECK_THROWS_AS(induced_density(d, a, a), param_error);
  std::vector<int> empty;
  CHECK_THROWS_AS(induced_density(d, a, empty), param_error);
}

TEST_CASE("digraph file round-trip") {
  auto d = Digraph::complete(3);
  auto text = write_digraph_text(d);
  CHECK(text == "digraph 3 6\n0 1\n0 2\n1 0\n1 2\n2 0\n2 1\n");
  CHECK(read_digraph_text(text) == d);

  auto r = Digraph::random(40, 0.3, 5);
  CHECK(read_digraph_text(write_digraph_text(r)) == r);

  auto tmp = std::filesystem::temp_directory_path() / "dires_io_test.dg";
  write_digraph(r, tmp.string());
  CHECK(read_digraph(tmp.string()) == r);
  std::filesystem::remove(tmp);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(read_digraph_text("digraph 3 1\n2 2\n"), doctest::Contains("self-loop"),
                       parse_error);
  try {
    read_digraph_text("digraph 3 1\n2 2\n");
  } catch (const parse_error& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(read_digraph_text("digraph 3 5\n0 1\n"), parse_error);       // count mismatch
  CHECK_THROWS_AS(read_digraph_text("digraph 3 1\n0 7\n"), parse_error);       // id out of range
  CHECK_THROWS_AS(read_digraph_text("digraph 3 2\n0 1\n0 1\n"), parse_error);  // duplicate
  CHECK_THROWS_AS(read_digraph_text("graph 3 1\n0 1\n"), parse_error);         // header
}

TEST_CASE("degree concentration stays below the Chernoff bound") {
  // harness hook: fraction of vertices with |deg+ - np| >= 0.1 np over 100
  // seeds at n=2000, p=0.1 vs bound 2 exp(-0.01 np / 3)
  const int n = 2000;
  const double p = 0.1;
  const double np = n * p;
  long long outliers = 0;
  for (int seed = 0; seed < 100; ++seed) {
    auto d = Digraph::random(n, p, 50'000 + seed);
    for (int u = 0; u < n; ++u)
      if (std::abs(d.out_degree(u) - np) >= 0.1 * np) ++outliers;
  }
  double fraction = static_cast<double>(outliers) / (100.0 * n);
  double bound = chernoff_bound(ChernoffKind::iii, n, p, 0.1);
  CHECK(fraction < bound);
}
