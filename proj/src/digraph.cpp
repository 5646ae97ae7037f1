#include "dires/digraph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "dires/rng.hpp"

namespace dires {

Digraph Digraph::from_sorted_out_lists(int n, const std::vector<std::vector<int>>& out_lists) {
  Digraph d;
  d.n_ = n;
  d.out_off_.assign(n + 1, 0);
  d.in_off_.assign(n + 1, 0);
  std::vector<int> in_deg(n, 0);
  long long m = 0;
  for (int u = 0; u < n; ++u) {
    m += static_cast<long long>(out_lists[u].size());
    for (int v : out_lists[u]) ++in_deg[v];
  }
  d.m_ = m;
  d.out_flat_.resize(m);
  d.in_flat_.resize(m);
  for (int u = 0; u < n; ++u) d.out_off_[u + 1] = d.out_off_[u] + static_cast<std::int64_t>(out_lists[u].size());
  for (int v = 0; v < n; ++v) d.in_off_[v + 1] = d.in_off_[v] + in_deg[v];
  std::vector<std::int64_t> out_pos(d.out_off_.begin(), d.out_off_.end() - 1);
  std::vector<std::int64_t> in_pos(d.in_off_.begin(), d.in_off_.end() - 1);
  for (int u = 0; u < n; ++u) {
    for (int v : out_lists[u]) {
      d.out_flat_[out_pos[u]++] = v;
      d.in_flat_[in_pos[v]++] = u;  // u ascending, so in-lists come out sorted
    }
  }
  return d;
}

Digraph Digraph::from_arcs(int n, std::vector<std::pair<int, int>> arcs) {
  if (n < 0) throw param_error("from_arcs: negative n");
  std::vector<std::vector<int>> out_lists(n);
  std::sort(arcs.begin(), arcs.end());
  std::pair<int, int> prev{-1, -1};
  for (auto [u, v] : arcs) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw param_error("from_arcs: vertex id out of range");
    if (u == v) throw param_error("from_arcs: self-loop");
    if (std::pair{u, v} == prev) throw param_error("from_arcs: duplicate arc");
    prev = {u, v};
    out_lists[u].push_back(v);
  }
  return from_sorted_out_lists(n, out_lists);
}

Digraph Digraph::random(int n, double p, std::uint64_t seed) {
  if (n < 1) throw param_error("random digraph: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw param_error("random digraph: p must be in [0,1]");
  Rng rng(seed);
  std::vector<std::vector<int>> out_lists(n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      if (rng.bernoulli(p)) out_lists[u].push_back(v);
    }
  }
  return from_sorted_out_lists(n, out_lists);
}

Digraph Digraph::complete(int n) {
  std::vector<std::vector<int>> out_lists(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) out_lists[u].push_back(v);
  return from_sorted_out_lists(n, out_lists);
}

Digraph Digraph::empty(int n) {
  if (n < 0) throw param_error("empty digraph: negative n");
  return from_sorted_out_lists(n, std::vector<std::vector<int>>(n));
}

bool Digraph::has_arc(int u, int v) const {
  auto adj = out(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<std::pair<int, int>> Digraph::arcs() const {
  std::vector<std::pair<int, int>> out_arcs;
  out_arcs.reserve(m_);
  for (int u = 0; u < n_; ++u)
    for (int v : out(u)) out_arcs.emplace_back(u, v);
  return out_arcs;
}

DegreeSummary degree_stats(const Digraph& d) {
  DegreeSummary s;
  int n = d.n();
  s.out_deg.resize(n);
  s.in_deg.resize(n);
  for (int u = 0; u < n; ++u) {
    s.out_deg[u] = d.out_degree(u);
    s.in_deg[u] = d.in_degree(u);
  }
  if (n > 0) {
    auto [omin, omax] = std::minmax_element(s.out_deg.begin(), s.out_deg.end());
    auto [imin, imax] = std::minmax_element(s.in_deg.begin(), s.in_deg.end());
    s.min_out = *omin;
    s.max_out = *omax;
    s.min_in = *imin;
    s.max_in = *imax;
  }
  return s;
}

long long count_arcs_between(const Digraph& d, std::span<const int> a, std::span<const int> b) {
  std::vector<char> in_b(d.n(), 0);
  for (int v : b) in_b[v] = 1;
  long long e = 0;
  for (int u : a)
    for (int v : d.out(u)) e += in_b[v];
  return e;
}

double induced_density(const Digraph& d, std::span<const int> a, std::span<const int> b) {
  if (a.empty() || b.empty()) throw param_error("induced_density: empty set");
  std::vector<char> seen(d.n(), 0);
  for (int v : a) {
    if (v < 0 || v >= d.n()) throw param_error("induced_density: vertex out of range");
    seen[v] = 1;
  }
  for (int v : b) {
    if (v < 0 || v >= d.n()) throw param_error("induced_density: vertex out of range");
    if (seen[v]) throw param_error("induced_density: sets overlap");
  }
  return static_cast<double>(count_arcs_between(d, a, b)) /
         (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

Digraph induced_subdigraph(const Digraph& d, const std::vector<int>& keep) {
  std::vector<int> local(d.n(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) local[keep[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> out_lists(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (int v : d.out(keep[i]))
      if (local[v] >= 0) out_lists[i].push_back(local[v]);
  return Digraph::from_sorted_out_lists(static_cast<int>(keep.size()), out_lists);
}

std::string write_digraph_text(const Digraph& d) {
  std::string out = "digraph " + std::to_string(d.n()) + " " + std::to_string(d.m()) + "\n";
  for (int u = 0; u < d.n(); ++u)
    for (int v : d.out(u)) {
      out += std::to_string(u);
      out += ' ';
      out += std::to_string(v);
      out += '\n';
    }
  return out;
}

void write_digraph(const Digraph& d, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw param_error("write_digraph: cannot open " + path);
  f << write_digraph_text(d);
}

namespace {

bool parse_two_ints(const std::string& line, long long& a, long long& b) {
  const char* p = line.data();
  const char* end = p + line.size();
  auto r1 = std::from_chars(p, end, a);
  if (r1.ec != std::errc{} || r1.ptr == end || *r1.ptr != ' ') return false;
  auto r2 = std::from_chars(r1.ptr + 1, end, b);
  return r2.ec == std::errc{} && r2.ptr == end;
}

}  // namespace

Digraph read_digraph_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  long lineno = 0;
  if (!std::getline(in, line)) throw parse_error("missing header", 1);
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  long long n = -1, m = -1;
  {
    std::istringstream hs(line);
    std::string word;
    if (!(hs >> word >> n >> m) || word != "digraph" || (hs >> word))
      throw parse_error("header must be 'digraph <n> <m>'", 1);
  }
  if (n < 1) throw parse_error("vertex count must be >= 1", 1);
  if (m < 0) throw parse_error("negative arc count", 1);
  std::vector<std::pair<int, int>> arcs;
  arcs.reserve(m);
  std::pair<long long, long long> prev{-1, -1};
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && in.eof()) break;
    long long u, v;
    if (!parse_two_ints(line, u, v)) throw parse_error("expected '<u> <v>'", lineno);
    if (u < 0 || u >= n || v < 0 || v >= n) throw parse_error("vertex id out of range", lineno);
    if (u == v) throw parse_error("self-loop", lineno);
    if (std::pair{u, v} == prev) throw parse_error("duplicate arc", lineno);
    if (std::pair{u, v} < prev) throw parse_error("arcs not sorted ascending", lineno);
    prev = {u, v};
    arcs.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  if (static_cast<long long>(arcs.size()) != m)
    throw parse_error("arc count mismatch: header says " + std::to_string(m) + ", file has " +
                          std::to_string(arcs.size()),
                      lineno + 1);
  return Digraph::from_arcs(static_cast<int>(n), std::move(arcs));
}

Digraph read_digraph(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw param_error("read_digraph: cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return read_digraph_text(ss.str());
}

}  // namespace dires
