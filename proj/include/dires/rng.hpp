#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "dires/error.hpp"

namespace dires {

// splitmix64 step; used for seeding and hashing.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stream-splitting rule: child seed = hash(master seed, purpose tag, index).
// Every module derives its streams through this, so a single master seed
// reproduces a whole experiment regardless of worker count.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t index = 0) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x00000100000001b3ULL;
  }
  std::uint64_t s = master ^ h;
  s ^= 0x9e3779b97f4a7c15ULL * (index + 1);
  std::uint64_t out = splitmix64_next(s);
  out ^= splitmix64_next(s);
  return out;
}

// xoshiro256** — fixed algorithm, identical streams on every platform.
// All distributions below are hand-rolled on top of next_u64() for the same
// reason; std:: distributions are not portable across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64_next(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw param_error("Rng::below: bound must be positive");
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  int below_int(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

  // Uniform in [0,1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct values from [0, n), ascending.
  std::vector<int> sample_indices(int n, int k);

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
};

inline std::vector<int> Rng::sample_indices(int n, int k) {
  if (k < 0 || k > n) throw param_error("Rng::sample_indices: k out of range");
  std::vector<int> out;
  out.reserve(k);
  // Selection sampling: one pass, O(n), deterministic draw order.
  int need = k;
  for (int i = 0; i < n && need > 0; ++i) {
    if (below(static_cast<std::uint64_t>(n - i)) < static_cast<std::uint64_t>(need)) {
      out.push_back(i);
      --need;
    }
  }
  return out;
}

}  // namespace dires
