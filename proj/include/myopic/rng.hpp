#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace myopic {

// splitmix64: tiny, fast, and identical on every platform, which keeps
// seeded runs byte-reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double next_range(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // Uniform in [0, bound).
  int next_int(int bound) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(bound)); }

  bool next_bool(double p = 0.5) { return next_unit() < p; }

  std::vector<int> permutation(int n) {
    std::vector<int> out(n);
    std::iota(out.begin(), out.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(out[i], out[next_int(i + 1)]);
    return out;
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t hash_mix(std::uint64_t a, std::uint64_t b) {
  Rng r(a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2)));
  return r.next_u64();
}

}  // namespace myopic
