#pragma once

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

#include "myopic/digraph.hpp"
#include "myopic/rng.hpp"
#include "myopic/set_function.hpp"
#include "myopic/subset.hpp"

namespace myopic {

// Random normalized nonnegative submodular table by rounding-down repair:
// values are drawn level by level and rounded down to the largest value the
// pairwise submodularity constraints still allow. The draw keeps at least
// `floor_fraction` of that cap so the caps at higher levels rarely collapse;
// a draw whose cap goes negative is discarded and retried.
inline SetFunction random_submodular_table(int n, Rng& rng, double floor_fraction = 0.75,
                                           int max_attempts = 100000) {
  const std::uint32_t size = std::uint32_t{1} << n;
  std::vector<std::uint32_t> by_level(size);
  for (std::uint32_t s = 0; s < size; ++s) by_level[s] = s;
  std::stable_sort(by_level.begin(), by_level.end(),
                   [](std::uint32_t a, std::uint32_t b) {
                     return std::popcount(a) < std::popcount(b);
                   });

  std::vector<double> values(size, 0.0);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    bool ok = true;
    for (std::uint32_t s : by_level) {
      const int level = std::popcount(s);
      if (level == 0) continue;
      if (level == 1) {
        values[s] = rng.next_range(0.2, 1.0);
        continue;
      }
      double cap = std::numeric_limits<double>::infinity();
      const auto items = Subset(s).items();
      for (std::size_t i = 0; i < items.size(); ++i) {
        for (std::size_t j = i + 1; j < items.size(); ++j) {
          const std::uint32_t du = s ^ (1u << items[i]);
          const std::uint32_t dv = s ^ (1u << items[j]);
          cap = std::min(cap, values[du] + values[dv] - values[du & dv]);
        }
      }
      if (cap < 0.0) {
        ok = false;
        break;
      }
      values[s] = cap * rng.next_range(floor_fraction, 1.0);
    }
    if (ok) return SetFunction(GroundSet(n), values);
  }
  throw std::runtime_error("random_submodular_table: retry budget exhausted");
}

// Completely unstructured random table (not submodular in general).
inline SetFunction random_table(int n, Rng& rng) {
  std::vector<double> values(std::size_t{1} << n);
  for (double& v : values) v = rng.next_unit();
  values[0] = 0.0;
  return SetFunction(GroundSet(n), std::move(values));
}

inline Digraph random_digraph(int n, double edge_prob, Rng& rng) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && rng.next_bool(edge_prob)) edges.push_back(Edge{u, v, rng.next_unit()});
  return Digraph(n, edges);
}

}  // namespace myopic
