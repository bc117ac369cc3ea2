#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

#include "myopic/set_function.hpp"
#include "myopic/subset.hpp"

namespace myopic {

struct Edge {
  int from = 0;
  int to = 0;
  double weight = 0.0;
};

// A weighted directed graph with per-vertex in/out weight totals.
// Parallel edges are merged at construction; self-loops are rejected.
class Digraph {
 public:
  Digraph(int n, const std::vector<Edge>& edges) : n_(n), w_in_(n, 0.0), w_out_(n, 0.0) {
    if (n < 1) throw std::domain_error("digraph needs at least one vertex");
    std::map<std::pair<int, int>, double> merged;
    for (const Edge& e : edges) {
      if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
        throw std::domain_error("edge endpoint out of range");
      if (e.from == e.to) throw std::domain_error("self-loops are not allowed");
      if (e.weight < 0.0) throw std::domain_error("edge weights must be nonnegative");
      merged[{e.from, e.to}] += e.weight;
    }
    edges_.reserve(merged.size());
    for (const auto& [key, w] : merged) {
      edges_.push_back(Edge{key.first, key.second, w});
      w_out_[key.first] += w;
      w_in_[key.second] += w;
    }
  }

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  double w_in(int v) const { return w_in_.at(v); }
  double w_out(int v) const { return w_out_.at(v); }

  double weight(int from, int to) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(from, to),
                               [](const Edge& e, const std::pair<int, int>& k) {
                                 return std::make_pair(e.from, e.to) < k;
                               });
    if (it != edges_.end() && it->from == from && it->to == to) return it->weight;
    return 0.0;
  }

  // Total weight of edges leaving `s` (the directed cut value). Works for any
  // n; no table is materialized.
  double cut_value(Subset s) const {
    double total = 0.0;
    for (const Edge& e : edges_)
      if (s.contains(e.from) && !s.contains(e.to)) total += e.weight;
    return total;
  }

  // c(a, b): total weight of edges from a into b.
  double cut_between(Subset a, Subset b) const {
    double total = 0.0;
    for (const Edge& e : edges_)
      if (a.contains(e.from) && b.contains(e.to)) total += e.weight;
    return total;
  }

 private:
  int n_;
  std::vector<Edge> edges_;  // sorted by (from, to)
  std::vector<double> w_in_, w_out_;
};

// rho(v | S) and rho-bar(v | S) for the cut function, computed from local
// edge data only:
//   rho     = w_out(v) - c(S, v) - c(v, S)
//   rho-bar = w_in(v)  - c(v, S) - c(S, v)
struct CutMarginals {
  double gain = 0.0;             // rho(v | S)
  double complement_gain = 0.0;  // rho-bar(v | S)
};

inline CutMarginals digraph_marginals(const Digraph& g, int v, Subset s) {
  if (v < 0 || v >= g.n()) throw std::domain_error("vertex out of range");
  if (s.contains(v)) throw std::domain_error("marginal requires a vertex outside the base set");
  const Subset vs = Subset::singleton(v);
  const double into_v = g.cut_between(s, vs);
  const double out_of_v = g.cut_between(vs, s);
  return CutMarginals{g.w_out(v) - into_v - out_of_v, g.w_in(v) - out_of_v - into_v};
}

// Materializes the full 2^n cut table. Every entry is a direct sum of the
// weights leaving the subset, so the empty and full sets are exactly zero
// and no entry can drop below zero.
inline SetFunction cut_function(const Digraph& g) {
  const int n = g.n();
  if (n > kMaxGroundSetSize)
    throw std::domain_error("cut table materialization requires n <= 24");
  std::vector<double> values(std::size_t{1} << n, 0.0);
  for (std::uint32_t s = 1; s + 1 < values.size(); ++s) {
    double total = 0.0;
    for (const Edge& e : g.edges())
      if ((s >> e.from & 1u) && !(s >> e.to & 1u)) total += e.weight;
    values[s] = total;
  }
  return SetFunction(GroundSet(n), std::move(values));
}

// Appends isolated vertices until the graph has `target_n` vertices. Cut
// values of subsets over the original vertices are unchanged.
inline Digraph pad_isolated(const Digraph& g, int target_n) {
  if (target_n < g.n()) throw std::domain_error("cannot pad to fewer vertices");
  return Digraph(target_n, g.edges());
}

// --- edge-list text format ---------------------------------------------------
//
// One "u v w" triple per line (1-based vertex ids, nonnegative weights);
// '#' starts a comment line. The vertex count is the largest id mentioned.

inline void write_edge_list(const Digraph& g, std::ostream& os) {
  for (const Edge& e : g.edges())
    os << (e.from + 1) << ' ' << (e.to + 1) << ' ' << format_value(e.weight) << '\n';
}

inline Digraph read_edge_list(std::istream& is) {
  std::vector<Edge> edges;
  int n = 0;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view sv(line);
    if (auto hash = sv.find('#'); hash != std::string_view::npos) sv = sv.substr(0, hash);
    std::istringstream ss{std::string(sv)};
    int u, v;
    double w;
    if (!(ss >> u)) continue;  // blank or comment-only line
    if (!(ss >> v >> w)) throw std::runtime_error("malformed edge line: " + line);
    std::string extra;
    if (ss >> extra) throw std::runtime_error("trailing tokens on edge line: " + line);
    if (u < 1 || v < 1) throw std::runtime_error("vertex ids are 1-based: " + line);
    edges.push_back(Edge{u - 1, v - 1, w});
    n = std::max({n, u, v});
  }
  if (n == 0) throw std::runtime_error("edge list is empty");
  return Digraph(n, edges);
}

// The unit-weight directed cycle v1 -> v2 -> ... -> vn -> v1.
inline Digraph directed_cycle(int n, double weight = 1.0) {
  if (n < 2) throw std::domain_error("a directed cycle needs at least two vertices");
  std::vector<Edge> edges;
  edges.reserve(n);
  for (int i = 0; i < n; ++i) edges.push_back(Edge{i, (i + 1) % n, weight});
  return Digraph(n, edges);
}

}  // namespace myopic
