#pragma once

#include <cstdint>
#include <vector>

#include "myopic/digraph.hpp"
#include "myopic/rational.hpp"
#include "myopic/subset.hpp"

namespace myopic {

// The linear system mapping edge weights to cut values: one row per
// nontrivial subset S (every S except the empty and the full set), one
// column per edge, entry 1 iff the edge leaves S. Reconstructing the edge
// weights from the cut oracle is possible exactly when the rank equals the
// number of edges.
struct CutReconstructionSystem {
  std::vector<std::uint32_t> row_subsets;  // mask per row
  std::vector<std::vector<int>> matrix;    // 0/1 coefficients, matrix[row][edge]
  std::vector<Edge> columns;               // edge per column
  int rank = 0;
};

// Exact rank over the rationals, by Gaussian elimination.
inline int rational_rank(const std::vector<std::vector<int>>& matrix) {
  if (matrix.empty()) return 0;
  const std::size_t cols = matrix[0].size();
  std::vector<std::vector<Rational>> rows;
  rows.reserve(matrix.size());
  for (const auto& r : matrix) {
    std::vector<Rational> row;
    row.reserve(cols);
    for (int v : r) row.emplace_back(v);
    rows.push_back(std::move(row));
  }
  int rank = 0;
  for (std::size_t col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const Rational inv = Rational(1) / rows[rank][col];
    for (std::size_t c = col; c < cols; ++c) rows[rank][c] = rows[rank][c] * inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || rows[r][col].is_zero()) continue;
      const Rational factor = rows[r][col];
      for (std::size_t c = col; c < cols; ++c)
        rows[r][c] = rows[r][c] - factor * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

inline CutReconstructionSystem cut_reconstruction_rank(const Digraph& g) {
  if (g.n() > 16) throw std::domain_error("cut reconstruction system limited to n <= 16");
  CutReconstructionSystem sys;
  sys.columns = g.edges();
  const std::uint32_t full = Subset::full_set(g.n()).bits();
  for (std::uint32_t s = 1; s < full; ++s) {
    std::vector<int> row(sys.columns.size(), 0);
    for (std::size_t e = 0; e < sys.columns.size(); ++e) {
      const Edge& edge = sys.columns[e];
      if ((s >> edge.from & 1u) && !(s >> edge.to & 1u)) row[e] = 1;
    }
    sys.row_subsets.push_back(s);
    sys.matrix.push_back(std::move(row));
  }
  sys.rank = rational_rank(sys.matrix);
  return sys;
}

// The 3-cycle gadget with independent weights in both directions between all
// three vertex pairs: six edges whose cut values satisfy one linear relation,
// so the weights cannot be recovered from the cut oracle.
inline Digraph three_cycle_gadget(double a = 1.0, double b = 1.0, double c = 1.0,
                                  double x = 1.0, double y = 1.0, double z = 1.0) {
  return Digraph(3, {Edge{0, 1, a}, Edge{1, 2, b}, Edge{2, 0, c},
                     Edge{1, 0, x}, Edge{2, 1, y}, Edge{0, 2, z}});
}

}  // namespace myopic
