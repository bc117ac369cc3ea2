#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstddef>
#include <utility>
#include <vector>

namespace myopic {

enum class SolveStatus { optimal, infeasible, unbounded, iteration_limit };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::iteration_limit: return "iteration-limit";
  }
  return "?";
}

enum class RowSense { le, ge, eq };

struct SimplexRow {
  std::vector<std::pair<int, double>> terms;
  RowSense sense = RowSense::le;
  double rhs = 0.0;
};

struct SimplexOptions {
  double pivot_tol = 1e-9;
  double feas_tol = 1e-7;
  long max_iterations = 1000000;
  // consecutive non-improving pivots before the entering rule falls back
  // from Dantzig to Bland
  int stall_limit = 256;
  // print objective progress to stderr every `log_every` pivots (0 = silent)
  long log_every = 0;
  // Anti-degeneracy: inequality right-hand sides are relaxed by a tiny
  // deterministic amount during pivoting; the returned solution is re-derived
  // from the final basis against the original data, which that basis solves
  // optimally whenever it stays feasible (retried with smaller amounts
  // otherwise). Infeasibilities smaller than the perturbation can escape
  // detection.
  double perturbation = 1e-5;
};

struct SimplexResult {
  SolveStatus status = SolveStatus::iteration_limit;
  double objective = 0.0;
  std::vector<double> x;
  long iterations = 0;
};

// Dense two-phase primal simplex over nonnegative variables. Equality rows
// are handled natively through phase-1 artificials; Bland's rule guards the
// pivoting against cycling, and the rhs perturbation above keeps the guard
// from ever becoming the main loop.
class DenseSimplex {
 public:
  DenseSimplex(int num_vars, bool maximize, const std::vector<std::pair<int, double>>& objective,
               const std::vector<SimplexRow>& rows, SimplexOptions options = {})
      : n_(num_vars), opt_(options), maximize_(maximize), objective_(objective) {
    prepare(rows);
  }

  SimplexResult solve() {
    double scale = opt_.perturbation;
    SimplexResult result;
    for (int attempt = 0; attempt < 4; ++attempt) {
      result = run(scale);
      if (result.status != SolveStatus::optimal) return result;
      if (exact_basic_solution(result)) return result;
      scale /= 64.0;  // basis infeasible for the unperturbed rhs: soften and retry
    }
    result.status = SolveStatus::iteration_limit;
    return result;
  }

 private:
  static constexpr double kRatioEligibility = 1e-7;  // smallest acceptable pivot element

  double& a(std::size_t r, std::size_t c) { return tab_[r * cols_ + c]; }

  struct Prepared {
    std::vector<std::pair<int, double>> terms;  // over original variables
    RowSense sense;
    double rhs;
  };

  void prepare(const std::vector<SimplexRow>& rows) {
    m_ = rows.size();
    prep_.reserve(m_);
    std::size_t num_slacks = 0, num_artificials = 0;
    for (const SimplexRow& row : rows) {
      Prepared p{row.terms, row.sense, row.rhs};
      if (p.rhs < 0.0) {  // canonicalize to rhs >= 0
        p.rhs = -p.rhs;
        for (auto& [j, c] : p.terms) c = -c;
        p.sense = p.sense == RowSense::le   ? RowSense::ge
                  : p.sense == RowSense::ge ? RowSense::le
                                            : RowSense::eq;
      }
      // a >= row with zero rhs is just a flipped <= row; no artificial needed
      if (p.sense == RowSense::ge && p.rhs == 0.0) {
        for (auto& [j, c] : p.terms) c = -c;
        p.sense = RowSense::le;
      }
      if (p.sense == RowSense::eq)
        ++num_artificials;
      else
        ++num_slacks;
      if (p.sense == RowSense::ge) ++num_artificials;
      prep_.push_back(std::move(p));
    }
    slack_begin_ = static_cast<std::size_t>(n_);
    artificial_begin_ = slack_begin_ + num_slacks;
    cols_ = artificial_begin_ + num_artificials;
    has_artificials_ = num_artificials > 0;

    // column index layout per row, for basis reconstruction later
    slack_col_.assign(m_, cols_);
    artificial_col_.assign(m_, cols_);
    std::size_t next_slack = slack_begin_, next_artificial = artificial_begin_;
    for (std::size_t r = 0; r < m_; ++r) {
      switch (prep_[r].sense) {
        case RowSense::le:
          slack_col_[r] = next_slack++;
          break;
        case RowSense::ge:
          slack_col_[r] = next_slack++;
          artificial_col_[r] = next_artificial++;
          break;
        case RowSense::eq:
          artificial_col_[r] = next_artificial++;
          break;
      }
    }
  }

  // Deterministic relaxation in [scale, 2*scale) per inequality row.
  double relaxation(std::size_t r, double scale) const {
    if (prep_[r].sense == RowSense::eq || scale == 0.0) return 0.0;
    std::uint64_t z = (static_cast<std::uint64_t>(r) + 0x9e3779b97f4a7c15ull) *
                      0xbf58476d1ce4e5b9ull;
    z ^= z >> 31;
    return scale * (1.0 + static_cast<double>(z >> 11) * 0x1.0p-53);
  }

  SimplexResult run(double perturbation_scale) {
    // build the tableau fresh for this attempt
    tab_.assign(m_ * cols_, 0.0);
    b_.assign(m_, 0.0);
    basis_.assign(m_, 0);
    cost1_.assign(cols_, 0.0);
    cost2_.assign(cols_, 0.0);
    z1_ = z2_ = 0.0;
    for (const auto& [j, c] : objective_) cost2_[j] += maximize_ ? -c : c;  // minimization form
    for (std::size_t r = 0; r < m_; ++r) {
      for (const auto& [j, c] : prep_[r].terms) a(r, j) += c;
      const double relax = relaxation(r, perturbation_scale);
      b_[r] = prep_[r].rhs + (prep_[r].sense == RowSense::le ? relax : -relax);
      if (b_[r] < 0.0) b_[r] = prep_[r].rhs;  // keep ge-rows canonical
      if (slack_col_[r] != cols_)
        a(r, slack_col_[r]) = prep_[r].sense == RowSense::ge ? -1.0 : 1.0;
      if (artificial_col_[r] != cols_) a(r, artificial_col_[r]) = 1.0;
      basis_[r] = artificial_col_[r] != cols_ ? artificial_col_[r] : slack_col_[r];
    }
    // phase-1 objective: minimize the sum of artificials, reduced against the
    // rows whose artificial starts in the basis
    for (std::size_t j = artificial_begin_; j < cols_; ++j) cost1_[j] = 1.0;
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < artificial_begin_) continue;
      for (std::size_t j = 0; j < cols_; ++j) cost1_[j] -= a(r, j);
      z1_ -= b_[r];
    }

    SimplexResult result;
    if (has_artificials_) {
      const SolveStatus phase1 = pivot_loop(true, result.iterations);
      if (phase1 == SolveStatus::iteration_limit) return result;
      if (z1_ < -opt_.feas_tol) {
        result.status = SolveStatus::infeasible;
        return result;
      }
      drive_out_artificials();
    }
    result.status = pivot_loop(false, result.iterations);
    return result;
  }

  SolveStatus pivot_loop(bool phase1, long& iterations) {
    std::vector<double>& cost = phase1 ? cost1_ : cost2_;
    double& z = phase1 ? z1_ : z2_;
    bool bland = false;
    int stall = 0;
    double best_z = z;
    while (true) {
      if (phase1 && z > -opt_.feas_tol) return SolveStatus::optimal;
      if (++iterations > opt_.max_iterations) return SolveStatus::iteration_limit;

      // entering column: most negative reduced cost, or lowest index under
      // Bland; artificial columns never re-enter
      std::size_t enter = cols_;
      if (bland) {
        for (std::size_t j = 0; j < artificial_begin_; ++j)
          if (cost[j] < -opt_.pivot_tol) {
            enter = j;
            break;
          }
      } else {
        double best = -opt_.pivot_tol;
        for (std::size_t j = 0; j < artificial_begin_; ++j)
          if (cost[j] < best) {
            best = cost[j];
            enter = j;
          }
      }
      if (enter == cols_) return SolveStatus::optimal;

      // ratio test; drifted slightly-negative basics count as zero
      std::size_t leave = m_;
      double best_ratio = 0.0;
      for (std::size_t r = 0; r < m_; ++r) {
        const double are = a(r, enter);
        if (are <= kRatioEligibility) continue;
        const double ratio = std::max(b_[r], 0.0) / are;
        const bool better = leave == m_ || ratio < best_ratio - 1e-12 ||
                            (ratio <= best_ratio + 1e-12 && basis_[r] < basis_[leave]);
        if (better) {
          if (leave == m_ || ratio < best_ratio) best_ratio = ratio;
          leave = r;
        }
      }
      if (leave == m_) return phase1 ? SolveStatus::infeasible : SolveStatus::unbounded;

      pivot(leave, enter);
      // z tracks the running objective upward (for both phases, by the rhs
      // canonicalization); any pivot that fails to lift it is degenerate
      const double significant = 1e-9 * (1.0 + std::abs(best_z));
      if (z > best_z + significant) {
        best_z = z;
        stall = 0;
        bland = false;
      } else if (++stall > opt_.stall_limit) {
        bland = true;
      }
      if (opt_.log_every > 0 && iterations % opt_.log_every == 0)
        std::fprintf(stderr, "simplex: phase%d iter=%ld z=%.9f bland=%d\n", phase1 ? 1 : 2,
                     iterations, z, bland ? 1 : 0);
    }
  }

  void pivot(std::size_t leave, std::size_t enter) {
    const double inv = 1.0 / a(leave, enter);
    double* lrow = &tab_[leave * cols_];
    for (std::size_t j = 0; j < cols_; ++j) lrow[j] *= inv;
    b_[leave] *= inv;
    a(leave, enter) = 1.0;

    auto eliminate = [&](double* row, double& rhs) {
      const double factor = row[enter];
      if (factor == 0.0) return;
      for (std::size_t j = 0; j < cols_; ++j) row[j] -= factor * lrow[j];
      row[enter] = 0.0;
      rhs -= factor * b_[leave];
    };
    for (std::size_t r = 0; r < m_; ++r) {
      if (r != leave) eliminate(&tab_[r * cols_], b_[r]);
    }
    eliminate(cost1_.data(), z1_);
    eliminate(cost2_.data(), z2_);
    basis_[leave] = enter;
  }

  // Pivot zero-level artificials out of the basis where possible. A row with
  // no usable pivot is redundant: it is all zeros over the real columns and
  // can never move again.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < artificial_begin_) continue;
      std::size_t best_col = cols_;
      double best_abs = kRatioEligibility;
      for (std::size_t j = 0; j < artificial_begin_; ++j) {
        const double v = std::abs(a(r, j));
        if (v > best_abs) {
          best_abs = v;
          best_col = j;
        }
      }
      if (best_col != cols_) pivot(r, best_col);
    }
  }

  // Re-derives the basic solution for the *original* right-hand sides by a
  // fresh Gaussian solve of B x_B = b over the stored input data. The basis
  // is dual feasible regardless of rhs, so if the result is nonnegative it is
  // optimal for the unperturbed problem, free of accumulated pivot drift.
  bool exact_basic_solution(SimplexResult& result) {
    std::vector<double> dense(m_ * m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      const std::size_t col_var = basis_[r];
      // scatter column `col_var` of the constraint matrix into dense column r
      if (col_var < slack_begin_) {
        for (std::size_t row = 0; row < m_; ++row)
          for (const auto& [j, c] : prep_[row].terms)
            if (static_cast<std::size_t>(j) == col_var) dense[row * m_ + r] += c;
      } else {
        for (std::size_t row = 0; row < m_; ++row) {
          if (slack_col_[row] == col_var)
            dense[row * m_ + r] = prep_[row].sense == RowSense::ge ? -1.0 : 1.0;
          if (artificial_col_[row] == col_var) dense[row * m_ + r] = 1.0;
        }
      }
    }
    std::vector<double> xb(m_);
    for (std::size_t r = 0; r < m_; ++r) xb[r] = prep_[r].rhs;

    // partial-pivot elimination
    std::vector<std::size_t> perm(m_);
    for (std::size_t i = 0; i < m_; ++i) perm[i] = i;
    for (std::size_t col = 0; col < m_; ++col) {
      std::size_t piv = col;
      double best = std::abs(dense[perm[col] * m_ + col]);
      for (std::size_t r = col + 1; r < m_; ++r) {
        const double v = std::abs(dense[perm[r] * m_ + col]);
        if (v > best) {
          best = v;
          piv = r;
        }
      }
      if (best < 1e-12) return false;  // numerically singular basis
      std::swap(perm[col], perm[piv]);
      const double inv = 1.0 / dense[perm[col] * m_ + col];
      for (std::size_t r = col + 1; r < m_; ++r) {
        const double factor = dense[perm[r] * m_ + col] * inv;
        if (factor == 0.0) continue;
        dense[perm[r] * m_ + col] = 0.0;
        for (std::size_t c = col + 1; c < m_; ++c)
          dense[perm[r] * m_ + c] -= factor * dense[perm[col] * m_ + c];
        xb[perm[r]] -= factor * xb[perm[col]];
      }
    }
    std::vector<double> solution(m_);
    for (std::size_t i = m_; i-- > 0;) {
      double value = xb[perm[i]];
      for (std::size_t c = i + 1; c < m_; ++c)
        value -= dense[perm[i] * m_ + c] * solution[c];
      solution[i] = value / dense[perm[i] * m_ + i];
    }

    for (double v : solution)
      if (v < -opt_.feas_tol) return false;
    // artificial basics must stay at zero for the solution to be genuine
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] >= artificial_begin_ && std::abs(solution[r]) > opt_.feas_tol) return false;

    result.x.assign(n_, 0.0);
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] < static_cast<std::size_t>(n_))
        result.x[basis_[r]] = std::max(solution[r], 0.0);
    double obj = 0.0;
    for (const auto& [j, c] : objective_) obj += c * result.x[j];
    result.objective = obj;
    return true;
  }

  int n_;
  SimplexOptions opt_;
  bool maximize_;
  std::vector<std::pair<int, double>> objective_;
  std::vector<Prepared> prep_;
  bool has_artificials_ = false;
  std::size_t m_ = 0, cols_ = 0, slack_begin_ = 0, artificial_begin_ = 0;
  std::vector<std::size_t> slack_col_, artificial_col_;
  std::vector<double> tab_, b_, cost1_, cost2_;
  std::vector<std::size_t> basis_;
  double z1_ = 0.0, z2_ = 0.0;
};

inline SimplexResult solve_dense_simplex(int num_vars, bool maximize,
                                         const std::vector<std::pair<int, double>>& objective,
                                         const std::vector<SimplexRow>& rows,
                                         SimplexOptions options = {}) {
  return DenseSimplex(num_vars, maximize, objective, rows, options).solve();
}

}  // namespace myopic
