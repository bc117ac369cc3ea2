#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "myopic/certificate.hpp"
#include "myopic/conditions.hpp"
#include "myopic/set_function.hpp"
#include "myopic/simplex.hpp"
#include "myopic/subset.hpp"

namespace myopic {

// Configuration of one adversarial LP: which indistinguishability family to
// impose, over which pairing. The standard pairing puts the accept-side bait
// on the first k items and overlaps the reject-side bait with the designated
// optimum (the last ceil(n/2) items).
struct LPConfig {
  Variant variant = Variant::fixed_q2;
  int n = 8;
  int k = 4;
  std::vector<int> accept_items;  // a_1 .. a_k
  std::vector<int> reject_items;  // r_1 .. r_k
  Subset optimum;

  static LPConfig standard(Variant variant, int n, int k) {
    LPConfig cfg;
    cfg.variant = variant;
    cfg.n = n;
    cfg.k = k;
    for (int j = 0; j < k; ++j) cfg.accept_items.push_back(j);
    const int opt_begin = n / 2;
    for (int j = 0; j < k; ++j) cfg.reject_items.push_back(opt_begin + j);
    for (int i = opt_begin; i < n; ++i) cfg.optimum = cfg.optimum.with(i);
    cfg.validate();
    return cfg;
  }

  void validate() const {
    if (n < 2 || n > 12) throw std::domain_error("lp ground-set size must be in [2, 12]");
    if (k < 1 || 2 * k > n) throw std::domain_error("lp trap depth requires 1 <= k and 2k <= n");
    Subset a, r;
    for (int i : accept_items) a = a.with(i);
    for (int i : reject_items) r = r.with(i);
    if (a.size() != k || r.size() != k || a.intersects(r))
      throw std::domain_error("lp pairing must be disjoint and duplicate-free");
    if (!r.subset_of(optimum)) throw std::domain_error("reject-side items must lie in the optimum");
    if (a.bits() >= (std::uint32_t{1} << n) || optimum.bits() >= (std::uint32_t{1} << n))
      throw std::domain_error("lp pairing out of range");
  }
};

enum class RowTag {
  submodular,    // pairwise diminishing-returns rows
  singleton_eq,  // all singleton values equal (both oracles)
  prefix_eq,     // fixed q2 family
  subset_eq,     // fixed q3 family
  allpairs_eq,   // adaptive q2 family
  trap,          // f(S) <= 1 on trapped extensions
  nonneg,        // f(S) >= 0
  normalized,    // f(empty) = 0
  external,      // rows read back from LP text
};

inline const char* to_string(RowTag t) {
  switch (t) {
    case RowTag::submodular: return "submodular";
    case RowTag::singleton_eq: return "singleton-eq";
    case RowTag::prefix_eq: return "prefix-eq";
    case RowTag::subset_eq: return "subset-eq";
    case RowTag::allpairs_eq: return "allpairs-eq";
    case RowTag::trap: return "trap";
    case RowTag::nonneg: return "nonneg";
    case RowTag::normalized: return "normalized";
    case RowTag::external: return "external";
  }
  return "?";
}

struct LPRow {
  std::vector<std::pair<int, double>> terms;  // (variable index = subset mask, coefficient)
  RowSense sense = RowSense::le;
  double rhs = 0.0;
  RowTag tag = RowTag::external;
};

// One LP over 2^n subset variables x_S >= 0.
struct LPModel {
  std::string name;
  int num_vars = 0;
  bool maximize = true;
  std::vector<std::pair<int, double>> objective;
  std::vector<LPRow> rows;

  std::size_t count(RowTag tag) const {
    std::size_t c = 0;
    for (const LPRow& r : rows)
      if (r.tag == tag) ++c;
    return c;
  }
};

// Emits the LP of a configuration:
//  - pairwise submodularity rows over every (S, pair outside S);
//  - the variant's equality family (complement-oracle equalities are
//    resolved onto complement variables);
//  - trap rows f(S) <= 1 over the distinct prefix extensions;
//  - nonnegativity and normalization;
//  - objective: maximize x over the designated optimum.
inline LPModel build_lp(const LPConfig& cfg) {
  cfg.validate();
  LPModel model;
  model.name = std::string(to_string(cfg.variant)) + " n=" + std::to_string(cfg.n) +
               " k=" + std::to_string(cfg.k);
  model.num_vars = 1 << cfg.n;
  model.maximize = true;
  model.objective = {{static_cast<int>(cfg.optimum.bits()), 1.0}};

  const int n = cfg.n;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const std::uint32_t bu = 1u << u, bv = 1u << v;
      const Subset rest(Subset::full_set(n).bits() & ~(bu | bv));
      for_each_subset_of(rest, [&](Subset s) {
        const int sb = static_cast<int>(s.bits());
        model.rows.push_back(LPRow{{{sb | static_cast<int>(bu), 1.0},
                                    {sb | static_cast<int>(bv), 1.0},
                                    {sb | static_cast<int>(bu | bv), -1.0},
                                    {sb, -1.0}},
                                   RowSense::ge,
                                   0.0,
                                   RowTag::submodular});
      });
    }
  }

  auto add_equalities = [&model](const std::vector<EqualityPair>& pairs, RowTag tag) {
    for (const EqualityPair& p : pairs)
      model.rows.push_back(LPRow{{{static_cast<int>(p.lhs), 1.0}, {static_cast<int>(p.rhs), -1.0}},
                                 RowSense::eq,
                                 0.0,
                                 tag});
  };
  if (cfg.variant != Variant::adaptive_q2)
    add_equalities(singleton_equalities(n), RowTag::singleton_eq);
  const RowTag family_tag = cfg.variant == Variant::fixed_q2   ? RowTag::prefix_eq
                            : cfg.variant == Variant::fixed_q3 ? RowTag::subset_eq
                                                               : RowTag::allpairs_eq;
  add_equalities(variant_equalities(cfg.variant, n, cfg.accept_items, cfg.reject_items, cfg.k),
                 family_tag);

  for (std::uint32_t s : trap_masks(n, cfg.accept_items, cfg.reject_items, cfg.k))
    model.rows.push_back(LPRow{{{static_cast<int>(s), 1.0}}, RowSense::le, 1.0, RowTag::trap});

  for (int s = 0; s < model.num_vars; ++s)
    model.rows.push_back(LPRow{{{s, 1.0}}, RowSense::ge, 0.0, RowTag::nonneg});
  model.rows.push_back(LPRow{{{0, 1.0}}, RowSense::eq, 0.0, RowTag::normalized});
  return model;
}

struct LPSolution {
  SolveStatus status = SolveStatus::iteration_limit;
  std::vector<double> values;
  double objective = 0.0;
  double max_residual = 0.0;
  long iterations = 0;
};

struct ResidualReport {
  double max_violation = 0.0;
  long worst_row = -1;
  double objective = 0.0;
};

// Recomputes every row's slack directly from a candidate assignment,
// independent of how it was produced.
inline ResidualReport verify_solution(const LPModel& model, const std::vector<double>& values) {
  ResidualReport report;
  for (std::size_t r = 0; r < model.rows.size(); ++r) {
    const LPRow& row = model.rows[r];
    double lhs = 0.0;
    for (const auto& [j, c] : row.terms) lhs += c * values.at(j);
    double violation = 0.0;
    switch (row.sense) {
      case RowSense::le: violation = lhs - row.rhs; break;
      case RowSense::ge: violation = row.rhs - lhs; break;
      case RowSense::eq: violation = std::abs(lhs - row.rhs); break;
    }
    if (violation > report.max_violation) {
      report.max_violation = violation;
      report.worst_row = static_cast<long>(r);
    }
  }
  for (const auto& [j, c] : model.objective) report.objective += c * values.at(j);
  return report;
}

namespace detail {

// Exact presolve. Two-term equality rows of the form x_p - x_q = 0 are pure
// variable aliases: merging their classes removes the rows and a slice of the
// (heavily degenerate) structure the simplex would otherwise grind through.
// Single-term equalities pin a class to a constant. Remaining rows are
// rewritten onto class representatives, simplified, and deduplicated;
// nonnegativity rows are implied by the variable domain and dropped. The
// model itself keeps every generated row.
struct LoweredLP {
  std::vector<SimplexRow> rows;
  std::vector<std::pair<int, double>> objective;
  int num_vars = 0;                 // reduced variable count
  std::vector<int> reduced_index;   // original variable -> reduced index, -1 if pinned
  std::vector<double> pinned_value; // original variable -> value when pinned
  bool inconsistent = false;        // a constant row contradicts itself
  bool pinned_negative = false;     // a variable was pinned below zero
};

inline LoweredLP lower_model(const LPModel& model) {
  const int n = model.num_vars;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };

  auto is_alias = [](const LPRow& row) {
    return row.sense == RowSense::eq && row.rhs == 0.0 && row.terms.size() == 2 &&
           row.terms[0].second == -row.terms[1].second &&
           std::abs(row.terms[0].second) == 1.0;
  };
  auto is_pin = [](const LPRow& row) {
    return row.sense == RowSense::eq && row.terms.size() == 1 && row.terms[0].second != 0.0;
  };

  for (const LPRow& row : model.rows)
    if (is_alias(row)) parent[find(row.terms[0].first)] = find(row.terms[1].first);

  LoweredLP out;
  std::vector<char> has_pin(n, 0);
  std::vector<double> pin(n, 0.0);
  for (const LPRow& row : model.rows) {
    if (!is_pin(row)) continue;
    const int root = find(row.terms[0].first);
    const double value = row.rhs / row.terms[0].second;
    if (has_pin[root] && std::abs(pin[root] - value) > 1e-12) out.inconsistent = true;
    has_pin[root] = 1;
    pin[root] = value;
    if (value < 0.0) out.pinned_negative = true;
  }

  out.reduced_index.assign(n, -1);
  out.pinned_value.assign(n, 0.0);
  for (int v = 0; v < n; ++v) {
    const int root = find(v);
    if (has_pin[root]) {
      out.pinned_value[v] = pin[root];
      continue;
    }
    if (out.reduced_index[root] < 0) out.reduced_index[root] = out.num_vars++;
    out.reduced_index[v] = out.reduced_index[root];
  }

  auto rewrite = [&](const std::vector<std::pair<int, double>>& terms, double& constant) {
    std::map<int, double> acc;
    for (const auto& [j, c] : terms) {
      const int root = find(j);
      if (has_pin[root])
        constant += c * pin[root];
      else
        acc[out.reduced_index[root]] += c;
    }
    std::vector<std::pair<int, double>> reduced;
    for (const auto& [j, c] : acc)
      if (c != 0.0) reduced.emplace_back(j, c);
    return reduced;
  };

  std::set<std::tuple<int, double, std::vector<std::pair<int, double>>>> seen;
  for (const LPRow& row : model.rows) {
    if (row.tag == RowTag::nonneg || is_alias(row) || is_pin(row)) continue;
    double shift = 0.0;
    SimplexRow s;
    s.terms = rewrite(row.terms, shift);
    s.sense = row.sense;
    s.rhs = row.rhs - shift;
    if (s.terms.empty()) {
      const bool holds = s.sense == RowSense::le   ? 0.0 <= s.rhs + 1e-12
                         : s.sense == RowSense::ge ? 0.0 >= s.rhs - 1e-12
                                                   : std::abs(s.rhs) <= 1e-12;
      if (!holds) out.inconsistent = true;
      continue;
    }
    if (s.sense == RowSense::eq && s.terms.front().second < 0)
      for (auto& [j, c] : s.terms) c = -c;
    if (seen.emplace(static_cast<int>(s.sense), s.rhs, s.terms).second)
      out.rows.push_back(std::move(s));
  }

  double objective_shift = 0.0;
  out.objective = rewrite(model.objective, objective_shift);
  return out;
}

}  // namespace detail

// Solves by delayed constraint generation: an optimal basis can bind at most
// one row per variable, so the simplex only ever sees a working subset of the
// (mostly slack) row soup. Rounds alternate a small solve with a full
// violation scan until every row holds. Guard rows x <= B keep early
// subproblems bounded; a guard that still binds after convergence is grown
// and the loop continues, so a finite optimum is never clipped (for the
// certificate families the polytope lies inside [0, n]^vars and the initial
// guards are already slack).
inline LPSolution solve_lp(const LPModel& model, SimplexOptions options = {}) {
  constexpr double kViolationTol = 1e-9;
  const detail::LoweredLP lowered = detail::lower_model(model);
  LPSolution solution;
  if (lowered.inconsistent || lowered.pinned_negative) {
    solution.status = SolveStatus::infeasible;
    return solution;
  }

  double guard_bound = 16.0;
  std::vector<SimplexRow> working;
  std::vector<char> in_working(lowered.rows.size(), 0);
  for (int j = 0; j < lowered.num_vars; ++j)
    working.push_back(SimplexRow{{{j, 1.0}}, RowSense::le, guard_bound});
  for (std::size_t r = 0; r < lowered.rows.size(); ++r) {
    if (lowered.rows[r].terms.size() <= 2) {
      working.push_back(lowered.rows[r]);
      in_working[r] = 1;
    }
  }

  SimplexResult result;
  const int max_rounds = 1000;
  int guard_growths = 0;
  for (int round = 0; round < max_rounds; ++round) {
    result = solve_dense_simplex(lowered.num_vars, model.maximize, lowered.objective, working,
                                 options);
    solution.iterations += result.iterations;
    if (options.log_every > 0)
      std::fprintf(stderr, "lp: round=%d working=%zu status=%s obj=%.6f iters=%ld\n", round,
                   working.size(), to_string(result.status), result.objective, result.iterations);
    if (result.status != SolveStatus::optimal) {
      solution.status = result.status;
      return solution;
    }
    // Pull in every violated row, and among the satisfied ones those already
    // near tight: they are the likely next binders, and fetching them now
    // saves whole re-solve rounds.
    std::size_t violated_count = 0;
    for (std::size_t r = 0; r < lowered.rows.size(); ++r) {
      if (in_working[r]) continue;
      const SimplexRow& row = lowered.rows[r];
      double lhs = 0.0;
      for (const auto& [j, c] : row.terms) lhs += c * result.x[j];
      const double slack = row.sense == RowSense::le   ? row.rhs - lhs
                           : row.sense == RowSense::ge ? lhs - row.rhs
                                                       : -std::abs(lhs - row.rhs);
      if (slack < -kViolationTol) ++violated_count;
      if (slack < 1e-3) {
        working.push_back(row);
        in_working[r] = 1;
      }
    }
    if (violated_count == 0) {
      bool guard_binds = false;
      for (int j = 0; j < lowered.num_vars; ++j)
        guard_binds = guard_binds || result.x[j] >= guard_bound - 1e-6;
      if (!guard_binds) break;
      // bounded only by the guards so far: push them out and re-solve
      if (++guard_growths > 12) {
        solution.status = SolveStatus::unbounded;
        return solution;
      }
      guard_bound *= 16.0;
      for (int j = 0; j < lowered.num_vars; ++j) working[j].rhs = guard_bound;
    }
    if (round + 1 == max_rounds) {
      solution.status = SolveStatus::iteration_limit;
      return solution;
    }
  }

  solution.status = SolveStatus::optimal;
  solution.values.assign(model.num_vars, 0.0);
  for (int v = 0; v < model.num_vars; ++v)
    solution.values[v] = lowered.reduced_index[v] >= 0 ? result.x[lowered.reduced_index[v]]
                                                       : lowered.pinned_value[v];
  double objective = 0.0;
  for (const auto& [j, c] : model.objective) objective += c * solution.values[j];
  solution.objective = objective;
  solution.max_residual = verify_solution(model, solution.values).max_violation;
  return solution;
}

// --- certificate extraction -------------------------------------------------

struct CertificateBuild {
  Certificate certificate;
  SubmodularityReport submodularity;
  ConditionReport conditions;
  double max_residual = 0.0;
};

// Turns an optimal LP assignment into a verified certificate. Values tied by
// equality rows are snapped to their class mean, so the indistinguishability
// the adversary relies on holds exactly; the full submodularity check and the
// variant's condition set are then re-verified from scratch.
inline CertificateBuild solution_to_function(const LPSolution& solution, const LPConfig& cfg,
                                             double tol = 1e-6) {
  if (solution.status != SolveStatus::optimal)
    throw CertificateError(std::string("lp did not reach an optimum: ") +
                           to_string(solution.status));
  const int n = cfg.n;
  const std::uint32_t size = std::uint32_t{1} << n;
  std::vector<double> values = solution.values;
  if (values.size() != size) throw CertificateError("lp solution has the wrong width");

  std::vector<std::uint32_t> parent(size);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&parent](std::uint32_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  auto unite = [&](std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); };
  auto link_family = [&](const std::vector<EqualityPair>& pairs) {
    for (const EqualityPair& p : pairs) unite(p.lhs, p.rhs);
  };
  link_family(singleton_equalities(n));
  link_family(variant_equalities(cfg.variant, n, cfg.accept_items, cfg.reject_items, cfg.k));

  std::vector<double> class_sum(size, 0.0);
  std::vector<int> class_count(size, 0);
  for (std::uint32_t s = 0; s < size; ++s) {
    class_sum[find(s)] += values[s];
    ++class_count[find(s)];
  }
  for (std::uint32_t s = 0; s < size; ++s) values[s] = class_sum[find(s)] / class_count[find(s)];
  values[0] = 0.0;

  Certificate cert{SetFunction(GroundSet(n), std::move(values)),
                   cfg.accept_items,
                   cfg.reject_items,
                   cfg.optimum,
                   cfg.k,
                   cfg.variant};
  cert.validate_shape();

  CertificateBuild build{std::move(cert), {}, {}, 0.0};
  build.submodularity = check_submodular_full(build.certificate.fn, tol);
  build.conditions = verify_conditions(build.certificate, tol);
  if (!build.submodularity.ok) {
    const auto& v = *build.submodularity.first_violation;
    throw CertificateError("certificate is not submodular: f({" +
                           build.certificate.fn.ground().describe(v.s) + "}) with {" +
                           build.certificate.fn.ground().describe(v.t) + "} violates by " +
                           format_value(-v.slack));
  }
  if (!build.conditions.ok) {
    std::string why = "certificate failed its condition set:";
    for (const auto& c : build.conditions.checks)
      if (!c.ok) why += " [" + c.name + ": " + c.witness + "]";
    throw CertificateError(why);
  }
  if (!build.certificate.fn.is_normalized_nonnegative(tol))
    throw CertificateError("certificate is not normalized nonnegative");
  return build;
}

// --- LP text export / import -------------------------------------------------
//
// Standard LP-format text (objective, constraints, bounds, End), one
// constraint per line, variables named x_<mask>. All variables default to
// x >= 0, which matches the model, so the bounds section is empty.

inline void export_lp_text(const LPModel& model, std::ostream& os) {
  os << "\\ " << (model.name.empty() ? "lp model" : model.name) << '\n';
  os << "\\ vars: " << model.num_vars << '\n';
  os << (model.maximize ? "Maximize" : "Minimize") << '\n';
  os << " obj:";
  for (const auto& [j, c] : model.objective) {
    os << (c < 0 ? " - " : " + ");
    if (std::abs(c) != 1.0) os << format_value(std::abs(c)) << ' ';
    os << "x_" << j;
  }
  os << '\n';
  os << "Subject To\n";
  for (std::size_t r = 0; r < model.rows.size(); ++r) {
    const LPRow& row = model.rows[r];
    os << " r" << r << ':';
    for (const auto& [j, c] : row.terms) {
      os << (c < 0 ? " - " : " + ");
      if (std::abs(c) != 1.0) os << format_value(std::abs(c)) << ' ';
      os << "x_" << j;
    }
    os << ' ' << (row.sense == RowSense::le ? "<=" : row.sense == RowSense::ge ? ">=" : "=") << ' '
       << format_value(row.rhs) << '\n';
  }
  os << "Bounds\n";
  os << "End\n";
}

inline LPModel parse_lp_text(std::istream& is) {
  LPModel model;
  model.name = "imported";
  enum class Section { none, objective, rows, bounds, done };
  Section section = Section::none;
  int max_var = -1;
  std::string line;

  auto parse_terms = [&max_var](const std::string& text) {
    std::vector<std::pair<int, double>> terms;
    std::istringstream ss(text);
    std::string token;
    double sign = 1.0;
    double coef = 1.0;
    bool coef_pending = false;
    while (ss >> token) {
      if (token == "+") {
        sign = 1.0;
        continue;
      }
      if (token == "-") {
        sign = -1.0;
        continue;
      }
      if (token.rfind("x_", 0) == 0) {
        const int j = std::stoi(token.substr(2));
        terms.emplace_back(j, sign * (coef_pending ? coef : 1.0));
        max_var = std::max(max_var, j);
        sign = 1.0;
        coef = 1.0;
        coef_pending = false;
        continue;
      }
      coef = std::stod(token);
      coef_pending = true;
    }
    return terms;
  };

  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("\\ vars:", 0) == 0) {
      model.num_vars = std::stoi(line.substr(7));
      continue;
    }
    if (line.empty() || line[0] == '\\') continue;
    std::string lower;
    for (char c : line) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower.rfind("maximize", 0) == 0) {
      model.maximize = true;
      section = Section::objective;
      continue;
    }
    if (lower.rfind("minimize", 0) == 0) {
      model.maximize = false;
      section = Section::objective;
      continue;
    }
    if (lower.rfind("subject to", 0) == 0) {
      section = Section::rows;
      continue;
    }
    if (lower.rfind("bounds", 0) == 0) {
      section = Section::bounds;
      continue;
    }
    if (lower.rfind("end", 0) == 0) {
      section = Section::done;
      break;
    }

    std::string body = line;
    if (auto colon = body.find(':'); colon != std::string::npos) body = body.substr(colon + 1);

    if (section == Section::objective) {
      for (auto& term : parse_terms(body)) model.objective.push_back(term);
    } else if (section == Section::rows) {
      RowSense sense;
      std::size_t at;
      if ((at = body.find("<=")) != std::string::npos) {
        sense = RowSense::le;
      } else if ((at = body.find(">=")) != std::string::npos) {
        sense = RowSense::ge;
      } else if ((at = body.find('=')) != std::string::npos) {
        sense = RowSense::eq;
      } else {
        throw std::runtime_error("constraint line without relation: " + line);
      }
      const std::size_t rel_len = body[at] == '=' ? 1 : 2;
      LPRow row;
      row.terms = parse_terms(body.substr(0, at));
      row.sense = sense;
      row.rhs = std::stod(body.substr(at + rel_len));
      row.tag = RowTag::external;
      model.rows.push_back(std::move(row));
    }
    // bounds lines: all variables are x >= 0 by convention; nothing to do
  }
  if (model.num_vars == 0) model.num_vars = max_var + 1;
  return model;
}

}  // namespace myopic
