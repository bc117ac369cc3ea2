#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "myopic/certificate.hpp"
#include "myopic/set_function.hpp"
#include "myopic/subset.hpp"

namespace myopic {

// ---------------------------------------------------------------------------
// Equality instances
//
// Everything an algorithm may learn about the paired items is pinned by
// families of value equalities. Each instance compares f on two subsets;
// complement-oracle equalities are resolved to their complement masks at
// generation time. The enumerations below are also the row generators for
// the LP construction, so their instance counts are part of the contract:
//   prefix family   (fixed q2):   2 * sum_{i=1}^{k-1} 2^i (k-i)
//   subset family   (fixed q3):   2 * sum_{i=0}^{k-1} 4^i
//   all-pairs family (adaptive):  2 * sum_{i=0}^{k-1} 2^i C(n-i, 2)
// ---------------------------------------------------------------------------

struct EqualityPair {
  std::uint32_t lhs = 0;
  std::uint32_t rhs = 0;
  bool complement_side = false;  // true when it came from the complement oracle
};

namespace detail {

// Visits every choice prefix of depth i: `t` ranges over the 2^i ways to pick
// one item from each of the first i pairs. X collects the picked accept-side
// items, Y the picked reject-side items.
template <typename Fn>
void for_each_choice_prefix(const std::vector<int>& accept_items,
                            const std::vector<int>& reject_items, int depth, Fn&& fn) {
  for (std::uint32_t t = 0; t < (std::uint32_t{1} << depth); ++t) {
    Subset chosen, x, y;
    for (int j = 0; j < depth; ++j) {
      if (t >> j & 1u) {
        chosen = chosen.with(reject_items[j]);
        y = y.with(reject_items[j]);
      } else {
        chosen = chosen.with(accept_items[j]);
        x = x.with(accept_items[j]);
      }
    }
    fn(chosen, x, y);
  }
}

}  // namespace detail

// All singleton values equal, on both oracles.
inline std::vector<EqualityPair> singleton_equalities(int n) {
  std::vector<EqualityPair> out;
  const std::uint32_t full = Subset::full_set(n).bits();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      out.push_back({std::uint32_t{1} << u, std::uint32_t{1} << v, false});
      out.push_back({full ^ (std::uint32_t{1} << u), full ^ (std::uint32_t{1} << v), true});
    }
  return out;
}

// Fixed q2: for every realized prefix depth i and every later pair j, the two
// candidates look alike against the attained partial solutions X_i and Y_i.
inline std::vector<EqualityPair> prefix_equalities(int n, const std::vector<int>& accept_items,
                                                   const std::vector<int>& reject_items, int k) {
  std::vector<EqualityPair> out;
  const std::uint32_t full = Subset::full_set(n).bits();
  for (int i = 1; i < k; ++i) {
    detail::for_each_choice_prefix(accept_items, reject_items, i, [&](Subset, Subset x, Subset y) {
      for (int j = i + 1; j <= k; ++j) {
        const std::uint32_t a = std::uint32_t{1} << accept_items[j - 1];
        const std::uint32_t r = std::uint32_t{1} << reject_items[j - 1];
        out.push_back({x.bits() | a, x.bits() | r, false});
        out.push_back({full ^ (y.bits() | a), full ^ (y.bits() | r), true});
      }
    });
  }
  return out;
}

// Fixed q3: the next pair looks alike against every subset of the realized
// prefix, on both oracles.
inline std::vector<EqualityPair> subset_equalities(int n, const std::vector<int>& accept_items,
                                                   const std::vector<int>& reject_items, int k) {
  std::vector<EqualityPair> out;
  const std::uint32_t full = Subset::full_set(n).bits();
  for (int i = 0; i < k; ++i) {
    const std::uint32_t a = std::uint32_t{1} << accept_items[i];
    const std::uint32_t r = std::uint32_t{1} << reject_items[i];
    detail::for_each_choice_prefix(accept_items, reject_items, i,
                                   [&](Subset chosen, Subset, Subset) {
                                     for_each_subset_of(chosen, [&](Subset s) {
                                       out.push_back({s.bits() | a, s.bits() | r, false});
                                       out.push_back({full ^ (s.bits() | a), full ^ (s.bits() | r), true});
                                     });
                                   });
  }
  return out;
}

// Adaptive q2: after any realized prefix, all still-unfixed items look alike
// against the attained partial solutions.
inline std::vector<EqualityPair> allpairs_equalities(int n, const std::vector<int>& accept_items,
                                                     const std::vector<int>& reject_items, int k) {
  std::vector<EqualityPair> out;
  const std::uint32_t full = Subset::full_set(n).bits();
  for (int i = 0; i < k; ++i) {
    detail::for_each_choice_prefix(
        accept_items, reject_items, i, [&](Subset chosen, Subset x, Subset y) {
          for (int u = 0; u < n; ++u) {
            if (chosen.contains(u)) continue;
            for (int v = u + 1; v < n; ++v) {
              if (chosen.contains(v)) continue;
              const std::uint32_t bu = std::uint32_t{1} << u;
              const std::uint32_t bv = std::uint32_t{1} << v;
              out.push_back({x.bits() | bu, x.bits() | bv, false});
              out.push_back({full ^ (y.bits() | bu), full ^ (y.bits() | bv), true});
            }
          }
        });
  }
  return out;
}

inline std::vector<EqualityPair> variant_equalities(Variant variant, int n,
                                                    const std::vector<int>& accept_items,
                                                    const std::vector<int>& reject_items, int k) {
  switch (variant) {
    case Variant::fixed_q2: return prefix_equalities(n, accept_items, reject_items, k);
    case Variant::fixed_q3: return subset_equalities(n, accept_items, reject_items, k);
    case Variant::adaptive_q2: return allpairs_equalities(n, accept_items, reject_items, k);
  }
  return {};
}

// Calls fn(S) for every extension of every depth-k prefix: the picked
// accept-side items are forced into S, the picked reject-side items are
// forced out, everything else is free. Visits duplicates across prefixes.
template <typename Fn>
void for_each_trap_extension(int n, const std::vector<int>& accept_items,
                             const std::vector<int>& reject_items, int k, Fn&& fn) {
  detail::for_each_choice_prefix(accept_items, reject_items, k,
                                 [&](Subset chosen, Subset x, Subset) {
                                   const Subset free = chosen.complement(n);
                                   for_each_subset_of(free, [&](Subset extra) { fn(x | extra); });
                                 });
}

// The distinct trapped subsets, ascending.
inline std::vector<std::uint32_t> trap_masks(int n, const std::vector<int>& accept_items,
                                             const std::vector<int>& reject_items, int k) {
  std::vector<bool> hit(std::size_t{1} << n, false);
  for_each_trap_extension(n, accept_items, reject_items, k,
                          [&](Subset s) { hit[s.bits()] = true; });
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0; s < hit.size(); ++s)
    if (hit[s]) out.push_back(s);
  return out;
}

// ---------------------------------------------------------------------------
// Condition verification
// ---------------------------------------------------------------------------

struct ConditionCheck {
  std::string name;
  bool ok = true;
  long long instances = 0;
  double worst_gap = 0.0;
  std::string witness;
};

struct ConditionReport {
  bool ok = true;
  double target_value = 0.0;  // c = f(O)
  std::vector<ConditionCheck> checks;

  const ConditionCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {

inline std::string describe_pair_side(const GroundSet& ground, const EqualityPair& p, int n) {
  auto show = [&](std::uint32_t mask) {
    const Subset s = p.complement_side ? Subset(mask).complement(n) : Subset(mask);
    return "{" + ground.describe(s) + "}";
  };
  const char* oracle = p.complement_side ? "f-bar" : "f";
  return std::string(oracle) + show(p.lhs) + " vs " + oracle + show(p.rhs);
}

inline ConditionCheck check_equalities(const SetFunction& f, const std::string& name,
                                       const std::vector<EqualityPair>& pairs, double tol) {
  ConditionCheck check;
  check.name = name;
  check.instances = static_cast<long long>(pairs.size());
  for (const EqualityPair& p : pairs) {
    const double gap = std::abs(f.values()[p.lhs] - f.values()[p.rhs]);
    if (gap > check.worst_gap) check.worst_gap = gap;
    if (gap > tol && check.ok) {
      check.ok = false;
      check.witness = describe_pair_side(f.ground(), p, f.n()) + " differ by " + format_value(gap);
    }
  }
  return check;
}

}  // namespace detail

// Checks the full condition set a certificate of the given variant must
// satisfy: equal singletons, the variant's indistinguishability equalities,
// the trap cap f(S) <= 1 over every prefix extension, and records the target
// value c = f(O). Failures are report payload, not errors.
inline ConditionReport verify_conditions(const SetFunction& f,
                                         const std::vector<int>& accept_items,
                                         const std::vector<int>& reject_items, Subset optimum,
                                         int k, Variant variant, double tol = 1e-6) {
  const int n = f.n();
  ConditionReport report;

  report.checks.push_back(
      detail::check_equalities(f, "singletons-equal", singleton_equalities(n), tol));

  const char* family_name = variant == Variant::fixed_q2      ? "prefix-equalities"
                            : variant == Variant::fixed_q3    ? "subset-equalities"
                                                              : "allpairs-equalities";
  report.checks.push_back(detail::check_equalities(
      f, family_name, variant_equalities(variant, n, accept_items, reject_items, k), tol));

  ConditionCheck trap;
  trap.name = "trap-cap";
  for_each_trap_extension(n, accept_items, reject_items, k, [&](Subset s) {
    ++trap.instances;
    const double excess = f.value(s) - 1.0;
    if (excess > trap.worst_gap) trap.worst_gap = excess;
    if (excess > tol && trap.ok) {
      trap.ok = false;
      trap.witness =
          "f({" + f.ground().describe(s) + "}) = " + format_value(f.value(s)) + " exceeds 1";
    }
  });
  if (trap.worst_gap < 0.0) trap.worst_gap = 0.0;
  report.checks.push_back(trap);

  ConditionCheck target;
  target.name = "target-value";
  target.instances = 1;
  report.target_value = f.value(optimum);
  target.witness = "c = " + format_value(report.target_value);
  report.checks.push_back(target);

  for (const auto& c : report.checks) report.ok = report.ok && c.ok;
  return report;
}

inline ConditionReport verify_conditions(const Certificate& cert, double tol = 1e-6) {
  cert.validate_shape();
  return verify_conditions(cert.fn, cert.accept_items, cert.reject_items, cert.optimum, cert.k,
                           cert.variant, tol);
}

}  // namespace myopic
