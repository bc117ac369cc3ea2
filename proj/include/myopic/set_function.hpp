#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "myopic/subset.hpp"

namespace myopic {

// A set function stored as a dense table of 2^n values indexed by subset mask.
// Immutable after construction; safe for concurrent reads.
class SetFunction {
 public:
  SetFunction(GroundSet ground, std::vector<double> values)
      : ground_(std::move(ground)), values_(std::move(values)) {
    if (values_.size() != ground_.table_size())
      throw std::domain_error("value table must have exactly 2^n entries");
    for (double v : values_)
      if (!std::isfinite(v)) throw std::domain_error("value table entries must be finite");
  }

  static SetFunction zero(int n) {
    return SetFunction(GroundSet(n), std::vector<double>(std::size_t{1} << n, 0.0));
  }

  const GroundSet& ground() const { return ground_; }
  int n() const { return ground_.size(); }
  const std::vector<double>& values() const { return values_; }

  double value(Subset s) const {
    if (!ground_.valid(s)) throw std::domain_error("subset mask out of range for ground set");
    return values_[s.bits()];
  }

  // f-bar(S) = f(N \ S), the complementary oracle.
  double complement_value(Subset s) const { return value(s.complement(n())); }

  // rho(u | S) = f(S + u) - f(S). Requires u not in S.
  double marginal(int u, Subset s) const {
    require_outside(u, s);
    return value(s.with(u)) - value(s);
  }

  // rho-bar(u | S) = f-bar(S + u) - f-bar(S). Requires u not in S.
  double complement_marginal(int u, Subset s) const {
    require_outside(u, s);
    return complement_value(s.with(u)) - complement_value(s);
  }

  bool is_normalized_nonnegative(double tol = 0.0) const {
    if (std::abs(values_[0]) > tol) return false;
    return std::all_of(values_.begin(), values_.end(), [tol](double v) { return v >= -tol; });
  }

 private:
  void require_outside(int u, Subset s) const {
    if (u < 0 || u >= n()) throw std::domain_error("item index out of range");
    if (s.contains(u)) throw std::domain_error("marginal requires an item outside the base set");
  }

  GroundSet ground_;
  std::vector<double> values_;
};

struct SubmodularityViolation {
  Subset s;       // base set (pairwise form) or first operand (full form)
  Subset t;       // second operand (full form only)
  int u = -1;     // item pair (pairwise form only)
  int v = -1;
  double slack = 0.0;  // negative by how much the inequality fails
};

struct SubmodularityReport {
  bool ok = true;
  long long checked = 0;
  std::optional<SubmodularityViolation> first_violation;
};

// Pairwise check: f(S+u) + f(S+v) - f(S+uv) >= f(S) for all S and all
// unordered pairs u,v outside S. Equivalent to full submodularity.
inline SubmodularityReport check_submodular(const SetFunction& f, double tol) {
  SubmodularityReport report;
  const int n = f.n();
  const auto& val = f.values();
  for (int u = 0; u < n && report.ok; ++u) {
    for (int v = u + 1; v < n && report.ok; ++v) {
      const std::uint32_t bu = 1u << u, bv = 1u << v;
      const std::uint32_t rest = Subset::full_set(n).bits() & ~(bu | bv);
      for_each_subset_of(Subset(rest), [&](Subset s) {
        if (!report.ok) return;
        ++report.checked;
        const std::uint32_t b = s.bits();
        double slack = val[b | bu] + val[b | bv] - val[b | bu | bv] - val[b];
        if (slack < -tol) {
          report.ok = false;
          report.first_violation = SubmodularityViolation{s, Subset{}, u, v, slack};
        }
      });
    }
  }
  return report;
}

// Full check: f(S|T) + f(S&T) <= f(S) + f(T) for all S, T.
inline SubmodularityReport check_submodular_full(const SetFunction& f, double tol) {
  SubmodularityReport report;
  const auto& val = f.values();
  const std::uint32_t size = f.ground().table_size();
  for (std::uint32_t s = 0; s < size && report.ok; ++s) {
    for (std::uint32_t t = s + 1; t < size; ++t) {
      ++report.checked;
      double slack = val[s] + val[t] - val[s | t] - val[s & t];
      if (slack < -tol) {
        report.ok = false;
        report.first_violation = SubmodularityViolation{Subset(s), Subset(t), -1, -1, slack};
        break;
      }
    }
  }
  return report;
}

struct MaxResult {
  Subset argmax;
  double value = 0.0;
};

// Exhaustive maximum; ties broken by lowest mask for determinism.
inline MaxResult brute_force_max(const SetFunction& f) {
  const auto& val = f.values();
  MaxResult best{Subset::empty_set(), val[0]};
  for (std::uint32_t s = 1; s < val.size(); ++s) {
    if (val[s] > best.value) best = MaxResult{Subset(s), val[s]};
  }
  return best;
}

// --- function-table CSV -----------------------------------------------------
//
// Header "S,f"; one row per subset. The S column holds space-separated item
// labels (empty for the empty set), f a decimal with up to 7 significant
// digits. Lines starting with '#' are ignored.

inline std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.7g", v);
  return buf;
}

inline void write_function_csv(const SetFunction& f, std::ostream& os) {
  os << "S,f\n";
  const std::uint32_t size = f.ground().table_size();
  for (std::uint32_t s = 0; s < size; ++s)
    os << f.ground().describe(Subset(s)) << ',' << format_value(f.values()[s]) << '\n';
}

inline SetFunction read_function_csv(std::istream& is) {
  std::string line;
  bool saw_header = false;
  std::vector<std::pair<std::string, double>> rows;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!saw_header) {
      if (line != "S,f") throw std::runtime_error("function CSV must start with header 'S,f'");
      saw_header = true;
      continue;
    }
    auto comma = line.rfind(',');
    if (comma == std::string::npos) throw std::runtime_error("malformed CSV row: " + line);
    std::string set_part = line.substr(0, comma);
    std::string value_part = line.substr(comma + 1);
    std::size_t pos = 0;
    double v = std::stod(value_part, &pos);
    if (pos != value_part.size()) throw std::runtime_error("malformed CSV value: " + value_part);
    rows.emplace_back(std::move(set_part), v);
  }
  if (!saw_header) throw std::runtime_error("function CSV missing header");
  int n = 0;
  while ((std::size_t{1} << n) < rows.size()) ++n;
  if ((std::size_t{1} << n) != rows.size())
    throw std::runtime_error("function CSV must contain 2^n rows");
  GroundSet ground(n);
  std::vector<double> values(rows.size(), 0.0);
  std::vector<bool> seen(rows.size(), false);
  for (auto& [set_part, v] : rows) {
    Subset s;
    std::istringstream ss(set_part);
    std::string token;
    while (ss >> token) {
      int idx = ground.index_of(token);
      if (idx < 0) throw std::runtime_error("unknown item label in CSV: " + token);
      if (s.contains(idx)) throw std::runtime_error("duplicate item in CSV subset: " + token);
      s = s.with(idx);
    }
    if (seen[s.bits()]) throw std::runtime_error("duplicate subset row in CSV");
    seen[s.bits()] = true;
    values[s.bits()] = v;
  }
  return SetFunction(std::move(ground), std::move(values));
}

}  // namespace myopic
