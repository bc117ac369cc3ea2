#pragma once

#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "myopic/subset.hpp"

namespace myopic {

// Relevant-query classes, in strictly nested order of permissiveness:
//   q1: only the next attainable partial solutions, rho(u_i | X_{i-1}) and
//       rho-bar(u_i | Y_{i-1});
//   q2: all already attained partial solutions, rho(u_i | X_j) and
//       rho-bar(u_i | Y_j) for j < i;
//   q3: rho(u | S) and rho-bar(u | S) for any revealed item u and any
//       S inside the decided items.
enum class QueryModel { q1 = 1, q2 = 2, q3 = 3 };

enum class Decision { accept, reject };
enum class GameTemplate { online, fixed, adaptive };

inline const char* to_string(QueryModel m) {
  switch (m) {
    case QueryModel::q1: return "q-type-1";
    case QueryModel::q2: return "q-type-2";
    case QueryModel::q3: return "q-type-3";
  }
  return "?";
}

inline const char* to_string(GameTemplate t) {
  switch (t) {
    case GameTemplate::online: return "online";
    case GameTemplate::fixed: return "fixed";
    case GameTemplate::adaptive: return "adaptive";
  }
  return "?";
}

inline const char* to_string(Decision d) { return d == Decision::accept ? "accept" : "reject"; }

// Raised when a policy asks a query outside the active query model.
class ModelViolationError : public std::runtime_error {
 public:
  explicit ModelViolationError(const std::string& what) : std::runtime_error(what) {}
};

enum class OracleSide { value, complement };

// A relevant-query descriptor. The subject is either the current (not yet
// decided) item or an already revealed item; the base set is given either
// explicitly or as an index into the X_j / Y_j prefix chain.
struct Query {
  static constexpr int kExplicitBase = -1;
  static constexpr int kLatestPrefix = -2;

  OracleSide side = OracleSide::value;
  bool about_current = true;
  int item = -1;                 // valid when !about_current
  int prefix = kExplicitBase;    // kLatestPrefix, kExplicitBase, or j >= 0
  Subset base;                   // valid when prefix == kExplicitBase

  // rho(u_i | X_{i-1}), the accept-side gain.
  static Query accept_gain() { return Query{OracleSide::value, true, -1, kLatestPrefix, {}}; }
  // rho-bar(u_i | Y_{i-1}), the reject-side gain.
  static Query reject_gain() { return Query{OracleSide::complement, true, -1, kLatestPrefix, {}}; }
  static Query gain_at(int j) { return Query{OracleSide::value, true, -1, j, {}}; }
  static Query complement_gain_at(int j) { return Query{OracleSide::complement, true, -1, j, {}}; }
  static Query gain(Subset base) { return Query{OracleSide::value, true, -1, kExplicitBase, base}; }
  static Query complement_gain(Subset base) {
    return Query{OracleSide::complement, true, -1, kExplicitBase, base};
  }
  static Query gain_of(int item, Subset base) {
    return Query{OracleSide::value, false, item, kExplicitBase, base};
  }
  static Query complement_gain_of(int item, Subset base) {
    return Query{OracleSide::complement, false, item, kExplicitBase, base};
  }

  std::string describe() const {
    std::ostringstream os;
    os << (side == OracleSide::value ? "rho(" : "rho-bar(");
    if (about_current)
      os << "u_i";
    else
      os << "item " << item + 1;
    os << " | ";
    if (prefix == kLatestPrefix)
      os << (side == OracleSide::value ? "X_{i-1}" : "Y_{i-1}");
    else if (prefix >= 0)
      os << (side == OracleSide::value ? "X_" : "Y_") << prefix;
    else {
      os << '{';
      bool first = true;
      for (int i : base.items()) {
        if (!first) os << ' ';
        os << i + 1;
        first = false;
      }
      os << '}';
    }
    os << ')';
    return os.str();
  }
};

// The gain vector Q(u) of one item under the active query model: aligned
// descriptor/value pairs, in a fixed order that grows with the iterations
// under the richer models.
struct QueryVector {
  std::vector<Query> descriptors;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  bool same_values(const QueryVector& other) const { return values == other.values; }
};

// One irrevocable decision: the item it concerned and the two myopic gains
// at decision time, a_i = rho(item | X_{i-1}) and b_i = rho-bar(item | Y_{i-1}).
struct StepRecord {
  int item = -1;
  Decision decision = Decision::accept;
  double accept_gain = 0.0;
  double reject_gain = 0.0;
};

struct QueryRecord {
  int step = 0;  // 1-based round in which the query was asked
  Query query;
  double answer = 0.0;
};

// Append-only internal memory: decisions made and queries answered. Every
// logged query was permitted by the active model when it was asked.
class History {
 public:
  const std::vector<StepRecord>& steps() const { return steps_; }
  const std::vector<QueryRecord>& queries() const { return queries_; }

  // X_j / Y_j: the accepted / rejected sets after j completed rounds.
  Subset accepted_after(int j) const {
    Subset x;
    for (int i = 0; i < j; ++i)
      if (steps_[i].decision == Decision::accept) x = x.with(steps_[i].item);
    return x;
  }
  Subset rejected_after(int j) const {
    Subset y;
    for (int i = 0; i < j; ++i)
      if (steps_[i].decision == Decision::reject) y = y.with(steps_[i].item);
    return y;
  }

  void log_step(const StepRecord& s) { steps_.push_back(s); }
  void log_query(const QueryRecord& q) { queries_.push_back(q); }

 private:
  std::vector<StepRecord> steps_;
  std::vector<QueryRecord> queries_;
};

// Evolving double-sided position: disjoint accepted/rejected sets plus the
// presentation order, with the full X_j / Y_j prefix chains.
struct GameState {
  explicit GameState(int n_items) : n(n_items) {
    accepted_prefix.push_back(Subset::empty_set());
    rejected_prefix.push_back(Subset::empty_set());
  }

  int n = 0;
  int step = 0;  // completed rounds
  Subset accepted, rejected;
  std::vector<int> revealed_order;
  std::vector<Subset> accepted_prefix;  // X_0 .. X_step
  std::vector<Subset> rejected_prefix;  // Y_0 .. Y_step

  Subset decided() const { return accepted | rejected; }

  void apply(int item, Decision d) {
    if (decided().contains(item)) throw std::logic_error("item decided twice");
    if (d == Decision::accept)
      accepted = accepted.with(item);
    else
      rejected = rejected.with(item);
    revealed_order.push_back(item);
    accepted_prefix.push_back(accepted);
    rejected_prefix.push_back(rejected);
    ++step;
  }
};

// Per-step bookkeeping of the doubling comparison on directed cuts:
// certain payoff and potential payoff of accepting / rejecting.
struct DoublingStep {
  double certain_accept = 0.0;    // c(v, Y)
  double certain_reject = 0.0;    // c(X, v)
  double potential_accept = 0.0;  // w_out(v) - c(v, Y) - c(v, X)
  double potential_reject = 0.0;  // w_in(v) - c(Y, v) - c(X, v)
};

struct GameTranscript {
  GameTemplate game_template = GameTemplate::online;
  QueryModel model = QueryModel::q1;
  std::vector<int> order;  // items in presentation order (resolved ids)
  std::vector<StepRecord> steps;
  std::vector<QueryRecord> queries;
  std::vector<DoublingStep> doubling;  // filled by the doubling algorithm only
  Subset final_accepted;
  double final_value = 0.0;
  long long oracle_calls = 0;
};

inline std::string format_gain(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Line-oriented export: header comments carry the model and order, then one
// "i item decision a b" line per step with 9 significant digits.
inline void write_transcript(const GameTranscript& t, std::ostream& os) {
  os << "# model: " << to_string(t.model) << '\n';
  os << "# template: " << to_string(t.game_template) << '\n';
  os << "# order:";
  for (int item : t.order) os << ' ' << item + 1;
  os << '\n';
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const StepRecord& s = t.steps[i];
    os << (i + 1) << ' ' << s.item + 1 << ' ' << to_string(s.decision) << ' '
       << format_gain(s.accept_gain) << ' ' << format_gain(s.reject_gain) << '\n';
  }
}

inline std::string transcript_text(const GameTranscript& t) {
  std::ostringstream os;
  write_transcript(t, os);
  return os.str();
}

}  // namespace myopic
