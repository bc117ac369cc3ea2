#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "myopic/game.hpp"
#include "myopic/instance.hpp"
#include "myopic/subset.hpp"

namespace myopic {

// Per-round query mediator. Policies see only this object (plus the history);
// every oracle access is validated against the active query model and logged.
// Validation is semantic: a query is judged by the concrete base set it
// resolves to, not by how it was phrased.
class Gateway {
 public:
  Gateway(const GameState& state, History& history, QueryModel model, Instance& instance)
      : state_(state), history_(history), model_(model), instance_(instance) {}

  QueryModel model() const { return model_; }
  int n() const { return state_.n; }
  // 1-based index of the round in progress.
  int round() const { return state_.step + 1; }
  Subset accepted() const { return state_.accepted; }
  Subset rejected() const { return state_.rejected; }
  const std::vector<int>& revealed() const { return state_.revealed_order; }

  double accept_gain() { return ask(Query::accept_gain()); }
  double reject_gain() { return ask(Query::reject_gain()); }

  double ask(const Query& q) {
    Query resolved = q;
    resolve_base(resolved);
    validate(resolved);
    const double answer = evaluate(resolved);
    history_.log_query(QueryRecord{round(), resolved, answer});
    return answer;
  }

 private:
  void resolve_base(Query& q) const {
    if (q.prefix == Query::kExplicitBase) return;
    int j = q.prefix == Query::kLatestPrefix ? state_.step : q.prefix;
    if (j < 0 || j > state_.step)
      throw ModelViolationError("query names a partial solution that does not exist yet: " +
                                q.describe());
    q.base = q.side == OracleSide::value ? state_.accepted_prefix[j] : state_.rejected_prefix[j];
    q.prefix = Query::kExplicitBase;
  }

  void validate(const Query& q) const {
    switch (model_) {
      case QueryModel::q1: {
        const Subset latest =
            q.side == OracleSide::value ? state_.accepted : state_.rejected;
        if (!q.about_current || q.base != latest) violation(q);
        return;
      }
      case QueryModel::q2: {
        if (!q.about_current) violation(q);
        const auto& chain =
            q.side == OracleSide::value ? state_.accepted_prefix : state_.rejected_prefix;
        if (std::find(chain.begin(), chain.end(), q.base) == chain.end()) violation(q);
        return;
      }
      case QueryModel::q3: {
        if (!q.base.subset_of(state_.decided())) violation(q);
        if (!q.about_current) {
          if (!state_.decided().contains(q.item)) violation(q);
          if (q.base.contains(q.item)) violation(q);
        }
        return;
      }
    }
  }

  [[noreturn]] void violation(const Query& q) const {
    throw ModelViolationError(std::string(to_string(model_)) + " does not permit " + q.describe());
  }

  double evaluate(const Query& q) const {
    if (q.about_current) {
      if (q.side == OracleSide::value)
        return instance_.oracle_value_with_current(q.base) - instance_.oracle_value(q.base);
      return instance_.oracle_complement_value_with_current(q.base) -
             instance_.oracle_complement_value(q.base);
    }
    if (q.side == OracleSide::value)
      return instance_.oracle_value(q.base.with(q.item)) - instance_.oracle_value(q.base);
    return instance_.oracle_complement_value(q.base.with(q.item)) -
           instance_.oracle_complement_value(q.base);
  }

  const GameState& state_;
  History& history_;
  QueryModel model_;
  Instance& instance_;
};

}  // namespace myopic
