#pragma once

#include <algorithm>
#include <vector>

#include "myopic/game.hpp"
#include "myopic/set_function.hpp"
#include "myopic/subset.hpp"

namespace myopic {

// Environment side of a game: owns the objective function and the item
// identities, presents one item per round, and answers value-oracle calls.
//
// The item under consideration may still be unresolved (an adversary binds
// it only after the decision), so oracle access splits into calls on decided
// ids and calls that include the current item.
class Instance {
 public:
  virtual ~Instance() = default;

  virtual int n() const = 0;

  // Full objective, for environment-side bookkeeping (priority computation,
  // transcripts, ratios). Never handed to policies.
  virtual const SetFunction& truth() const = 0;

  // Counted value-oracle calls. `ids` may contain decided items only.
  virtual double oracle_value(Subset ids) = 0;
  virtual double oracle_complement_value(Subset ids) = 0;
  // f(ids + u_i) / f-bar(ids + u_i) with the current item included.
  virtual double oracle_value_with_current(Subset ids) = 0;
  virtual double oracle_complement_value_with_current(Subset ids) = 0;

  virtual long long oracle_calls() const = 0;

  // Identities not yet decided, ascending. Environment-side knowledge.
  virtual std::vector<int> remaining_items(const GameState& state) const = 0;

  // Round control. Exactly one of the next_round_* calls starts each round.
  virtual void next_round_online(const GameState& state) = 0;
  // Priority templates: `tied` lists the remaining items of minimum priority;
  // the instance picks which of them the round presents.
  virtual void next_round_among(const GameState& state, const std::vector<int>& tied) = 0;
  // Commits the decision and returns the concrete item id it bound to.
  virtual int resolve_decision(Decision d) = 0;
};

// Honest instance over a fixed table: the current item is always concrete.
// Online rounds follow `order`; priority rounds present the tied candidate
// that comes first in `order` (ascending ids by default).
class TableInstance : public Instance {
 public:
  explicit TableInstance(const SetFunction& f) : TableInstance(f, identity_order(f.n())) {}

  TableInstance(const SetFunction& f, std::vector<int> order)
      : f_(&f), order_(std::move(order)), rank_(f.n(), 0) {
    if (static_cast<int>(order_.size()) != f.n())
      throw std::domain_error("order must be a permutation of the ground set");
    std::vector<bool> seen(f.n(), false);
    for (int i = 0; i < f.n(); ++i) {
      int item = order_[i];
      if (item < 0 || item >= f.n() || seen[item])
        throw std::domain_error("order must be a permutation of the ground set");
      seen[item] = true;
      rank_[item] = i;
    }
  }

  int n() const override { return f_->n(); }
  const SetFunction& truth() const override { return *f_; }

  double oracle_value(Subset ids) override {
    ++calls_;
    return f_->value(ids);
  }
  double oracle_complement_value(Subset ids) override {
    ++calls_;
    return f_->complement_value(ids);
  }
  double oracle_value_with_current(Subset ids) override {
    ++calls_;
    return f_->value(ids.with(current_));
  }
  double oracle_complement_value_with_current(Subset ids) override {
    ++calls_;
    return f_->complement_value(ids.with(current_));
  }
  long long oracle_calls() const override { return calls_; }

  std::vector<int> remaining_items(const GameState& state) const override {
    std::vector<int> out;
    for (int i = 0; i < n(); ++i)
      if (!state.decided().contains(i)) out.push_back(i);
    return out;
  }

  void next_round_online(const GameState& state) override { current_ = order_[state.step]; }

  void next_round_among(const GameState&, const std::vector<int>& tied) override {
    current_ = *std::min_element(tied.begin(), tied.end(),
                                 [this](int a, int b) { return rank_[a] < rank_[b]; });
  }

  int resolve_decision(Decision) override { return current_; }

 private:
  static std::vector<int> identity_order(int n) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    return order;
  }

  const SetFunction* f_;
  std::vector<int> order_;
  std::vector<int> rank_;
  int current_ = -1;
  long long calls_ = 0;
};

}  // namespace myopic
