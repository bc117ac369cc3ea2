#pragma once

#include <limits>
#include <span>
#include <vector>

#include "myopic/game.hpp"
#include "myopic/gateway.hpp"
#include "myopic/instance.hpp"
#include "myopic/policy.hpp"

namespace myopic {

// Q(u): the vector of marginal gains of item u permitted by `model`, given
// the current position. Computed environment-side when a priority template
// ranks the remaining items; the policy itself never evaluates it.
inline QueryVector query_vector(const SetFunction& truth, int u, const GameState& state,
                                QueryModel model) {
  QueryVector q;
  auto push = [&](Query descriptor, double value) {
    q.descriptors.push_back(descriptor);
    q.values.push_back(value);
  };
  switch (model) {
    case QueryModel::q1:
      push(Query::accept_gain(), truth.marginal(u, state.accepted));
      push(Query::reject_gain(), truth.complement_marginal(u, state.rejected));
      break;
    case QueryModel::q2:
      for (int j = 0; j <= state.step; ++j) {
        push(Query::gain_at(j), truth.marginal(u, state.accepted_prefix[j]));
        push(Query::complement_gain_at(j),
             truth.complement_marginal(u, state.rejected_prefix[j]));
      }
      break;
    case QueryModel::q3:
      for_each_subset_of(state.decided(), [&](Subset s) {
        push(Query::gain(s), truth.marginal(u, s));
        push(Query::complement_gain(s), truth.complement_marginal(u, s));
      });
      break;
  }
  return q;
}

// Runs one game of the given template. Throws ModelViolationError if the
// policy steps outside the query model (the caller decides whether that
// forfeits the game).
inline GameTranscript run_game(Instance& instance, Policy& policy, GameTemplate game_template,
                               QueryModel model) {
  const int n = instance.n();
  GameState state(n);
  History history;
  policy.start_game(n);

  // Fixed template: the priority of every item is pinned before any query,
  // from its empty-set gains alone.
  std::vector<double> fixed_priorities(n, 0.0);
  if (game_template == GameTemplate::fixed) {
    const SetFunction& truth = instance.truth();
    for (int u = 0; u < n; ++u)
      fixed_priorities[u] = policy.fixed_priority(truth.marginal(u, Subset::empty_set()),
                                                  truth.complement_marginal(u, Subset::empty_set()));
  }

  GameTranscript transcript;
  transcript.game_template = game_template;
  transcript.model = model;

  for (int round = 1; round <= n; ++round) {
    switch (game_template) {
      case GameTemplate::online:
        instance.next_round_online(state);
        break;
      case GameTemplate::fixed:
      case GameTemplate::adaptive: {
        const std::vector<int> remaining = instance.remaining_items(state);
        std::vector<double> priority(remaining.size());
        for (std::size_t i = 0; i < remaining.size(); ++i) {
          priority[i] = game_template == GameTemplate::fixed
                            ? fixed_priorities[remaining[i]]
                            : policy.adaptive_priority(
                                  history, query_vector(instance.truth(), remaining[i], state, model));
        }
        double best = std::numeric_limits<double>::infinity();
        for (double p : priority) best = std::min(best, p);
        std::vector<int> tied;
        for (std::size_t i = 0; i < remaining.size(); ++i)
          if (priority[i] == best) tied.push_back(remaining[i]);
        if (tied.empty())  // NaN priorities have no minimum
          throw std::logic_error("priority function produced no comparable minimum");
        instance.next_round_among(state, tied);
        break;
      }
    }

    Gateway gateway(state, history, model, instance);
    const Decision decision = policy.decide(history, gateway);
    const int item = instance.resolve_decision(decision);

    StepRecord record;
    record.item = item;
    record.decision = decision;
    record.accept_gain = instance.truth().marginal(item, state.accepted);
    record.reject_gain = instance.truth().complement_marginal(item, state.rejected);
    history.log_step(record);
    transcript.steps.push_back(record);
    state.apply(item, decision);
  }

  transcript.order = state.revealed_order;
  transcript.queries = history.queries();
  transcript.final_accepted = state.accepted;
  transcript.final_value = instance.truth().value(state.accepted);
  transcript.oracle_calls = instance.oracle_calls();
  return transcript;
}

inline GameTranscript run_online(Instance& instance, Policy& policy, QueryModel model) {
  return run_game(instance, policy, GameTemplate::online, model);
}
inline GameTranscript run_fixed_priority(Instance& instance, Policy& policy, QueryModel model) {
  return run_game(instance, policy, GameTemplate::fixed, model);
}
inline GameTranscript run_adaptive_priority(Instance& instance, Policy& policy, QueryModel model) {
  return run_game(instance, policy, GameTemplate::adaptive, model);
}

// The deterministic double-sided greedy sweep over a fixed order.
inline GameTranscript run_double_greedy_det(const SetFunction& f, std::span<const int> order) {
  TableInstance instance(f, std::vector<int>(order.begin(), order.end()));
  DoubleGreedyPolicy policy;
  return run_online(instance, policy, QueryModel::q1);
}

// The randomized double-sided greedy sweep; `seed` pins the coin flips.
inline GameTranscript run_double_greedy_rand(const SetFunction& f, std::span<const int> order,
                                             std::uint64_t seed) {
  TableInstance instance(f, std::vector<int>(order.begin(), order.end()));
  RandomizedDoubleGreedyPolicy policy(seed);
  return run_online(instance, policy, QueryModel::q1);
}

// Re-applies a transcript's decisions from scratch and returns the value of
// the rebuilt accepted set. Sound transcripts reproduce final_value exactly.
inline double replay_value(const SetFunction& f, const GameTranscript& t) {
  Subset accepted;
  for (const StepRecord& s : t.steps)
    if (s.decision == Decision::accept) accepted = accepted.with(s.item);
  return f.value(accepted);
}

}  // namespace myopic
