#pragma once

#include <span>
#include <vector>

#include "myopic/digraph.hpp"
#include "myopic/game.hpp"
#include "myopic/rng.hpp"
#include "myopic/runner.hpp"

namespace myopic {

// The doubling online rule for directed cuts, driven by local edge data only:
// accept v when the certain payoff plus half the potential payoff of
// accepting is at least the same score for rejecting,
//   c(v,Y) + P_accept/2  >=  c(X,v) + P_reject/2.
// This is exactly the a_i >= b_i comparison of the double-sided greedy on
// the cut function, since both sides differ from those gains by c(v,Y)+c(X,v).
inline GameTranscript run_doubling_dicut(const Digraph& g, std::span<const int> order) {
  const int n = g.n();
  if (static_cast<int>(order.size()) != n)
    throw std::domain_error("order must be a permutation of the vertices");
  GameTranscript t;
  t.game_template = GameTemplate::online;
  t.model = QueryModel::q1;
  Subset x, y;
  for (int v : order) {
    const Subset vs = Subset::singleton(v);
    DoublingStep q;
    q.certain_accept = g.cut_between(vs, y);
    q.certain_reject = g.cut_between(x, vs);
    q.potential_accept = g.w_out(v) - g.cut_between(vs, y) - g.cut_between(vs, x);
    q.potential_reject = g.w_in(v) - g.cut_between(y, vs) - g.cut_between(x, vs);
    const bool accept =
        q.certain_accept + q.potential_accept / 2 >= q.certain_reject + q.potential_reject / 2;

    StepRecord s;
    s.item = v;
    s.decision = accept ? Decision::accept : Decision::reject;
    s.accept_gain = digraph_marginals(g, v, x).gain;
    s.reject_gain = digraph_marginals(g, v, y).complement_gain;
    t.doubling.push_back(q);
    t.steps.push_back(s);
    t.order.push_back(v);
    if (accept)
      x = x.with(v);
    else
      y = y.with(v);
  }
  t.final_accepted = x;
  t.final_value = g.cut_value(x);
  return t;
}

// Uniform random cut: accept each vertex with probability 1/2.
inline GameTranscript run_random_cut(const Digraph& g, std::span<const int> order,
                                     std::uint64_t seed) {
  const int n = g.n();
  if (static_cast<int>(order.size()) != n)
    throw std::domain_error("order must be a permutation of the vertices");
  GameTranscript t;
  t.game_template = GameTemplate::online;
  t.model = QueryModel::q1;
  Rng rng(seed);
  Subset x, y;
  for (int v : order) {
    const bool accept = rng.next_bool(0.5);
    StepRecord s;
    s.item = v;
    s.decision = accept ? Decision::accept : Decision::reject;
    s.accept_gain = digraph_marginals(g, v, x).gain;
    s.reject_gain = digraph_marginals(g, v, y).complement_gain;
    t.steps.push_back(s);
    t.order.push_back(v);
    if (accept)
      x = x.with(v);
    else
      y = y.with(v);
  }
  t.final_accepted = x;
  t.final_value = g.cut_value(x);
  return t;
}

struct AgreementDivergence {
  int step = 0;  // 1-based
  int item = -1;
  Decision greedy = Decision::accept;
  Decision doubling = Decision::accept;
  double accept_gain = 0.0;
  double reject_gain = 0.0;
  DoublingStep quantities;
};

struct AgreementReport {
  bool agree = true;
  int steps = 0;
  std::vector<AgreementDivergence> divergences;
  Subset greedy_final;
  Subset doubling_final;
};

// Runs the double-sided greedy on the materialized cut function and the
// doubling rule on the raw graph, and compares decisions step by step.
inline AgreementReport compare_doubling_double_greedy(const Digraph& g,
                                                      std::span<const int> order) {
  const SetFunction f = cut_function(g);
  const GameTranscript greedy = run_double_greedy_det(f, order);
  const GameTranscript doubling = run_doubling_dicut(g, order);
  AgreementReport report;
  report.steps = g.n();
  report.greedy_final = greedy.final_accepted;
  report.doubling_final = doubling.final_accepted;
  for (int i = 0; i < g.n(); ++i) {
    if (greedy.steps[i].decision == doubling.steps[i].decision) continue;
    report.agree = false;
    report.divergences.push_back(AgreementDivergence{
        i + 1, greedy.steps[i].item, greedy.steps[i].decision, doubling.steps[i].decision,
        greedy.steps[i].accept_gain, greedy.steps[i].reject_gain, doubling.doubling[i]});
  }
  if (report.greedy_final != report.doubling_final) report.agree = false;
  return report;
}

}  // namespace myopic
