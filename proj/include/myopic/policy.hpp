#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "myopic/game.hpp"
#include "myopic/gateway.hpp"
#include "myopic/rng.hpp"

namespace myopic {

// An algorithm under test. It sees the input length, the history, and a
// gateway for the current item; a priority template additionally consults
// its priority hooks. Policies never touch the objective directly.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;

  // Called once per game, before any round. `n` is the input length, the
  // only information available up front.
  virtual void start_game(int n) { (void)n; }

  virtual Decision decide(const History& history, Gateway& gateway) = 0;

  // Fixed template: priority of an item from its empty-set gains. Declared
  // once per game, before any query. Smaller value = higher priority.
  virtual double fixed_priority(double gain_empty, double complement_gain_empty) const {
    (void)gain_empty;
    (void)complement_gain_empty;
    return 0.0;
  }

  // Adaptive template: priority from the item's full permitted gain vector,
  // re-evaluated each round. Must be a pure function of its arguments.
  virtual double adaptive_priority(const History& history, const QueryVector& gains) const {
    (void)history;
    (void)gains;
    return 0.0;
  }
};

// Deterministic double-sided greedy: accept iff a_i >= b_i.
class DoubleGreedyPolicy : public Policy {
 public:
  std::string name() const override { return "double-greedy"; }
  Decision decide(const History&, Gateway& g) override {
    const double a = g.accept_gain();
    const double b = g.reject_gain();
    return a >= b ? Decision::accept : Decision::reject;
  }
};

// Randomized double-sided greedy: accept with probability a'/(a'+b') where
// a' = max(a, 0), b' = max(b, 0), accepting outright when both vanish.
class RandomizedDoubleGreedyPolicy : public Policy {
 public:
  explicit RandomizedDoubleGreedyPolicy(std::uint64_t seed) : seed_(seed), rng_(seed) {}

  static double accept_probability(double a, double b) {
    const double ap = std::max(a, 0.0);
    const double bp = std::max(b, 0.0);
    if (ap + bp == 0.0) return 1.0;
    return ap / (ap + bp);
  }

  std::string name() const override { return "random-greedy(" + std::to_string(seed_) + ")"; }
  void start_game(int) override { rng_ = Rng(seed_); }
  Decision decide(const History&, Gateway& g) override {
    const double a = g.accept_gain();
    const double b = g.reject_gain();
    return rng_.next_bool(accept_probability(a, b)) ? Decision::accept : Decision::reject;
  }

 private:
  std::uint64_t seed_;
  Rng rng_;
};

class AcceptAllPolicy : public Policy {
 public:
  std::string name() const override { return "accept-all"; }
  Decision decide(const History&, Gateway&) override { return Decision::accept; }
};

class RejectAllPolicy : public Policy {
 public:
  std::string name() const override { return "reject-all"; }
  Decision decide(const History&, Gateway&) override { return Decision::reject; }
};

// Accept iff the accept-side gain clears a threshold.
class ThresholdPolicy : public Policy {
 public:
  explicit ThresholdPolicy(double threshold) : threshold_(threshold) {}
  std::string name() const override { return "threshold(" + std::to_string(threshold_) + ")"; }
  Decision decide(const History&, Gateway& g) override {
    return g.accept_gain() >= threshold_ ? Decision::accept : Decision::reject;
  }

 private:
  double threshold_;
};

// Seeded policy family for adversarial stress runs. The seed fixes a decision
// style, query habits, and priority coefficients; every choice is a pure
// function of seed, round, and permitted information, so runs are
// reproducible and legal under any query model.
class SeededPolicy : public Policy {
 public:
  explicit SeededPolicy(std::uint64_t seed) : seed_(seed) {
    Rng r(seed);
    style_ = r.next_int(4);
    wa_ = r.next_range(-1.0, 1.0);
    wb_ = r.next_range(-1.0, 1.0);
    bias_ = r.next_range(-0.5, 0.5);
    delta_ = r.next_range(-0.25, 0.25);
    fa_ = r.next_range(-1.0, 1.0);
    fb_ = r.next_range(-1.0, 1.0);
    curious_ = r.next_bool(0.5);
  }

  std::string name() const override { return "seeded(" + std::to_string(seed_) + ")"; }

  Decision decide(const History& history, Gateway& g) override {
    const double a = g.accept_gain();
    const double b = g.reject_gain();
    if (curious_) ask_extra(history, g);
    switch (style_) {
      case 0:  // linear threshold over the two gains
        return wa_ * a + wb_ * b + bias_ >= 0.0 ? Decision::accept : Decision::reject;
      case 1:  // seeded coin per round, independent of the gains
        return (hash_mix(seed_, static_cast<std::uint64_t>(g.round())) & 1u)
                   ? Decision::accept
                   : Decision::reject;
      case 2:  // perturbed double greedy
        return a >= b + delta_ ? Decision::accept : Decision::reject;
      default:  // greedy on the accept side only
        return a + bias_ >= 0.0 ? Decision::accept : Decision::reject;
    }
  }

  double fixed_priority(double gain_empty, double complement_gain_empty) const override {
    return fa_ * gain_empty + fb_ * complement_gain_empty;
  }

  double adaptive_priority(const History&, const QueryVector& gains) const override {
    double p = 0.0;
    for (std::size_t i = 0; i < gains.size(); ++i) p += (i % 2 == 0 ? fa_ : fb_) * gains.values[i];
    return p;
  }

 private:
  // Exercise the wider query surface that the active model permits.
  void ask_extra(const History&, Gateway& g) {
    if (g.model() == QueryModel::q1) return;
    g.ask(Query::gain_at(0));
    g.ask(Query::complement_gain_at(0));
    if (g.model() == QueryModel::q3 && g.round() > 1) {
      // a seeded subset of the decided items, and one revealed-item gain
      Subset base;
      const Subset decided = g.accepted() | g.rejected();
      for (int i : decided.items())
        if (hash_mix(seed_ ^ i, static_cast<std::uint64_t>(g.round())) & 1u) base = base.with(i);
      g.ask(Query::gain(base));
      const int who = g.revealed().front();
      g.ask(Query::gain_of(who, base.without(who)));
    }
  }

  std::uint64_t seed_;
  int style_;
  double wa_, wb_, bias_, delta_, fa_, fb_;
  bool curious_;
};

// The standard stress collection: the named deterministic policies plus
// `random_count` seeded ones.
inline std::vector<std::unique_ptr<Policy>> make_policy_zoo(int random_count,
                                                            std::uint64_t seed = 2024) {
  std::vector<std::unique_ptr<Policy>> zoo;
  zoo.push_back(std::make_unique<DoubleGreedyPolicy>());
  zoo.push_back(std::make_unique<AcceptAllPolicy>());
  zoo.push_back(std::make_unique<RejectAllPolicy>());
  for (double t : {-0.5, 0.0, 0.25, 0.5, 1.0}) zoo.push_back(std::make_unique<ThresholdPolicy>(t));
  for (int i = 0; i < random_count; ++i)
    zoo.push_back(std::make_unique<SeededPolicy>(hash_mix(seed, static_cast<std::uint64_t>(i))));
  return zoo;
}

}  // namespace myopic
