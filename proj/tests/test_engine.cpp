#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "myopic/dicut.hpp"
#include "myopic/digraph.hpp"
#include "myopic/gateway.hpp"
#include "myopic/generators.hpp"
#include "myopic/instance.hpp"
#include "myopic/policy.hpp"
#include "myopic/rng.hpp"
#include "myopic/runner.hpp"

using namespace myopic;

namespace {

// Runs `probe` inside round 3 of a game whose first two decisions are given.
template <typename Probe>
void probe_round_three(const SetFunction& f, QueryModel model, Decision first, Decision second,
                       Probe&& probe) {
  class ProbePolicy : public Policy {
   public:
    ProbePolicy(Probe&& p, Decision a, Decision b) : probe_(std::move(p)), first_(a), second_(b) {}
    std::string name() const override { return "probe"; }
    Decision decide(const History& history, Gateway& g) override {
      switch (history.steps().size()) {
        case 0: return first_;
        case 1: return second_;
        default:
          if (!fired_) {
            probe_(g);
            fired_ = true;
          }
          return Decision::reject;
      }
    }

   private:
    Probe probe_;
    Decision first_, second_;
    bool fired_ = false;
  } policy(std::forward<Probe>(probe), first, second);
  TableInstance instance(f);
  run_online(instance, policy, model);
}

}  // namespace

TEST_CASE("q-type 1 permits exactly the frontier queries") {
  const SetFunction f = cut_function(directed_cycle(6));
  probe_round_three(f, QueryModel::q1, Decision::accept, Decision::accept, [](Gateway& g) {
    CHECK(g.ask(Query::accept_gain()) == g.ask(Query::gain_at(2)));
    CHECK_NOTHROW(g.ask(Query::reject_gain()));
    // X_1 != X_2 after two accepts, so the older prefix is out of reach
    CHECK_THROWS_AS(g.ask(Query::gain_at(1)), ModelViolationError);
  });

  // after a rejection X_1 == X_2, and the same descriptor is fine
  probe_round_three(f, QueryModel::q1, Decision::accept, Decision::reject, [](Gateway& g) {
    CHECK_NOTHROW(g.ask(Query::gain_at(1)));
    CHECK_THROWS_AS(g.ask(Query::complement_gain_at(1)), ModelViolationError);
  });
}

TEST_CASE("q-type 2 reaches all attained prefixes but only the current item") {
  const SetFunction f = cut_function(directed_cycle(6));
  probe_round_three(f, QueryModel::q2, Decision::accept, Decision::accept, [](Gateway& g) {
    CHECK_NOTHROW(g.ask(Query::gain_at(0)));
    CHECK_NOTHROW(g.ask(Query::gain_at(1)));
    CHECK_NOTHROW(g.ask(Query::complement_gain_at(2)));
    // revealed items other than the current one are off limits
    const int revealed = g.revealed().front();
    CHECK_THROWS_AS(g.ask(Query::gain_of(revealed, Subset())), ModelViolationError);
    // arbitrary bases are off limits unless they are an attained prefix
    CHECK_THROWS_AS(g.ask(Query::gain(Subset::singleton(1))), ModelViolationError);
  });
}

TEST_CASE("q-type 3 reaches every revealed item and decided base") {
  const SetFunction f = cut_function(directed_cycle(6));
  probe_round_three(f, QueryModel::q3, Decision::accept, Decision::accept, [](Gateway& g) {
    // rho(v3 | {v1}) on the 6-cycle at round 3
    CHECK(g.ask(Query::gain(Subset::singleton(0))) == 1.0);
    CHECK_NOTHROW(g.ask(Query::gain_of(0, Subset::singleton(1))));
    CHECK_NOTHROW(g.ask(Query::complement_gain_of(1, Subset::singleton(0))));
    // the base may not contain the subject
    CHECK_THROWS_AS(g.ask(Query::gain_of(0, Subset::singleton(0))), ModelViolationError);
    // undecided items cannot be named
    CHECK_THROWS_AS(g.ask(Query::gain_of(5, Subset())), ModelViolationError);
    CHECK_THROWS_AS(g.ask(Query::gain(Subset::singleton(5))), ModelViolationError);
  });
}

TEST_CASE("query models nest") {
  Rng rng(7);
  long long checked = 0;
  while (checked < 1000) {
    const int n = 3 + rng.next_int(4);
    const SetFunction f = random_submodular_table(n, rng);
    std::vector<Decision> script;
    for (int i = 0; i < n; ++i)
      script.push_back(rng.next_bool() ? Decision::accept : Decision::reject);

    // capture answers under each model for a random prefix query
    const int round = 2 + rng.next_int(n - 2);
    const int prefix = rng.next_int(round);
    const bool comp = rng.next_bool();
    double answers[3];
    for (int m = 0; m < 3; ++m) {
      class OneShot : public Policy {
       public:
        OneShot(std::vector<Decision> s, int round, int prefix, bool comp, double& out)
            : script_(std::move(s)), round_(round), prefix_(prefix), comp_(comp), out_(out) {}
        std::string name() const override { return "one-shot"; }
        Decision decide(const History& h, Gateway& g) override {
          const int i = static_cast<int>(h.steps().size());
          if (i + 1 == round_) {
            // legal under q1 only when it coincides with the frontier, so
            // resolve through the weakest legal phrasing instead
            if (g.model() == QueryModel::q1)
              out_ = comp_ ? g.reject_gain() : g.accept_gain();
            else
              out_ = g.ask(comp_ ? Query::complement_gain_at(prefix_) : Query::gain_at(prefix_));
          }
          return script_.at(i);
        }

       private:
        std::vector<Decision> script_;
        int round_, prefix_;
        bool comp_;
        double& out_;
      } policy(script, round, prefix, comp, answers[m]);
      TableInstance instance(f);
      run_online(instance, policy, static_cast<QueryModel>(m + 1));
    }
    // the frontier query must answer identically under every model
    (void)answers;
    double frontier[3];
    for (int m = 0; m < 3; ++m) {
      class Frontier : public Policy {
       public:
        Frontier(std::vector<Decision> s, int round, bool comp, double& out)
            : script_(std::move(s)), round_(round), comp_(comp), out_(out) {}
        std::string name() const override { return "frontier"; }
        Decision decide(const History& h, Gateway& g) override {
          const int i = static_cast<int>(h.steps().size());
          if (i + 1 == round_) out_ = comp_ ? g.reject_gain() : g.accept_gain();
          return script_.at(i);
        }

       private:
        std::vector<Decision> script_;
        int round_;
        bool comp_;
        double& out_;
      } policy(script, round, comp, frontier[m]);
      TableInstance instance(f);
      run_online(instance, policy, static_cast<QueryModel>(m + 1));
    }
    CHECK(frontier[0] == frontier[1]);
    CHECK(frontier[1] == frontier[2]);
    // q2 phrasings answer identically under q3
    CHECK(answers[1] == answers[2]);
    ++checked;
  }
}

TEST_CASE("gateway logs permitted queries only") {
  const SetFunction f = cut_function(directed_cycle(6));
  class Nosy : public Policy {
   public:
    std::string name() const override { return "nosy"; }
    Decision decide(const History& h, Gateway& g) override {
      g.accept_gain();
      if (h.steps().size() == 2) CHECK_THROWS_AS(g.ask(Query::gain_at(0)), ModelViolationError);
      return Decision::accept;
    }
  } policy;
  TableInstance instance(f);
  const GameTranscript t = run_online(instance, policy, QueryModel::q1);
  CHECK(t.queries.size() == 6);  // one logged query per round, violations unlogged
  for (const QueryRecord& q : t.queries) CHECK(q.query.about_current);
}

TEST_CASE("deterministic double greedy") {
  const SetFunction edge = cut_function(Digraph(2, {Edge{0, 1, 1.0}}));
  const std::vector<int> order{0, 1};
  const GameTranscript t = run_double_greedy_det(edge, order);
  CHECK(t.steps[0].decision == Decision::accept);
  CHECK(t.steps[1].decision == Decision::reject);
  CHECK(t.final_value == 1.0);
  CHECK(t.final_value == brute_force_max(edge).value);

  // ties accept: the zero function ends with everything accepted
  const SetFunction zero = SetFunction::zero(4);
  const std::vector<int> order4{2, 0, 3, 1};
  const GameTranscript tz = run_double_greedy_det(zero, order4);
  CHECK(tz.final_accepted == Subset::full_set(4));
  CHECK(tz.final_value == 0.0);
}

TEST_CASE("one-third guarantee on random instances") {
  Rng rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + rng.next_int(4);  // 3..6
    const SetFunction f = random_submodular_table(n, rng);
    const std::vector<int> order = rng.permutation(n);
    const GameTranscript t = run_double_greedy_det(f, order);
    const double opt = brute_force_max(f).value;
    REQUIRE(t.final_value >= opt / 3.0 - 1e-9);
  }
}

TEST_CASE("randomized double greedy") {
  CHECK(RandomizedDoubleGreedyPolicy::accept_probability(3.0, 1.0) == 0.75);
  CHECK(RandomizedDoubleGreedyPolicy::accept_probability(-1.0, 2.0) == 0.0);
  CHECK(RandomizedDoubleGreedyPolicy::accept_probability(-1.0, -2.0) == 1.0);

  const SetFunction edge = cut_function(Digraph(2, {Edge{0, 1, 1.0}}));
  const std::vector<int> order{0, 1};
  const double opt = brute_force_max(edge).value;
  double sum = 0.0, sumsq = 0.0;
  const int trials = 10000;
  for (int s = 0; s < trials; ++s) {
    const double v = run_double_greedy_rand(edge, order, s).final_value;
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / trials;
  const double stderr_mean = std::sqrt((sumsq / trials - mean * mean) / trials);
  CHECK(mean >= 0.5 * opt - 3.0 * stderr_mean);
}

TEST_CASE("transcripts are deterministic, sound, and exportable") {
  Rng rng(51);
  const SetFunction f = random_submodular_table(5, rng);
  const std::vector<int> order = rng.permutation(5);
  const GameTranscript a = run_double_greedy_rand(f, order, 99);
  const GameTranscript b = run_double_greedy_rand(f, order, 99);
  CHECK(transcript_text(a) == transcript_text(b));
  CHECK(replay_value(f, a) == a.final_value);

  const std::string text = transcript_text(a);
  CHECK(text.find("# model: q-type-1") == 0);
  CHECK(text.find("# order:") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3 + 5);

  const GameTranscript c = run_double_greedy_rand(f, order, 100);
  (void)c;  // different seed may differ; determinism only fixes equal seeds
}

TEST_CASE("doubling rule on directed cuts") {
  // isolated vertex: all four quantities zero, tie accepts
  const Digraph lonely(1, {});
  const std::vector<int> one{0};
  const GameTranscript ti = run_doubling_dicut(lonely, one);
  CHECK(ti.doubling[0].certain_accept == 0.0);
  CHECK(ti.doubling[0].potential_accept == 0.0);
  CHECK(ti.steps[0].decision == Decision::accept);

  const Digraph edge(2, {Edge{0, 1, 1.0}});
  const std::vector<int> order{0, 1};
  const GameTranscript te = run_doubling_dicut(edge, order);
  CHECK(te.doubling[0].certain_accept == 0.0);
  CHECK(te.doubling[0].certain_reject == 0.0);
  CHECK(te.doubling[0].potential_accept == 1.0);
  CHECK(te.doubling[0].potential_reject == 0.0);
  CHECK(te.steps[0].decision == Decision::accept);
}

TEST_CASE("doubling matches double greedy") {
  // empty graph and the 6-cycle first
  const Digraph none(3, {});
  const std::vector<int> order3{0, 1, 2};
  CHECK(compare_doubling_double_greedy(none, order3).agree);

  const Digraph cycle = directed_cycle(6);
  std::vector<int> order6{0, 1, 2, 3, 4, 5};
  const AgreementReport r6 = compare_doubling_double_greedy(cycle, order6);
  CHECK(r6.agree);
  CHECK(r6.greedy_final == r6.doubling_final);

  Rng rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + rng.next_int(9);
    const Digraph g = random_digraph(n, 0.4, rng);
    const AgreementReport report = compare_doubling_double_greedy(g, rng.permutation(n));
    REQUIRE(report.agree);
  }
}

TEST_CASE("random-cut baseline runs") {
  const Digraph cycle = directed_cycle(6);
  const std::vector<int> order{0, 1, 2, 3, 4, 5};
  const GameTranscript t = run_random_cut(cycle, order, 7);
  CHECK(t.final_value == cycle.cut_value(t.final_accepted));
  CHECK(transcript_text(t) == transcript_text(run_random_cut(cycle, order, 7)));
}

TEST_CASE("priority templates") {
  // fixed template with a constant priority presents items ascending
  const SetFunction f = cut_function(directed_cycle(6));
  DoubleGreedyPolicy greedy;
  TableInstance instance(f);
  const GameTranscript fixed = run_fixed_priority(instance, greedy, QueryModel::q2);
  CHECK(fixed.order == std::vector<int>{0, 1, 2, 3, 4, 5});

  // a fixed priority that prefers later items reverses the order on a
  // function whose singleton gains distinguish every item
  class Backwards : public DoubleGreedyPolicy {
   public:
    double fixed_priority(double gain_empty, double) const override { return -gain_empty; }
  } backwards;
  std::vector<double> weights(16, 0.0);
  for (std::uint32_t s = 1; s < 16; ++s) {
    weights[s] = 0.0;
    for (int i = 0; i < 4; ++i)
      if (Subset(s).contains(i)) weights[s] += i + 1.0;
  }
  const SetFunction modular(GroundSet(4), weights);
  TableInstance mod_instance(modular);
  const GameTranscript rev = run_fixed_priority(mod_instance, backwards, QueryModel::q1);
  CHECK(rev.order == std::vector<int>{3, 2, 1, 0});

  // n = 1: the single item is presented and an accepting policy takes it
  const SetFunction solo(GroundSet(1), {0.0, 2.5});
  AcceptAllPolicy take;
  TableInstance solo_instance(solo);
  const GameTranscript ts = run_adaptive_priority(solo_instance, take, QueryModel::q2);
  CHECK(ts.final_value == 2.5);

  // adaptive priorities see a vector that grows with the rounds under q2
  class VectorLength : public AcceptAllPolicy {
   public:
    double adaptive_priority(const History&, const QueryVector& gains) const override {
      REQUIRE(gains.descriptors.size() == gains.values.size());
      lengths.push_back(gains.size());
      return 0.0;
    }
    mutable std::vector<std::size_t> lengths;
  } watcher;
  TableInstance watch_instance(f);
  run_adaptive_priority(watch_instance, watcher, QueryModel::q2);
  CHECK(watcher.lengths.front() == 2);   // round 1: one prefix pair
  CHECK(watcher.lengths.back() == 12);   // round 6: six prefix pairs
}
