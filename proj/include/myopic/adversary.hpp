#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "myopic/certificate.hpp"
#include "myopic/conditions.hpp"
#include "myopic/digraph.hpp"
#include "myopic/instance.hpp"
#include "myopic/policy.hpp"
#include "myopic/runner.hpp"
#include "myopic/set_function.hpp"

namespace myopic {

// Instance whose current item may be a token resolved only after the
// decision. While the token is live, every oracle call that involves it is
// evaluated under both candidate identities and the answers must agree;
// a disagreement means the certificate does not actually make the pair
// indistinguishable, and the game aborts loudly instead of leaking.
class LazyBindingInstance : public Instance {
 public:
  explicit LazyBindingInstance(const SetFunction& fn, double consistency_tol = 1e-9)
      : fn_(&fn), tol_(consistency_tol) {}

  int n() const override { return fn_->n(); }
  const SetFunction& truth() const override { return *fn_; }
  long long oracle_calls() const override { return calls_; }
  long long consistency_checks() const { return consistency_checks_; }

  double oracle_value(Subset ids) override {
    ++calls_;
    return fn_->value(ids);
  }
  double oracle_complement_value(Subset ids) override {
    ++calls_;
    return fn_->complement_value(ids);
  }
  double oracle_value_with_current(Subset ids) override {
    ++calls_;
    return with_current(ids, OracleSide::value);
  }
  double oracle_complement_value_with_current(Subset ids) override {
    ++calls_;
    return with_current(ids, OracleSide::complement);
  }

  std::vector<int> remaining_items(const GameState& state) const override {
    std::vector<int> out;
    for (int i = 0; i < n(); ++i)
      if (!state.decided().contains(i)) out.push_back(i);
    return out;
  }

  int resolve_decision(Decision d) override {
    if (!token_live_) return current_;
    token_live_ = false;
    current_ = d == Decision::accept ? candidate_accept_ : candidate_reject_;
    return current_;
  }

 protected:
  void present_token(int accept_candidate, int reject_candidate) {
    token_live_ = true;
    candidate_accept_ = accept_candidate;
    candidate_reject_ = reject_candidate;
    current_ = -1;
  }
  void present_concrete(int item) {
    token_live_ = false;
    current_ = item;
  }
  bool token_live() const { return token_live_; }

 private:
  double with_current(Subset ids, OracleSide side) {
    auto eval = [&](int item) {
      return side == OracleSide::value ? fn_->value(ids.with(item))
                                       : fn_->complement_value(ids.with(item));
    };
    if (!token_live_) return eval(current_);
    ++consistency_checks_;
    const double va = eval(candidate_accept_);
    const double vr = eval(candidate_reject_);
    if (std::abs(va - vr) > tol_)
      throw CertificateError("indistinguishability broken: candidates " +
                             fn_->ground().label(candidate_accept_) + " and " +
                             fn_->ground().label(candidate_reject_) + " answer " +
                             format_value(va) + " vs " + format_value(vr));
    return va;
  }

  const SetFunction* fn_;
  double tol_;
  long long calls_ = 0;
  long long consistency_checks_ = 0;
  bool token_live_ = false;
  int candidate_accept_ = -1;
  int candidate_reject_ = -1;
  int current_ = -1;
};

// The paired adversary: in round j <= k it offers the j-th pair as a token
// (accept binds the accept-side item, reject the reject-side item); the item
// not chosen is postponed. Rounds after k present the remaining items in
// ascending order.
class PairedAdversary : public LazyBindingInstance {
 public:
  explicit PairedAdversary(const Certificate& cert, double consistency_tol = 1e-9)
      : LazyBindingInstance(cert.fn, consistency_tol), cert_(&cert) {
    cert.validate_shape();
  }

  const std::vector<int>& forced_prefix() const { return forced_prefix_; }

  void next_round_online(const GameState& state) override { begin_round(state, {}); }

  void next_round_among(const GameState& state, const std::vector<int>& tied) override {
    if (state.step < cert_->k &&
        tied.size() != static_cast<std::size_t>(n() - state.step)) {
      throw CertificateError(
          "adversary lost control: only " + std::to_string(tied.size()) + " of " +
          std::to_string(n() - state.step) + " remaining items share the top priority");
    }
    begin_round(state, tied);
  }

  int resolve_decision(Decision d) override {
    const bool was_token = token_live();
    const int item = LazyBindingInstance::resolve_decision(d);
    if (was_token) forced_prefix_.push_back(item);
    return item;
  }

 private:
  void begin_round(const GameState& state, const std::vector<int>& tied) {
    if (state.step < cert_->k) {
      present_token(cert_->accept_items[state.step], cert_->reject_items[state.step]);
      return;
    }
    // Past the trap: lowest index, restricted to the top-priority candidates
    // when a priority template supplies them.
    if (!tied.empty()) {
      present_concrete(*std::min_element(tied.begin(), tied.end()));
      return;
    }
    for (int i = 0; i < n(); ++i)
      if (!state.decided().contains(i)) {
        present_concrete(i);
        break;
      }
  }

  const Certificate* cert_;
  std::vector<int> forced_prefix_;
};

struct GameReport {
  double alg_value = 0.0;
  double opt_value = 0.0;
  double ratio = 0.0;
  bool forfeited = false;
  std::vector<int> forced_prefix;
  long long consistency_checks = 0;
  GameTranscript transcript;
};

// True when a certificate of this variant pins down every query the given
// template/model combination can make during the trap rounds.
inline bool certificate_supports(Variant variant, GameTemplate tmpl, QueryModel model) {
  if (tmpl == GameTemplate::adaptive && variant != Variant::adaptive_q2) return false;
  if (model == QueryModel::q3 && variant != Variant::fixed_q3) return false;
  return true;
}

// Plays the paired adversary against a policy. The certificate is verified
// first and the game refuses to start on a broken one; a policy that violates
// the query model forfeits (ratio 0).
inline GameReport adversary_play(const Certificate& cert, Policy& policy, GameTemplate tmpl,
                                 QueryModel model, double condition_tol = 1e-6) {
  if (!certificate_supports(cert.variant, tmpl, model))
    throw std::domain_error(std::string("certificate variant ") + to_string(cert.variant) +
                            " does not cover template " + to_string(tmpl) + " under " +
                            to_string(model));
  const ConditionReport conditions = verify_conditions(cert, condition_tol);
  if (!conditions.ok) {
    std::string why = "certificate failed verification:";
    for (const auto& c : conditions.checks)
      if (!c.ok) why += " [" + c.name + ": " + c.witness + "]";
    throw CertificateError(why);
  }

  PairedAdversary adversary(cert);
  GameReport report;
  report.opt_value = brute_force_max(cert.fn).value;
  try {
    report.transcript = run_game(adversary, policy, tmpl, model);
    report.alg_value = report.transcript.final_value;
  } catch (const ModelViolationError&) {
    report.forfeited = true;
    report.alg_value = 0.0;
  }
  report.forced_prefix = adversary.forced_prefix();
  report.consistency_checks = adversary.consistency_checks();
  report.ratio = report.opt_value > 0.0 ? report.alg_value / report.opt_value : 0.0;
  return report;
}

// The fixed-order trap on the unit 6-cycle. Round 1 presents v1; round 2
// offers {v3, v4} as a token bound against the algorithm: whichever way the
// two decisions fall, the surviving solutions cut at most 2 of the 3
// optimal edges.
class SixCycleAdversary : public LazyBindingInstance {
 public:
  explicit SixCycleAdversary(const SetFunction& cut) : LazyBindingInstance(cut) {}

  void next_round_online(const GameState& state) override { begin_round(state, {}); }
  void next_round_among(const GameState& state, const std::vector<int>& tied) override {
    if (state.step < 2 && tied.size() != static_cast<std::size_t>(n() - state.step))
      throw CertificateError("6-cycle adversary lost control of the ordering");
    begin_round(state, tied);
  }

 private:
  void begin_round(const GameState& state, const std::vector<int>& tied) {
    if (state.step == 0) {
      present_concrete(0);  // v1
    } else if (state.step == 1) {
      const bool accepted_first = state.accepted.contains(0);
      if (accepted_first)
        present_token(/*accept=*/3, /*reject=*/2);  // accept -> v4, reject -> v3
      else
        present_token(/*accept=*/2, /*reject=*/3);  // accept -> v3, reject -> v4
    } else if (!tied.empty()) {
      present_concrete(*std::min_element(tied.begin(), tied.end()));
    } else {
      for (int i = 0; i < n(); ++i)
        if (!state.decided().contains(i)) {
          present_concrete(i);
          break;
        }
    }
  }
};

// Fixed-order game on the unit 6-cycle (OPT = 3). Adaptive ordering is not
// covered by this construction; templates online and fixed are.
inline GameReport six_cycle_game(Policy& policy, QueryModel model,
                                 GameTemplate tmpl = GameTemplate::fixed) {
  if (tmpl == GameTemplate::adaptive)
    throw std::domain_error("the 6-cycle trap controls fixed orderings only");
  static const SetFunction cut = cut_function(directed_cycle(6));
  SixCycleAdversary adversary(cut);
  GameReport report;
  report.opt_value = brute_force_max(cut).value;
  try {
    report.transcript = run_game(adversary, policy, tmpl, model);
    report.alg_value = report.transcript.final_value;
  } catch (const ModelViolationError&) {
    report.forfeited = true;
  }
  report.consistency_checks = adversary.consistency_checks();
  report.ratio = report.opt_value > 0.0 ? report.alg_value / report.opt_value : 0.0;
  return report;
}

}  // namespace myopic
