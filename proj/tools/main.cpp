// Command-line front end: build and solve the adversarial LPs, verify
// certificates, play games against policies, and run the directed-cut
// algorithms. All numeric output is fixed to 4 decimals so runs diff cleanly.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "myopic/myopic.hpp"

namespace {

using namespace myopic;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;

int log_level() {
  const char* env = std::getenv("MYOPIC_LOG");
  return env ? std::atoi(env) : 0;
}

SimplexOptions solver_options() {
  SimplexOptions opts;
  if (log_level() >= 2) opts.log_every = 5000;
  return opts;
}

Variant parse_variant(const std::string& name) {
  auto v = variant_from_string(name);
  if (!v) throw CLI::ValidationError("--variant", "unknown variant: " + name);
  return *v;
}

QueryModel parse_qtype(int q) {
  if (q < 1 || q > 3) throw CLI::ValidationError("--qtype", "q-type must be 1, 2 or 3");
  return static_cast<QueryModel>(q);
}

GameTemplate parse_template(const std::string& name) {
  if (name == "online") return GameTemplate::online;
  if (name == "fixed") return GameTemplate::fixed;
  if (name == "adaptive") return GameTemplate::adaptive;
  throw CLI::ValidationError("--template", "unknown template: " + name);
}

std::unique_ptr<Policy> make_policy(const std::string& name, std::uint64_t seed) {
  if (name == "double-greedy") return std::make_unique<DoubleGreedyPolicy>();
  if (name == "random-greedy") return std::make_unique<RandomizedDoubleGreedyPolicy>(seed);
  if (name == "accept-all") return std::make_unique<AcceptAllPolicy>();
  if (name == "reject-all") return std::make_unique<RejectAllPolicy>();
  if (name.rfind("threshold:", 0) == 0)
    return std::make_unique<ThresholdPolicy>(std::stod(name.substr(10)));
  if (name.rfind("seeded:", 0) == 0)
    return std::make_unique<SeededPolicy>(std::stoull(name.substr(7)));
  throw CLI::ValidationError("--policy", "unknown policy: " + name);
}

Certificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open certificate file: " + path);
  return read_certificate(in);
}

Digraph load_digraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return read_edge_list(in);
}

std::vector<int> parse_order(const std::string& text, int n) {
  std::vector<int> order;
  std::string token;
  std::istringstream ss(text);
  while (std::getline(ss, token, ',')) {
    std::istringstream ts(token);
    int v;
    while (ts >> v) order.push_back(v - 1);
  }
  std::vector<bool> seen(n, false);
  if (static_cast<int>(order.size()) != n)
    throw std::runtime_error("--order must list every vertex exactly once");
  for (int v : order) {
    if (v < 0 || v >= n || seen[v]) throw std::runtime_error("--order is not a permutation");
    seen[v] = true;
  }
  return order;
}

void maybe_write_transcript(const std::string& path, const GameTranscript& t) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write transcript file: " + path);
  write_transcript(t, out);
}

// ---- lp ---------------------------------------------------------------------

struct LpArgs {
  std::string variant = "fixed-q2";
  int n = 8;
  int k = 4;
  std::string model_path;
  std::string cert_path;
};

int run_lp_build(const LpArgs& args) {
  const LPConfig cfg = LPConfig::standard(parse_variant(args.variant), args.n, args.k);
  const LPModel model = build_lp(cfg);
  if (!args.model_path.empty()) {
    std::ofstream out(args.model_path);
    if (!out) throw std::runtime_error("cannot write model file: " + args.model_path);
    export_lp_text(model, out);
  }
  std::printf("vars=%d rows=%zu submodular=%zu equalities=%zu trap=%zu\n", model.num_vars,
              model.rows.size(), model.count(RowTag::submodular),
              model.count(RowTag::singleton_eq) + model.count(RowTag::prefix_eq) +
                  model.count(RowTag::subset_eq) + model.count(RowTag::allpairs_eq),
              model.count(RowTag::trap));
  return kExitOk;
}

int run_lp_solve(const LpArgs& args) {
  const LPConfig cfg = LPConfig::standard(parse_variant(args.variant), args.n, args.k);
  const LPModel model = build_lp(cfg);
  if (!args.model_path.empty()) {
    std::ofstream out(args.model_path);
    if (!out) throw std::runtime_error("cannot write model file: " + args.model_path);
    export_lp_text(model, out);
  }
  const LPSolution solution = solve_lp(model, solver_options());
  if (solution.status != SolveStatus::optimal) {
    std::fprintf(stderr, "lp solve failed: %s\n", to_string(solution.status));
    return kExitVerification;
  }
  if (log_level() >= 1)
    std::fprintf(stderr, "lp: iterations=%ld residual=%.3g\n", solution.iterations,
                 solution.max_residual);
  const CertificateBuild build = solution_to_function(solution, cfg);
  if (!args.cert_path.empty()) {
    std::ofstream out(args.cert_path);
    if (!out) throw std::runtime_error("cannot write certificate file: " + args.cert_path);
    write_certificate(build.certificate, out);
  }
  const double c = build.conditions.target_value;
  std::printf("c=%.4f bound=%.4f\n", c, 1.0 / c);
  return kExitOk;
}

// ---- verify -----------------------------------------------------------------

int run_verify(const std::string& cert_path, const std::string& variant_override) {
  Certificate cert = load_certificate(cert_path);
  if (!variant_override.empty()) cert.variant = parse_variant(variant_override);
  // The table file carries 7 significant digits, so each of the four values in
  // a submodularity row may sit half an ulp of that grid away from the solved
  // value; 5e-6 covers the worst stack-up at the magnitudes involved. Values
  // tied by the condition set quantize identically, so those checks keep the
  // solver tolerance.
  const SubmodularityReport submod = check_submodular_full(cert.fn, 5e-6);
  const ConditionReport conditions = verify_conditions(cert, 1e-6);
  const bool normalized = cert.fn.is_normalized_nonnegative(1e-6);
  if (!submod.ok) {
    const auto& v = *submod.first_violation;
    std::printf("FAIL submodularity: f({%s}),f({%s}) slack=%.3g\n",
                cert.fn.ground().describe(v.s).c_str(), cert.fn.ground().describe(v.t).c_str(),
                v.slack);
    return kExitVerification;
  }
  if (!normalized) {
    std::printf("FAIL normalization: f must vanish on the empty set and be nonnegative\n");
    return kExitVerification;
  }
  if (!conditions.ok) {
    for (const auto& check : conditions.checks)
      if (!check.ok) {
        std::printf("FAIL %s: %s\n", check.name.c_str(), check.witness.c_str());
        return kExitVerification;
      }
  }
  const double c = conditions.target_value;
  std::printf("ok variant=%s c=%.4f bound=%.4f submodularity=pass conditions=pass\n",
              to_string(cert.variant), c, 1.0 / c);
  return kExitOk;
}

// ---- game -------------------------------------------------------------------

struct GameArgs {
  std::string cert_path;
  std::string policy = "double-greedy";
  std::string game_template;
  int qtype = 0;
  std::uint64_t seed = 1;
  int zoo_size = 200;
  int jobs = 1;
  std::string transcript_path;
};

GameTemplate default_template(Variant v) {
  return v == Variant::adaptive_q2 ? GameTemplate::adaptive : GameTemplate::fixed;
}

QueryModel default_qtype(Variant v) {
  return v == Variant::fixed_q3 ? QueryModel::q3 : QueryModel::q2;
}

int run_game(const GameArgs& args) {
  const Certificate cert = load_certificate(args.cert_path);
  const GameTemplate tmpl = args.game_template.empty() ? default_template(cert.variant)
                                                       : parse_template(args.game_template);
  const QueryModel model =
      args.qtype == 0 ? default_qtype(cert.variant) : parse_qtype(args.qtype);

  if (args.policy == "zoo") {
    auto zoo = make_policy_zoo(args.zoo_size, args.seed);
    const double cap = 1.0 / cert.fn.value(cert.optimum) + 1e-6;
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    double worst = 0.0;
    long long checks = 0;
    int forfeits = 0;
    auto worker = [&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= zoo.size()) return;
        const GameReport report = adversary_play(cert, *zoo[i], tmpl, model);
        std::lock_guard<std::mutex> lock(mu);
        worst = std::max(worst, report.ratio);
        checks += report.consistency_checks;
        forfeits += report.forfeited ? 1 : 0;
      }
    };
    std::vector<std::thread> threads;
    for (int t = 1; t < args.jobs; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
    std::printf("zoo=%zu worst_ratio=%.4f cap=%.4f consistency_checks=%lld forfeits=%d\n",
                zoo.size(), worst, cap, checks, forfeits);
    return worst <= cap ? kExitOk : kExitVerification;
  }

  auto policy = make_policy(args.policy, args.seed);
  const GameReport report = adversary_play(cert, *policy, tmpl, model);
  maybe_write_transcript(args.transcript_path, report.transcript);
  if (log_level() >= 1) write_transcript(report.transcript, std::cerr);
  std::printf("policy=%s template=%s qtype=%d alg=%.4f opt=%.4f ratio=%.4f forfeit=%s\n",
              policy->name().c_str(), to_string(tmpl), static_cast<int>(model), report.alg_value,
              report.opt_value, report.ratio, report.forfeited ? "yes" : "no");
  return kExitOk;
}

// ---- dicut ------------------------------------------------------------------

struct DicutArgs {
  std::string graph_path;
  std::string algorithm = "double-greedy";
  std::string order_text;
  std::uint64_t seed = 1;
  std::string transcript_path;
};

int run_dicut(const DicutArgs& args) {
  const Digraph g = load_digraph(args.graph_path);
  std::vector<int> order;
  if (!args.order_text.empty()) {
    order = parse_order(args.order_text, g.n());
  } else {
    Rng rng(args.seed);
    order = rng.permutation(g.n());
  }

  GameTranscript transcript;
  if (args.algorithm == "double-greedy") {
    if (g.n() > kMaxGroundSetSize)
      throw std::runtime_error("double-greedy on the dense table needs n <= 24");
    const SetFunction f = cut_function(g);
    transcript = run_double_greedy_det(f, order);
  } else if (args.algorithm == "doubling") {
    transcript = run_doubling_dicut(g, order);
  } else if (args.algorithm == "random-cut") {
    transcript = run_random_cut(g, order, args.seed);
  } else {
    throw CLI::ValidationError("--algorithm", "unknown algorithm: " + args.algorithm);
  }
  maybe_write_transcript(args.transcript_path, transcript);
  if (log_level() >= 1) write_transcript(transcript, std::cerr);

  const double cut = g.cut_value(transcript.final_accepted);
  if (g.n() <= 20) {
    const MaxResult best = brute_force_max(cut_function(g));
    const double ratio = best.value > 0 ? cut / best.value : 1.0;
    std::printf("algorithm=%s cut=%.4f opt=%.4f ratio=%.4f\n", args.algorithm.c_str(), cut,
                best.value, ratio);
  } else {
    std::printf("algorithm=%s cut=%.4f opt=? (exhaustive maximum limited to n<=20)\n",
                args.algorithm.c_str(), cut);
  }
  return kExitOk;
}

// ---- equiv ------------------------------------------------------------------

struct EquivArgs {
  std::string graph_path;
  int random_count = 0;
  std::uint64_t seed = 1;
};

int run_equiv(const EquivArgs& args) {
  int total = 0, agreeing = 0;
  std::vector<std::string> details;
  auto check = [&](const Digraph& g, const std::vector<int>& order) {
    ++total;
    const AgreementReport report = compare_doubling_double_greedy(g, order);
    if (report.agree) {
      ++agreeing;
    } else if (!report.divergences.empty()) {
      const auto& d = report.divergences.front();
      std::ostringstream os;
      os << "divergence at step " << d.step << " item " << d.item + 1 << ": greedy "
         << to_string(d.greedy) << " vs doubling " << to_string(d.doubling);
      details.push_back(os.str());
    }
  };

  if (!args.graph_path.empty()) {
    const Digraph g = load_digraph(args.graph_path);
    Rng rng(args.seed);
    check(g, rng.permutation(g.n()));
  } else {
    Rng rng(args.seed);
    const int count = args.random_count > 0 ? args.random_count : 100;
    for (int i = 0; i < count; ++i) {
      const int n = 2 + rng.next_int(9);  // up to 10 vertices
      const Digraph g = random_digraph(n, 0.4, rng);
      check(g, rng.permutation(n));
    }
  }
  std::printf("agreement=%d/%d\n", agreeing, total);
  for (const std::string& d : details) std::printf("%s\n", d.c_str());
  return agreeing == total ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"double-sided myopic algorithms: LP certificates, adversary games, directed cuts"};
  app.require_subcommand(1);

  LpArgs lp_args;
  CLI::App* lp = app.add_subcommand("lp", "build or solve the adversarial LPs");
  lp->require_subcommand(1);
  for (CLI::App* sub : {lp->add_subcommand("build", "emit the LP without solving"),
                        lp->add_subcommand("solve", "solve and extract a certificate")}) {
    sub->add_option("--variant", lp_args.variant, "fixed-q2 | fixed-q3 | adaptive-q2");
    sub->add_option("--n", lp_args.n, "ground-set size");
    sub->add_option("--k", lp_args.k, "trap depth");
    sub->add_option("--model", lp_args.model_path, "write LP text here");
    if (sub->get_name() == "solve")
      sub->add_option("--cert", lp_args.cert_path, "write the certificate CSV here");
  }

  std::string verify_cert;
  std::string verify_variant;
  CLI::App* verify = app.add_subcommand("verify", "re-check a certificate from disk");
  verify->add_option("--cert", verify_cert, "certificate CSV")->required();
  verify->add_option("--variant", verify_variant,
                     "check this condition family instead of the stamped one");

  GameArgs game_args;
  CLI::App* game = app.add_subcommand("game", "play the paired adversary against a policy");
  game->add_option("--cert", game_args.cert_path, "certificate CSV")->required();
  game->add_option("--policy", game_args.policy,
                   "double-greedy | random-greedy | accept-all | reject-all | threshold:<t> | "
                   "seeded:<n> | zoo");
  game->add_option("--template", game_args.game_template, "online | fixed | adaptive");
  game->add_option("--qtype", game_args.qtype, "1 | 2 | 3");
  game->add_option("--seed", game_args.seed, "seed for randomized policies");
  game->add_option("--zoo-size", game_args.zoo_size, "number of seeded zoo policies");
  game->add_option("--jobs", game_args.jobs, "parallel games for --policy zoo");
  game->add_option("--transcript", game_args.transcript_path, "write the game transcript here");

  DicutArgs dicut_args;
  CLI::App* dicut = app.add_subcommand("dicut", "run a directed-cut algorithm on a graph");
  dicut->add_option("--graph", dicut_args.graph_path, "edge-list file")->required();
  dicut->add_option("--algorithm", dicut_args.algorithm, "double-greedy | doubling | random-cut");
  dicut->add_option("--order", dicut_args.order_text, "presentation order, 1-based");
  dicut->add_option("--seed", dicut_args.seed, "seed for order shuffling / random-cut");
  dicut->add_option("--transcript", dicut_args.transcript_path, "write the transcript here");

  EquivArgs equiv_args;
  CLI::App* equiv = app.add_subcommand("equiv", "compare doubling against the double greedy");
  equiv->add_option("--graph", equiv_args.graph_path, "edge-list file");
  equiv->add_option("--random", equiv_args.random_count, "number of random digraphs");
  equiv->add_option("--seed", equiv_args.seed, "seed for graphs and orders");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (lp->parsed())
      return lp->get_subcommand("solve")->parsed() ? run_lp_solve(lp_args) : run_lp_build(lp_args);
    if (verify->parsed()) return run_verify(verify_cert, verify_variant);
    if (game->parsed()) return run_game(game_args);
    if (dicut->parsed()) return run_dicut(dicut_args);
    if (equiv->parsed()) return run_equiv(equiv_args);
  } catch (const CertificateError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitVerification;
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitOk;
}
