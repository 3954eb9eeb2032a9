// hers: strictly proper scoring of density-matrix reports, verification-game
// simulation, Bayesian state estimation, and the reward-offset equality check.
//
// Exit codes: 0 success, 1 numerical/runtime failure, 2 usage error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hers/estimation.hpp"
#include "hers/game.hpp"
#include "hers/perturbation.hpp"
#include "hers/scoring.hpp"
#include "hers/serialize.hpp"
#include "hers/version.hpp"

namespace fs = std::filesystem;
using hers::Json;

namespace {

// Binds "--flag" option values to config-file keys so a JSON config can fill
// any option not given on the command line. Unknown config keys are rejected
// by name.
class ConfigBinder {
 public:
  explicit ConfigBinder(CLI::App* command) : command_(command) {}

  template <typename T>
  void bind(const std::string& key, T& target) {
    setters_[key] = [&target](const Json& value) { target = value.get<T>(); };
  }

  void apply_file(const std::string& path) const {
    std::ifstream in(path);
    if (!in) {
      throw std::invalid_argument("cannot open config file: " + path);
    }
    Json config;
    in >> config;
    if (!config.is_object()) {
      throw std::invalid_argument("config file must hold a JSON object");
    }
    for (const auto& item : config.items()) {
      const auto it = setters_.find(item.key());
      if (it == setters_.end()) {
        throw std::invalid_argument("unknown key \"" + item.key() +
                                    "\" in config file " + path);
      }
      const CLI::Option* opt = command_->get_option("--" + item.key());
      if (opt->count() == 0) {
        it->second(item.value());  // flags override the file
      }
    }
  }

 private:
  CLI::App* command_;
  std::map<std::string, std::function<void(const Json&)>> setters_;
};

hers::DensityMatrix load_state(const std::string& spec, int dim) {
  if (spec == "zero") return hers::DensityMatrix::basis_state(2, 0);
  if (spec == "plus") return hers::DensityMatrix::plus_state();
  if (spec == "maximally-mixed") return hers::DensityMatrix::maximally_mixed(dim);
  if (spec == "bell") return hers::DensityMatrix::bell_state();
  std::ifstream in(spec);
  if (!in) {
    throw std::invalid_argument(
        "state \"" + spec +
        "\" is neither a preset (zero, plus, maximally-mixed, bell) nor a "
        "readable JSON file");
  }
  Json j;
  in >> j;
  return hers::density_from_json(j);
}

hers::PriorSpec load_prior(const std::string& spec, int dim) {
  if (spec == "hs" || spec == "hilbert-schmidt") {
    return hers::PriorSpec::hilbert_schmidt(dim);
  }
  if (spec == "bures" || spec == "bures-like") {
    return hers::PriorSpec::bures_like(dim);
  }
  std::ifstream in(spec);
  if (!in) {
    throw std::invalid_argument(
        "prior \"" + spec +
        "\" is neither a preset (hs, bures) nor a readable JSON file");
  }
  Json j;
  in >> j;
  return hers::prior_from_json(j);
}

hers::ScoringRule parse_rule(const std::string& kind, double c, double d) {
  Json j{{"kind", kind}, {"c", c}, {"d", d}};
  return hers::rule_from_json(j);
}

class RunWriter {
 public:
  RunWriter(std::string command, fs::path out_dir, std::uint64_t seed)
      : command_(std::move(command)),
        out_dir_(std::move(out_dir)),
        seed_(seed),
        start_(std::chrono::steady_clock::now()) {
    fs::create_directories(out_dir_);
  }

  fs::path path(const std::string& name) const { return out_dir_ / name; }

  void write_json(const std::string& name, const Json& payload) {
    std::ofstream out(path(name), std::ios::binary);
    out << payload.dump(2) << '\n';
    outputs_.push_back(name);
  }

  void write_text(const std::string& name, const std::string& payload) {
    std::ofstream out(path(name), std::ios::binary);
    out << payload;
    outputs_.push_back(name);
  }

  // Config echo plus provenance; written last so wall time covers the run.
  void finish(const Json& config_echo) {
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    const double ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(elapsed)
            .count();
    Json manifest{{"tool", "hers"},
                  {"version", hers::kVersion},
                  {"command", command_},
                  {"seed", seed_},
                  {"config", config_echo},
                  {"wall_time_ms", ms},
                  {"outputs", outputs_}};
    std::ofstream out(path("manifest.json"), std::ios::binary);
    out << manifest.dump(2) << '\n';
  }

 private:
  std::string command_;
  fs::path out_dir_;
  std::uint64_t seed_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> outputs_;
};

struct GameArgs {
  std::string truth = "maximally-mixed";
  std::string report = "maximally-mixed";
  int dim = 2;
  std::int64_t rounds = 100000;
  std::uint64_t seed = 0;
  double c = 0.0;
  double d = 1.0;
  std::string out = "hers-out/simulate-game";
  std::string config_file;
};

int run_simulate_game(const GameArgs& args) {
  hers::GameConfig config{load_state(args.truth, args.dim),
                          load_state(args.report, args.dim),
                          hers::hers_rule(args.c, args.d), args.rounds, args.seed};
  const hers::GameTranscript transcript = hers::simulate_game(config);

  RunWriter writer("simulate-game", args.out, args.seed);
  {
    std::ofstream csv(writer.path("transcript.csv"), std::ios::binary);
    hers::write_transcript_csv(csv, transcript);
  }
  {
    // Plot-ready payoff histogram: one row per outcome level.
    std::vector<std::int64_t> counts(config.report.dim(), 0);
    for (const int outcome : transcript.outcomes) ++counts[outcome];
    const auto eig = hers::eigendecompose(config.report);
    std::ofstream csv(writer.path("histogram.csv"), std::ios::binary);
    csv << "outcome,payoff,count\n";
    for (int i = 0; i < config.report.dim(); ++i) {
      csv << i << ','
          << hers::format_double(hers::hers_payoff(config.rule, eig.eigenvalues(i)))
          << ',' << counts[i] << '\n';
    }
  }
  Json summary = hers::transcript_summary_to_json(transcript);
  summary["truth"] = args.truth;
  summary["report"] = args.report;
  summary["rule"] = hers::rule_to_json(config.rule);
  writer.write_json("summary.json", summary);
  writer.finish(Json{{"truth", args.truth},
                     {"report", args.report},
                     {"dim", args.dim},
                     {"rounds", args.rounds},
                     {"seed", args.seed},
                     {"c", args.c},
                     {"d", args.d},
                     {"out", args.out}});

  std::cout << "simulate-game: " << args.rounds << " rounds, mean payoff "
            << hers::format_double(transcript.mean_payoff) << ", analytic "
            << hers::format_double(transcript.analytic_expected) << "\n";
  return 0;
}

struct ScoreArgs {
  std::string truth = "maximally-mixed";
  std::string report = "maximally-mixed";
  int dim = 2;
  std::string rule = "hers";
  double c = 0.0;
  double d = 1.0;
  std::string out = "hers-out/score";
  std::string config_file;
};

int run_score(const ScoreArgs& args) {
  const hers::DensityMatrix truth = load_state(args.truth, args.dim);
  const hers::DensityMatrix report = load_state(args.report, args.dim);
  const hers::ScoringRule rule = parse_rule(args.rule, args.c, args.d);

  const Json result{
      {"rule", hers::rule_to_json(rule)},
      {"expected_reward",
       hers::ext_real_to_json(hers::expected_reward(rule, truth, report))},
      {"propriety_gap",
       hers::ext_real_to_json(hers::propriety_gap(rule, truth, report))},
      {"relative_entropy",
       hers::ext_real_to_json(hers::relative_entropy(truth, report))},
      {"entropy_truth", hers::von_neumann_entropy(truth)},
      {"entropy_report", hers::von_neumann_entropy(report)},
      {"fidelity", hers::fidelity(truth, report)},
      {"trace_distance", hers::trace_distance(truth, report)}};

  RunWriter writer("score", args.out, 0);
  writer.write_json("score.json", result);
  writer.finish(Json{{"truth", args.truth},
                     {"report", args.report},
                     {"dim", args.dim},
                     {"rule", args.rule},
                     {"c", args.c},
                     {"d", args.d},
                     {"out", args.out}});
  std::cout << result.dump(2) << "\n";
  return 0;
}

struct EstimateArgs {
  std::string prior = "hs";
  int dim = 2;
  int particles = 10000;
  std::uint64_t seed = 0;
  std::string record_file;
  std::string truth;  // simulate a record from this state when set
  int copies = 100;
  std::string scheme = "sic";
  bool with_mle = false;
  std::string out = "hers-out/estimate";
  std::string config_file;
};

int run_estimate(const EstimateArgs& args) {
  const hers::PriorSpec prior = load_prior(args.prior, args.dim);
  RunWriter writer("estimate", args.out, args.seed);

  hers::MeasurementRecord record;
  std::optional<hers::DensityMatrix> truth;
  if (!args.record_file.empty()) {
    std::ifstream in(args.record_file);
    if (!in) {
      throw std::invalid_argument("cannot open record file: " + args.record_file);
    }
    Json j;
    in >> j;
    record = hers::record_from_json(j);
  } else if (!args.truth.empty()) {
    truth = load_state(args.truth, prior.dim);
    hers::CounterRng rng(args.seed);
    if (args.scheme == "sic") {
      record = hers::simulate_record(*truth, hers::Povm::sic_qubit(), args.copies, rng);
    } else if (args.scheme == "pauli") {
      record = hers::simulate_record_random_pauli(*truth, args.copies, rng);
    } else {
      throw std::invalid_argument("scheme must be \"sic\" or \"pauli\"");
    }
    writer.write_json("record.json", hers::record_to_json(record));
  } else {
    throw std::invalid_argument("estimate needs --record or --truth");
  }

  hers::ParticleEnsemble ensemble =
      hers::sample_prior(prior, args.particles, args.seed + 1);
  hers::UpdateOptions opts;
  opts.seed = args.seed + 2;
  ensemble = hers::posterior_update(ensemble, record, opts);
  const hers::PosteriorSummary posterior = hers::summarize(ensemble);

  writer.write_json("posterior.json", hers::density_to_json(posterior.mean));
  Json summary{{"prior", hers::prior_to_json(prior)},
               {"particles", args.particles},
               {"record_length", record.size()},
               {"log_evidence", posterior.log_evidence},
               {"effective_sample_size", posterior.ess}};
  if (truth) {
    summary["trace_distance_to_truth"] =
        hers::trace_distance(posterior.mean, *truth);
    summary["relative_entropy_risk"] =
        hers::ext_real_to_json(hers::relative_entropy(*truth, posterior.mean));
  }
  if (args.with_mle) {
    const hers::MleResult mle = hers::mle_estimate(record, prior.dim);
    writer.write_json("mle.json", hers::density_to_json(mle.estimate));
    summary["mle_converged"] = mle.converged;
    summary["mle_iterations"] = mle.iterations;
    if (truth) {
      summary["mle_trace_distance_to_truth"] =
          hers::trace_distance(mle.estimate, *truth);
      summary["mle_relative_entropy_risk"] =
          hers::ext_real_to_json(hers::relative_entropy(*truth, mle.estimate));
    }
  }
  writer.write_json("summary.json", summary);
  writer.finish(Json{{"prior", args.prior},
                     {"dim", args.dim},
                     {"particles", args.particles},
                     {"seed", args.seed},
                     {"record", args.record_file},
                     {"truth", args.truth},
                     {"copies", args.copies},
                     {"scheme", args.scheme},
                     {"mle", args.with_mle},
                     {"out", args.out}});
  std::cout << "estimate: posterior mean written, ESS "
            << hers::format_double(posterior.ess) << " of " << args.particles
            << " particles\n";
  return 0;
}

struct RiskArgs {
  std::string prior = "hs";
  int dim = 2;
  int trials = 100;
  std::vector<int> copies = {0, 10, 100};
  std::string estimator = "both";
  std::string scheme = "sic";
  int particles = 10000;
  std::uint64_t seed = 0;
  std::string out = "hers-out/risk-study";
  std::string config_file;
};

int run_risk_study(const RiskArgs& args) {
  const hers::PriorSpec prior = load_prior(args.prior, args.dim);
  std::vector<hers::Estimator> estimators;
  if (args.estimator == "bayes" || args.estimator == "both") {
    estimators.push_back(hers::Estimator::BayesMean);
  }
  if (args.estimator == "mle" || args.estimator == "both") {
    estimators.push_back(hers::Estimator::Mle);
  }
  if (estimators.empty()) {
    throw std::invalid_argument("estimator must be \"bayes\", \"mle\" or \"both\"");
  }
  hers::MeasurementScheme scheme;
  if (args.scheme == "sic") {
    scheme = hers::MeasurementScheme::SicPovm;
  } else if (args.scheme == "pauli") {
    scheme = hers::MeasurementScheme::RandomPauli;
  } else {
    throw std::invalid_argument("scheme must be \"sic\" or \"pauli\"");
  }

  RunWriter writer("risk-study", args.out, args.seed);
  std::ofstream csv(writer.path("risk.csv"), std::ios::binary);
  hers::write_risk_csv_header(csv);
  Json summaries = Json::array();
  for (const hers::Estimator estimator : estimators) {
    for (const int n : args.copies) {
      hers::RiskStudyConfig config;
      config.prior = prior;
      config.trials = args.trials;
      config.copies = n;
      config.scheme = scheme;
      config.estimator = estimator;
      config.particle_count = args.particles;
      config.seed = args.seed;
      const hers::RiskTable table = hers::estimator_risk(config);
      hers::write_risk_csv_rows(csv, table);
      summaries.push_back(hers::risk_table_to_json(table));
      std::cout << "risk-study: " << hers::estimator_name(estimator) << " N=" << n
                << " median risk "
                << hers::format_double(table.summary.median) << "\n";
    }
  }
  csv.close();
  writer.write_json("summary.json", summaries);
  writer.finish(Json{{"prior", args.prior},
                     {"dim", args.dim},
                     {"trials", args.trials},
                     {"copies", args.copies},
                     {"estimator", args.estimator},
                     {"scheme", args.scheme},
                     {"particles", args.particles},
                     {"seed", args.seed},
                     {"out", args.out}});
  return 0;
}

struct CounterexampleArgs {
  int grid = 20;
  std::string out = "hers-out/counterexample";
  std::string config_file;
};

int run_counterexample(const CounterexampleArgs& args) {
  const hers::FidelityCounterexampleReport report =
      hers::fidelity_counterexample(args.grid);
  RunWriter writer("counterexample", args.out, 0);
  writer.write_json("counterexample.json",
                    hers::counterexample_report_to_json(report));
  writer.finish(Json{{"grid", args.grid}, {"out", args.out}});

  std::cout << "counterexample: mean state [[0.75, 0.25], [0.25, 0.25]]\n"
            << "  average fidelity prefers the top eigenprojector ("
            << hers::format_double(report.fidelity_of_fidelity_optimal)
            << " vs " << hers::format_double(report.fidelity_of_mean)
            << " for the mean)\n"
            << "  log-score reward prefers the mean ("
            << hers::format_double(report.reward_of_mean) << " vs "
            << hers::format_double(report.reward_of_fidelity_optimal)
            << " for the pure report)\n";
  return 0;
}

struct VerifyArgs {
  int dim = 3;
  int trials = 1000;
  std::uint64_t seed = 1;
  std::string out = "hers-out/verify-appendix";
  std::string config_file;
};

int run_verify_appendix(const VerifyArgs& args) {
  const hers::VerificationReport report =
      hers::verify_constant_equality(args.dim, args.trials, args.seed);
  RunWriter writer("verify-appendix", args.out, args.seed);
  writer.write_json("verification.json", hers::verification_report_to_json(report));
  writer.write_text("verification.txt", hers::verification_report_text(report));
  writer.finish(Json{{"dim", args.dim},
                     {"trials", args.trials},
                     {"seed", args.seed},
                     {"out", args.out}});
  std::cout << hers::verification_report_text(report);
  if (!report.passed) {
    std::cerr << "error: verification found violations; see "
              << writer.path("verification.json").string() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "hers: log-score verification games, Bayesian density-matrix estimation, "
      "and reward-offset checks"};
  app.set_version_flag("--version", hers::kVersion);
  app.require_subcommand(1);

  GameArgs game;
  CLI::App* game_cmd = app.add_subcommand(
      "simulate-game", "Monte Carlo rounds of the verification game");
  ConfigBinder game_binder(game_cmd);
  game_cmd->add_option("--truth", game.truth, "true state (preset or JSON file)");
  game_cmd->add_option("--report", game.report, "reported state (preset or JSON file)");
  game_cmd->add_option("--dim", game.dim, "dimension for maximally-mixed preset");
  game_cmd->add_option("--rounds", game.rounds, "number of rounds");
  game_cmd->add_option("--seed", game.seed, "RNG seed");
  game_cmd->add_option("--c", game.c, "reward offset C");
  game_cmd->add_option("--d", game.d, "reward scale D");
  game_cmd->add_option("--out", game.out, "output directory");
  game_cmd->add_option("--config", game.config_file, "JSON config (flags override)");
  game_binder.bind("truth", game.truth);
  game_binder.bind("report", game.report);
  game_binder.bind("dim", game.dim);
  game_binder.bind("rounds", game.rounds);
  game_binder.bind("seed", game.seed);
  game_binder.bind("c", game.c);
  game_binder.bind("d", game.d);
  game_binder.bind("out", game.out);

  ScoreArgs score;
  CLI::App* score_cmd =
      app.add_subcommand("score", "score one report against one truth");
  ConfigBinder score_binder(score_cmd);
  score_cmd->add_option("--truth", score.truth, "true state");
  score_cmd->add_option("--report", score.report, "reported state");
  score_cmd->add_option("--dim", score.dim, "dimension for maximally-mixed preset");
  score_cmd->add_option("--rule", score.rule, "hers or brier");
  score_cmd->add_option("--c", score.c, "reward offset C");
  score_cmd->add_option("--d", score.d, "reward scale D");
  score_cmd->add_option("--out", score.out, "output directory");
  score_cmd->add_option("--config", score.config_file, "JSON config (flags override)");
  score_binder.bind("truth", score.truth);
  score_binder.bind("report", score.report);
  score_binder.bind("dim", score.dim);
  score_binder.bind("rule", score.rule);
  score_binder.bind("c", score.c);
  score_binder.bind("d", score.d);
  score_binder.bind("out", score.out);

  EstimateArgs estimate;
  CLI::App* estimate_cmd = app.add_subcommand(
      "estimate", "posterior-mean estimate from a measurement record");
  ConfigBinder estimate_binder(estimate_cmd);
  estimate_cmd->add_option("--prior", estimate.prior,
                           "hs, bures, or a prior JSON file");
  estimate_cmd->add_option("--dim", estimate.dim, "prior dimension");
  estimate_cmd->add_option("--particles", estimate.particles, "particle count");
  estimate_cmd->add_option("--seed", estimate.seed, "RNG seed");
  estimate_cmd->add_option("--record", estimate.record_file, "record JSON file");
  estimate_cmd->add_option("--truth", estimate.truth,
                           "simulate the record from this state");
  estimate_cmd->add_option("--copies", estimate.copies,
                           "record length when simulating");
  estimate_cmd->add_option("--scheme", estimate.scheme,
                           "sic or pauli measurement per copy");
  estimate_cmd->add_flag("--mle", estimate.with_mle,
                         "also run the maximum-likelihood baseline");
  estimate_cmd->add_option("--out", estimate.out, "output directory");
  estimate_cmd->add_option("--config", estimate.config_file,
                           "JSON config (flags override)");
  estimate_binder.bind("prior", estimate.prior);
  estimate_binder.bind("dim", estimate.dim);
  estimate_binder.bind("particles", estimate.particles);
  estimate_binder.bind("seed", estimate.seed);
  estimate_binder.bind("record", estimate.record_file);
  estimate_binder.bind("truth", estimate.truth);
  estimate_binder.bind("copies", estimate.copies);
  estimate_binder.bind("scheme", estimate.scheme);
  estimate_binder.bind("mle", estimate.with_mle);
  estimate_binder.bind("out", estimate.out);

  RiskArgs risk;
  CLI::App* risk_cmd = app.add_subcommand(
      "risk-study", "estimator risk (relative entropy) vs copies");
  ConfigBinder risk_binder(risk_cmd);
  risk_cmd->add_option("--prior", risk.prior, "hs, bures, or a prior JSON file");
  risk_cmd->add_option("--dim", risk.dim, "prior dimension");
  risk_cmd->add_option("--trials", risk.trials, "trials per (estimator, N)");
  risk_cmd->add_option("--copies", risk.copies, "comma-separated list of N")
      ->delimiter(',');
  risk_cmd->add_option("--estimator", risk.estimator, "bayes, mle, or both");
  risk_cmd->add_option("--scheme", risk.scheme, "sic or pauli");
  risk_cmd->add_option("--particles", risk.particles, "particles for bayes");
  risk_cmd->add_option("--seed", risk.seed, "RNG seed");
  risk_cmd->add_option("--out", risk.out, "output directory");
  risk_cmd->add_option("--config", risk.config_file, "JSON config (flags override)");
  risk_binder.bind("prior", risk.prior);
  risk_binder.bind("dim", risk.dim);
  risk_binder.bind("trials", risk.trials);
  risk_binder.bind("copies", risk.copies);
  risk_binder.bind("estimator", risk.estimator);
  risk_binder.bind("scheme", risk.scheme);
  risk_binder.bind("particles", risk.particles);
  risk_binder.bind("seed", risk.seed);
  risk_binder.bind("out", risk.out);

  CounterexampleArgs counterexample;
  CLI::App* counter_cmd = app.add_subcommand(
      "counterexample", "fidelity vs log-score report preferences");
  ConfigBinder counter_binder(counter_cmd);
  counter_cmd->add_option("--grid", counterexample.grid,
                          "Bloch grid resolution per axis");
  counter_cmd->add_option("--out", counterexample.out, "output directory");
  counter_cmd->add_option("--config", counterexample.config_file,
                          "JSON config (flags override)");
  counter_binder.bind("grid", counterexample.grid);
  counter_binder.bind("out", counterexample.out);

  VerifyArgs verify;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify-appendix", "check that per-outcome reward offsets must be equal");
  ConfigBinder verify_binder(verify_cmd);
  verify_cmd->add_option("--dim", verify.dim, "system dimension (>= 3)");
  verify_cmd->add_option("--trials", verify.trials, "curves per branch");
  verify_cmd->add_option("--seed", verify.seed, "RNG seed");
  verify_cmd->add_option("--out", verify.out, "output directory");
  verify_cmd->add_option("--config", verify.config_file,
                         "JSON config (flags override)");
  verify_binder.bind("dim", verify.dim);
  verify_binder.bind("trials", verify.trials);
  verify_binder.bind("seed", verify.seed);
  verify_binder.bind("out", verify.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForVersion") {
      return app.exit(e);
    }
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (game_cmd->parsed()) {
      if (!game.config_file.empty()) game_binder.apply_file(game.config_file);
      return run_simulate_game(game);
    }
    if (score_cmd->parsed()) {
      if (!score.config_file.empty()) score_binder.apply_file(score.config_file);
      return run_score(score);
    }
    if (estimate_cmd->parsed()) {
      if (!estimate.config_file.empty()) {
        estimate_binder.apply_file(estimate.config_file);
      }
      return run_estimate(estimate);
    }
    if (risk_cmd->parsed()) {
      if (!risk.config_file.empty()) risk_binder.apply_file(risk.config_file);
      return run_risk_study(risk);
    }
    if (counter_cmd->parsed()) {
      if (!counterexample.config_file.empty()) {
        counter_binder.apply_file(counterexample.config_file);
      }
      return run_counterexample(counterexample);
    }
    if (verify_cmd->parsed()) {
      if (!verify.config_file.empty()) verify_binder.apply_file(verify.config_file);
      return run_verify_appendix(verify);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no command selected\n";
  return 2;
}
