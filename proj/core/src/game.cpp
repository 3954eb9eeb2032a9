#include "hers/game.hpp"

#include <cmath>

namespace hers {
namespace {

int sample_index(const std::vector<double>& probs, double u) {
  double cum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cum += probs[i];
    if (u < cum) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

}  // namespace

RewardOutcome play_round(const DensityMatrix& truth, const DensityMatrix& report,
                         const ScoringRule& rule, CounterRng& rng) {
  validate(rule);
  require(rule.kind == ScoreKind::Hers,
          "the verification game pays per-outcome log scores; rule must be Hers");
  require(truth.dim() == report.dim(), "truth and report dimensions differ");
  const auto eig = eigendecompose(report);
  const OutcomeDistribution p = born_probabilities(truth, eig.basis);
  const int outcome = sample_index(p.probs(), rng.next_double());
  return RewardOutcome{outcome, hers_payoff(rule, eig.eigenvalues(outcome))};
}

GameTranscript simulate_game(const GameConfig& config) {
  validate(config.rule);
  require(config.rule.kind == ScoreKind::Hers,
          "the verification game pays per-outcome log scores; rule must be Hers");
  require(config.rounds >= 1, "rounds must be >= 1");
  require(config.truth.dim() == config.report.dim(),
          "truth and report dimensions differ");

  const auto eig = eigendecompose(config.report);
  const OutcomeDistribution p = born_probabilities(config.truth, eig.basis);
  std::vector<double> payoff_table(config.report.dim());
  for (int i = 0; i < config.report.dim(); ++i) {
    payoff_table[i] = hers_payoff(config.rule, eig.eigenvalues(i));
  }

  GameTranscript t;
  t.outcomes.reserve(config.rounds);
  t.payoffs.reserve(config.rounds);
  const CounterRng root(config.seed);
  // Welford running moments; a single -inf payoff poisons the mean.
  double mean = 0.0;
  double m2 = 0.0;
  bool finite = true;
  for (std::int64_t r = 0; r < config.rounds; ++r) {
    CounterRng round_rng = root.derive(static_cast<std::uint64_t>(r));
    const int outcome = sample_index(p.probs(), round_rng.next_double());
    const double payoff = payoff_table[outcome];
    t.outcomes.push_back(outcome);
    t.payoffs.push_back(payoff);
    if (payoff == kNegInf) {
      finite = false;
    } else if (finite) {
      const double delta = payoff - mean;
      mean += delta / static_cast<double>(r + 1);
      m2 += delta * (payoff - mean);
    }
  }
  if (finite) {
    t.mean_payoff = mean;
    t.payoff_std =
        config.rounds >= 2
            ? std::sqrt(std::max(0.0, m2 / static_cast<double>(config.rounds - 1)))
            : 0.0;
  } else {
    t.mean_payoff = kNegInf;
    t.payoff_std = 0.0;
  }
  t.analytic_expected = expected_reward(config.rule, config.truth, config.report);
  return t;
}

std::size_t best_report_on_grid(const DensityMatrix& truth,
                                std::span<const DensityMatrix> candidates,
                                const ScoringRule& rule) {
  require(!candidates.empty(), "candidate list must be nonempty");
  std::size_t best = 0;
  double best_reward = kNegInf;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double reward = expected_reward(rule, truth, candidates[i]);
    if (reward > best_reward) {
      best_reward = reward;
      best = i;
    }
  }
  return best;
}

std::vector<DensityMatrix> qubit_bloch_grid(int purity_shells, int polar_steps,
                                            int azimuthal_steps) {
  require(purity_shells >= 1 && polar_steps >= 1 && azimuthal_steps >= 1,
          "grid resolutions must be >= 1");
  constexpr double kPi = 3.141592653589793238462643383279502884;
  std::vector<DensityMatrix> grid;
  grid.reserve(static_cast<std::size_t>(purity_shells) * polar_steps *
                   azimuthal_steps + 1);
  grid.push_back(DensityMatrix::maximally_mixed(2));
  for (int s = 1; s <= purity_shells; ++s) {
    const double r = static_cast<double>(s) / purity_shells;
    for (int a = 0; a < polar_steps; ++a) {
      const double theta = kPi * (a + 0.5) / polar_steps;
      for (int b = 0; b < azimuthal_steps; ++b) {
        const double phi = 2.0 * kPi * b / azimuthal_steps;
        const double x = r * std::sin(theta) * std::cos(phi);
        const double y = r * std::sin(theta) * std::sin(phi);
        const double z = r * std::cos(theta);
        Matrix m(2, 2);
        m(0, 0) = Complex(0.5 * (1.0 + z), 0.0);
        m(0, 1) = Complex(0.5 * x, -0.5 * y);
        m(1, 0) = Complex(0.5 * x, 0.5 * y);
        m(1, 1) = Complex(0.5 * (1.0 - z), 0.0);
        grid.emplace_back(std::move(m));
      }
    }
  }
  return grid;
}

FidelityCounterexampleReport fidelity_counterexample(int grid_resolution) {
  require(grid_resolution >= 2, "grid resolution must be >= 2");
  const std::vector<DensityMatrix> members = {DensityMatrix::basis_state(2, 0),
                                              DensityMatrix::plus_state()};
  const std::vector<double> weights = {0.5, 0.5};

  Matrix mean_m = 0.5 * (members[0].matrix() + members[1].matrix());
  const DensityMatrix mean(std::move(mean_m));
  const auto eig = eigendecompose(mean);
  const DensityMatrix top_projector =
      DensityMatrix::pure(eig.basis.vector(0));

  std::vector<DensityMatrix> grid =
      qubit_bloch_grid(grid_resolution, grid_resolution, grid_resolution);
  grid.push_back(mean);
  grid.push_back(top_projector);

  const auto average_fidelity = [&](const DensityMatrix& sigma) {
    double f = 0.0;
    for (std::size_t j = 0; j < members.size(); ++j) {
      f += weights[j] * fidelity(sigma, members[j]);
    }
    return f;
  };

  const ScoringRule rule = hers_rule();
  std::size_t best_f = 0;
  std::size_t best_r = 0;
  double best_f_val = -1.0;
  double best_r_val = kNegInf;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double f = average_fidelity(grid[i]);
    if (f > best_f_val) {
      best_f_val = f;
      best_f = i;
    }
    const double r = ensemble_expected_reward(
        rule, std::span<const DensityMatrix>(members),
        std::span<const double>(weights), grid[i]);
    if (r > best_r_val) {
      best_r_val = r;
      best_r = i;
    }
  }

  FidelityCounterexampleReport report{
      mean,
      grid[best_f],
      grid[best_r],
      eig.eigenvalues(0),
      best_f_val,
      average_fidelity(mean),
      ensemble_expected_reward(rule, std::span<const DensityMatrix>(members),
                               std::span<const double>(weights), mean),
      ensemble_expected_reward(rule, std::span<const DensityMatrix>(members),
                               std::span<const double>(weights), top_projector)};
  return report;
}

}  // namespace hers
