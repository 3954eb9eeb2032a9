#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hers/scoring.hpp"

namespace hers {

// One verification game: Bob repeatedly measures copies of `truth` in the
// eigenbasis of Alice's `report` and pays per the rule.
struct GameConfig {
  DensityMatrix truth;
  DensityMatrix report;
  ScoringRule rule;
  std::int64_t rounds = 1;
  std::uint64_t seed = 0;
};

struct GameTranscript {
  std::vector<int> outcomes;
  std::vector<double> payoffs;
  double mean_payoff = 0.0;       // -inf once any payoff is -inf
  double analytic_expected = 0.0; // expected_reward(rule, truth, report)
  // Sample standard deviation of the payoffs (0 when not finite or rounds < 2);
  // convergence checks divide by sqrt(rounds).
  double payoff_std = 0.0;
};

// Sample one outcome from the Born distribution of truth in the report's
// eigenbasis and pay hers_payoff on the reported eigenvalue.
RewardOutcome play_round(const DensityMatrix& truth, const DensityMatrix& report,
                         const ScoringRule& rule, CounterRng& rng);

// Deterministic given config.seed: round r draws from the substream keyed by
// r, so the transcript is reproducible for any parallelism degree.
GameTranscript simulate_game(const GameConfig& config);

// Index of the candidate maximizing the analytic expected reward; ties break
// to the lowest index.
std::size_t best_report_on_grid(const DensityMatrix& truth,
                                std::span<const DensityMatrix> candidates,
                                const ScoringRule& rule);

// Qubit states on a Bloch-ball lattice: purity shells (|r| in (0, 1], the
// outermost shell pure) crossed with polar and azimuthal angles, plus the
// maximally mixed center.
std::vector<DensityMatrix> qubit_bloch_grid(int purity_shells, int polar_steps,
                                            int azimuthal_steps);

// The two-hypothesis scenario: truth is |0><0| or |+><+| with equal
// probability, so the mean state is [[0.75, 0.25], [0.25, 0.25]]. Average
// fidelity is maximized by the top eigenprojector of the mean (a pure state
// the experimentalist knows is wrong), while the log-score reward is
// maximized by the mean itself and assigns the pure report -inf.
struct FidelityCounterexampleReport {
  DensityMatrix mean_state;
  DensityMatrix fidelity_optimal;   // argmax of average fidelity on the grid
  DensityMatrix reward_optimal;     // argmax of ensemble expected reward
  double top_eigenvalue = 0.0;      // largest eigenvalue of the mean state
  double fidelity_of_fidelity_optimal = 0.0;
  double fidelity_of_mean = 0.0;    // Tr(mean^2)
  double reward_of_mean = 0.0;
  double reward_of_fidelity_optimal = 0.0;  // -inf
};

FidelityCounterexampleReport fidelity_counterexample(int grid_resolution = 20);

}  // namespace hers
