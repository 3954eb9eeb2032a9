#include <doctest.h>

#include <cmath>

#include "hers/game.hpp"
#include "test_helpers.hpp"

using namespace hers;
using namespace hers::test;

TEST_CASE("play_round: frozen examples") {
  CounterRng rng(31);
  const DensityMatrix zero = DensityMatrix::basis_state(2, 0);
  for (int i = 0; i < 20; ++i) {
    const RewardOutcome r = play_round(zero, zero, hers_rule(), rng);
    CHECK(r.outcome_index == 0);
    CHECK(r.payoff == doctest::Approx(0.0).epsilon(1e-12));
  }

  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
  for (int i = 0; i < 20; ++i) {
    const RewardOutcome r = play_round(mixed, mixed, hers_rule(), rng);
    CHECK(r.payoff == doctest::Approx(-kLn2).epsilon(1e-12));
  }

  // Misreporting |+> as |0><0|: the orthogonal outcome fires about half the
  // time and costs -inf.
  int ruinous = 0;
  for (int i = 0; i < 400; ++i) {
    const RewardOutcome r = play_round(DensityMatrix::plus_state(), zero,
                                       hers_rule(), rng);
    if (r.payoff == kNegInf) ++ruinous;
  }
  CHECK(ruinous > 120);
  CHECK(ruinous < 280);

  CHECK_THROWS_AS(play_round(zero, zero, brier_rule(), rng),
                  std::invalid_argument);
}

TEST_CASE("simulate_game: determinism and bookkeeping") {
  CounterRng rng(32);
  GameConfig config{random_density_matrix(2, rng), random_density_matrix(2, rng),
                    hers_rule(), 2000, 99};
  const GameTranscript a = simulate_game(config);
  const GameTranscript b = simulate_game(config);
  CHECK(a.outcomes == b.outcomes);
  CHECK(a.payoffs == b.payoffs);
  CHECK(a.mean_payoff == b.mean_payoff);

  double sum = 0.0;
  for (double p : a.payoffs) sum += p;
  CHECK(a.mean_payoff == doctest::Approx(sum / 2000.0).epsilon(1e-12));
  CHECK(a.analytic_expected ==
        doctest::Approx(expected_reward(config.rule, config.truth, config.report))
            .epsilon(1e-12));

  config.rounds = 1;
  CHECK(simulate_game(config).payoffs.size() == 1);
  config.rounds = 0;
  CHECK_THROWS_AS(simulate_game(config), std::invalid_argument);

  GameConfig mismatched{DensityMatrix::maximally_mixed(2),
                        DensityMatrix::maximally_mixed(3), hers_rule(), 10, 0};
  CHECK_THROWS_AS(simulate_game(mismatched), std::invalid_argument);
}

TEST_CASE("simulate_game: support violation drives the mean to -inf") {
  GameConfig config{DensityMatrix::plus_state(), DensityMatrix::basis_state(2, 0),
                    hers_rule(), 200, 7};
  const GameTranscript t = simulate_game(config);
  CHECK(t.mean_payoff == kNegInf);
  CHECK(t.analytic_expected == kNegInf);
}

TEST_CASE("simulate_game: honest maximally mixed play pays -ln 2 every round") {
  GameConfig config{DensityMatrix::maximally_mixed(2),
                    DensityMatrix::maximally_mixed(2), hers_rule(), 1000, 5};
  const GameTranscript t = simulate_game(config);
  for (double p : t.payoffs) CHECK(p == doctest::Approx(-kLn2).epsilon(1e-12));
  CHECK(t.mean_payoff == doctest::Approx(-kLn2).epsilon(1e-12));
}

TEST_CASE("simulate_game: Monte Carlo mean within 5 standard errors (property)") {
  CounterRng rng(33);
  int within = 0;
  const int trials = 100;
  for (int trial = 0; trial < trials; ++trial) {
    GameConfig config{depolarize(random_density_matrix(2, rng), 0.02),
                      depolarize(random_density_matrix(2, rng), 0.02),
                      hers_rule(), 5000,
                      1000 + static_cast<std::uint64_t>(trial)};
    const GameTranscript t = simulate_game(config);
    REQUIRE(is_finite(t.mean_payoff));
    const double se = t.payoff_std / std::sqrt(static_cast<double>(config.rounds));
    if (std::abs(t.mean_payoff - t.analytic_expected) <= 5.0 * se) ++within;
  }
  CHECK(within >= 99);
}

TEST_CASE("best_report_on_grid: frozen examples") {
  CounterRng rng(34);
  const DensityMatrix truth = random_density_matrix(2, rng);
  std::vector<DensityMatrix> candidates = {random_density_matrix(2, rng), truth,
                                           random_density_matrix(2, rng)};
  CHECK(best_report_on_grid(truth, candidates, hers_rule()) == 1);

  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
  std::vector<DensityMatrix> pair = {DensityMatrix::basis_state(2, 0), mixed};
  CHECK(best_report_on_grid(mixed, pair, hers_rule()) == 1);

  std::vector<DensityMatrix> depolarized = {depolarize(truth, 0.0),
                                            depolarize(truth, 0.1),
                                            depolarize(truth, 0.2)};
  CHECK(best_report_on_grid(truth, depolarized, hers_rule()) == 0);

  CHECK_THROWS_AS(
      best_report_on_grid(truth, std::span<const DensityMatrix>{}, hers_rule()),
      std::invalid_argument);
}

TEST_CASE("honesty dominance (property)") {
  CounterRng rng(35);
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + static_cast<int>(rng.next_below(2));
    const DensityMatrix truth = random_density_matrix(dim, rng);
    const double honest = expected_reward(hers_rule(), truth, truth);
    for (int k = 0; k < 20; ++k) {
      const DensityMatrix other = random_density_matrix(dim, rng);
      if (frobenius_distance(truth, other) < 1e-9) continue;
      CHECK(honest > expected_reward(hers_rule(), truth, other));
    }
  }
}

TEST_CASE("bloch grid states are valid and cover purity shells") {
  const auto grid = qubit_bloch_grid(4, 4, 4);
  CHECK(grid.size() == 4 * 4 * 4 + 1);
  for (const auto& state : grid) {
    CHECK(state.dim() == 2);
    CHECK(std::abs(state.matrix().trace().real() - 1.0) < 1e-12);
  }
}

TEST_CASE("fidelity counterexample: mean vs top eigenprojector") {
  const FidelityCounterexampleReport report = fidelity_counterexample(20);

  // The scenario mean is [[0.75, 0.25], [0.25, 0.25]].
  CHECK(frobenius_distance(report.mean_state, mean_state_example()) < 1e-12);
  CHECK(report.top_eigenvalue ==
        doctest::Approx(mean_state_top_eigenvalue()).epsilon(1e-9));
  CHECK(report.top_eigenvalue == doctest::Approx(0.853553).epsilon(1e-6));

  // Fidelity prefers the pure top eigenprojector...
  const auto eig = eigendecompose(report.mean_state);
  const DensityMatrix projector = DensityMatrix::pure(eig.basis.vector(0));
  CHECK(frobenius_distance(report.fidelity_optimal, projector) < 1e-9);
  CHECK(report.fidelity_of_fidelity_optimal ==
        doctest::Approx(mean_state_top_eigenvalue()).epsilon(1e-9));
  // ... whose average fidelity strictly beats honestly reporting the mean,
  // F(mean) = Tr(mean^2).
  CHECK(report.fidelity_of_mean == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(report.fidelity_of_fidelity_optimal > report.fidelity_of_mean);

  // The log-score reward ranks them the other way around: the mean wins and
  // the pure report is ruinous.
  CHECK(frobenius_distance(report.reward_optimal, report.mean_state) < 1e-12);
  CHECK(report.reward_of_fidelity_optimal == kNegInf);
  CHECK(is_finite(report.reward_of_mean));
  // Reporting the mean earns Tr(mean ln mean) = -H(mean) under Hers(0, 1).
  CHECK(report.reward_of_mean ==
        doctest::Approx(-von_neumann_entropy(report.mean_state)).epsilon(1e-9));
}
