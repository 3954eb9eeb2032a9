#include <benchmark/benchmark.h>

#include "hers/estimation.hpp"
#include "hers/game.hpp"
#include "hers/perturbation.hpp"
#include "hers/scoring.hpp"

using namespace hers;

namespace {

DensityMatrix seeded_state(int dim, std::uint64_t seed) {
  CounterRng rng(seed);
  return random_density_matrix(dim, rng);
}

void BM_Eigendecompose(benchmark::State& state) {
  const DensityMatrix rho = seeded_state(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigendecompose(rho));
  }
}
BENCHMARK(BM_Eigendecompose)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_RelativeEntropy(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const DensityMatrix rho = seeded_state(dim, 2);
  const DensityMatrix sigma = seeded_state(dim, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(relative_entropy(rho, sigma));
  }
}
BENCHMARK(BM_RelativeEntropy)->Arg(2)->Arg(4)->Arg(8);

void BM_ExpectedReward(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const DensityMatrix rho = seeded_state(dim, 4);
  const DensityMatrix sigma = seeded_state(dim, 5);
  const ScoringRule rule = hers_rule();
  for (auto _ : state) {
    benchmark::DoNotOptimize(expected_reward(rule, rho, sigma));
  }
}
BENCHMARK(BM_ExpectedReward)->Arg(2)->Arg(4)->Arg(8);

void BM_SimulateGameRounds(benchmark::State& state) {
  GameConfig config{seeded_state(2, 6), seeded_state(2, 7), hers_rule(),
                    state.range(0), 11};
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_game(config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateGameRounds)->Arg(1000)->Arg(10000);

void BM_PosteriorUpdate(benchmark::State& state) {
  const int particles = static_cast<int>(state.range(0));
  CounterRng rng(8);
  const DensityMatrix truth = seeded_state(2, 9);
  const MeasurementRecord record =
      simulate_record(truth, Povm::sic_qubit(), 50, rng);
  const ParticleEnsemble prior =
      sample_prior(PriorSpec::hilbert_schmidt(2), particles, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(posterior_update(prior, record));
  }
  state.SetItemsProcessed(state.iterations() * particles * 50);
}
BENCHMARK(BM_PosteriorUpdate)->Arg(256)->Arg(2048);

void BM_MleEstimate(benchmark::State& state) {
  CounterRng rng(12);
  const DensityMatrix truth = seeded_state(2, 13);
  const MeasurementRecord record = simulate_record(
      truth, Povm::sic_qubit(), static_cast<int>(state.range(0)), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mle_estimate(record, 2));
  }
}
BENCHMARK(BM_MleEstimate)->Arg(20)->Arg(200);

void BM_SecondDerivativeAnalytic(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  CounterRng rng(14);
  RealVector populations(dim);
  double sum = 0.0;
  for (int i = 0; i < dim; ++i) {
    populations(i) = 0.05 + rng.next_double();
    sum += populations(i);
  }
  populations /= sum;
  const PerturbationCurve curve(populations, random_hermitian(dim, rng),
                                RealVector::Zero(dim));
  for (auto _ : state) {
    benchmark::DoNotOptimize(second_derivative_analytic(curve));
  }
}
BENCHMARK(BM_SecondDerivativeAnalytic)->Arg(3)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
