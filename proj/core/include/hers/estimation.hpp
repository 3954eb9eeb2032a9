#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hers/quantum.hpp"

namespace hers {

enum class PriorKind { HilbertSchmidt, BuresLike, DiscreteEnsemble };

struct WeightedState {
  DensityMatrix state;
  double probability = 0.0;
};

// Prior over density matrices. HilbertSchmidt samples GG^dagger / Tr with
// Ginibre G; BuresLike samples (I + U) GG^dagger (I + U^dagger) with Haar U
// (an approximation, labeled as such in outputs); DiscreteEnsemble is an
// explicit weighted list.
struct PriorSpec {
  PriorKind kind = PriorKind::HilbertSchmidt;
  int dim = 2;
  std::vector<WeightedState> ensemble;  // DiscreteEnsemble only

  static PriorSpec hilbert_schmidt(int dim);
  static PriorSpec bures_like(int dim);
  static PriorSpec discrete(std::vector<WeightedState> ensemble);
};

void validate(const PriorSpec& spec);

// Ordered list of observed POVM effects, one per measured copy.
class MeasurementRecord {
 public:
  MeasurementRecord() = default;
  explicit MeasurementRecord(std::vector<Matrix> effects);

  bool empty() const { return effects_.empty(); }
  int size() const { return static_cast<int>(effects_.size()); }
  int dim() const { return effects_.empty() ? 0 : static_cast<int>(effects_.front().rows()); }
  const Matrix& effect(int i) const { return effects_[i]; }
  const std::vector<Matrix>& effects() const { return effects_; }
  void append(Matrix effect);
  // Sub-record [first, first + count).
  MeasurementRecord slice(int first, int count) const;

 private:
  std::vector<Matrix> effects_;
};

// Weighted sample representation of a distribution over states. Weights sum
// to 1 within 1e-10; log_evidence accumulates ln of the per-update
// normalizers.
class ParticleEnsemble {
 public:
  ParticleEnsemble(std::vector<DensityMatrix> particles,
                   std::vector<double> weights, double log_evidence = 0.0);

  int size() const { return static_cast<int>(particles_.size()); }
  const std::vector<DensityMatrix>& particles() const { return particles_; }
  const std::vector<double>& weights() const { return weights_; }
  double log_evidence() const { return log_evidence_; }
  // 1 / sum(w^2), in [1, size].
  double effective_sample_size() const;

 private:
  std::vector<DensityMatrix> particles_;
  std::vector<double> weights_;
  double log_evidence_;
};

struct PosteriorSummary {
  DensityMatrix mean;
  double log_evidence = 0.0;
  double ess = 0.0;
};

// count i.i.d. draws from the prior with uniform weights 1/count; particle i
// uses the substream keyed by i, so the ensemble is parallelism independent.
ParticleEnsemble sample_prior(const PriorSpec& spec, int count, std::uint64_t seed);

// The discrete ensemble itself as particles with its exact probabilities as
// weights (no sampling noise).
ParticleEnsemble exact_ensemble(const PriorSpec& spec);

// sum_i ln Tr(E_i rho); -inf when any factor is <= 1e-15. Empty record gives 0.
double log_likelihood(const DensityMatrix& state, const MeasurementRecord& record);

struct UpdateOptions {
  bool resample = true;
  double resample_threshold = 0.5;  // resample when ESS < threshold * count
  std::uint64_t seed = 0;           // drives systematic resampling only
};

// Bayes step: w_i' proportional to w_i * exp(log_likelihood(rho_i, record)),
// log-domain throughout; accumulates log evidence; systematic resampling when
// the effective sample size drops below threshold * count. Throws
// DegeneratePosteriorError when the record is impossible under every particle.
// There is no move/rejuvenation step, so repeated resampling on very long
// records reduces particle diversity.
ParticleEnsemble posterior_update(const ParticleEnsemble& prior,
                                  const MeasurementRecord& record,
                                  const UpdateOptions& options = {});

// Weighted average state sum_i w_i rho_i.
DensityMatrix posterior_mean(const ParticleEnsemble& ensemble);

PosteriorSummary summarize(const ParticleEnsemble& ensemble);

struct MleOptions {
  double tolerance = 1e-8;  // trace-distance stopping rule
  int max_iters = 10000;
};

struct MleResult {
  DensityMatrix estimate;
  bool converged = false;
  int iterations = 0;
  double log_likelihood = 0.0;
};

// Maximum-likelihood estimate via the R rho R fixed point:
// rho <- normalize(R(rho) rho R(rho)) with R(rho) = sum_i E_i / Tr(E_i rho),
// started from the maximally mixed state. Non-convergence returns the best
// iterate with converged = false. Rejects an empty record.
MleResult mle_estimate(const MeasurementRecord& record, int dim,
                       const MleOptions& options = {});

// Simulated records: each copy measured independently, observed effect
// appended.
MeasurementRecord simulate_record(const DensityMatrix& truth, const Povm& povm,
                                  int copies, CounterRng& rng);
// Random X/Y/Z basis per copy (qubits only).
MeasurementRecord simulate_record_random_pauli(const DensityMatrix& truth,
                                               int copies, CounterRng& rng);

enum class Estimator { BayesMean, Mle };
enum class MeasurementScheme { SicPovm, RandomPauli, FixedPovm };

struct RiskStudyConfig {
  PriorSpec prior;
  int trials = 100;
  int copies = 0;
  MeasurementScheme scheme = MeasurementScheme::SicPovm;
  std::optional<Povm> povm;  // required for FixedPovm
  Estimator estimator = Estimator::BayesMean;
  int particle_count = 10000;
  std::uint64_t seed = 0;
};

struct RiskRow {
  int trial = 0;
  double relative_entropy_risk = 0.0;  // +inf allowed
  double trace_distance = 0.0;
  bool rank_deficient = false;  // estimate has an eigenvalue below 1e-12
};

struct RiskSummary {
  double mean_risk = 0.0;  // +inf when any trial is infinite
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  double infinite_fraction = 0.0;
};

struct RiskTable {
  Estimator estimator = Estimator::BayesMean;
  int copies = 0;
  std::vector<RiskRow> rows;
  RiskSummary summary;
};

// Per trial: draw a truth from the prior, simulate `copies` measurement
// outcomes, run the estimator, and record S(truth || estimate) plus trace
// distance. Deterministic given seed (trial t uses substream t).
RiskTable estimator_risk(const RiskStudyConfig& config);

}  // namespace hers
