#include "hers/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace hers {
namespace {

constexpr double kLikelihoodFloor = 1e-15;

int sample_index(const std::vector<double>& probs, double u) {
  double cum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cum += probs[i];
    if (u < cum) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

DensityMatrix sample_one(const PriorSpec& spec, CounterRng& rng) {
  switch (spec.kind) {
    case PriorKind::HilbertSchmidt:
      return random_density_matrix(spec.dim, rng);
    case PriorKind::BuresLike: {
      const Matrix u = random_unitary(spec.dim, rng);
      const Matrix g = random_ginibre(spec.dim, rng);
      const Matrix a = (Matrix::Identity(spec.dim, spec.dim) + u) * g;
      Matrix m = a * a.adjoint();
      m /= m.trace().real();
      return DensityMatrix(std::move(m));
    }
    case PriorKind::DiscreteEnsemble: {
      std::vector<double> probs;
      probs.reserve(spec.ensemble.size());
      for (const auto& ws : spec.ensemble) probs.push_back(ws.probability);
      return spec.ensemble[sample_index(probs, rng.next_double())].state;
    }
  }
  throw std::logic_error("unreachable prior kind");
}

double logsumexp(const std::vector<double>& values) {
  double max = kNegInf;
  for (double v : values) max = std::max(max, v);
  if (max == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double v : values) {
    if (v != kNegInf) sum += std::exp(v - max);
  }
  return max + std::log(sum);
}

}  // namespace

PriorSpec PriorSpec::hilbert_schmidt(int dim) {
  PriorSpec spec;
  spec.kind = PriorKind::HilbertSchmidt;
  spec.dim = dim;
  validate(spec);
  return spec;
}

PriorSpec PriorSpec::bures_like(int dim) {
  PriorSpec spec;
  spec.kind = PriorKind::BuresLike;
  spec.dim = dim;
  validate(spec);
  return spec;
}

PriorSpec PriorSpec::discrete(std::vector<WeightedState> ensemble) {
  PriorSpec spec;
  spec.kind = PriorKind::DiscreteEnsemble;
  spec.dim = ensemble.empty() ? 0 : ensemble.front().state.dim();
  spec.ensemble = std::move(ensemble);
  validate(spec);
  return spec;
}

void validate(const PriorSpec& spec) {
  require(spec.dim >= 2, "prior dimension must be >= 2");
  if (spec.kind == PriorKind::DiscreteEnsemble) {
    require(!spec.ensemble.empty(), "discrete ensemble must be nonempty");
    double sum = 0.0;
    for (const auto& ws : spec.ensemble) {
      require(ws.probability >= 0.0, "ensemble probabilities must be >= 0");
      require(ws.state.dim() == spec.dim, "ensemble states must share the prior dim");
      sum += ws.probability;
    }
    if (std::abs(sum - 1.0) > tol::kProbSum) {
      std::ostringstream os;
      os << "ensemble probabilities sum to " << sum << ", not 1 within "
         << tol::kProbSum;
      throw std::invalid_argument(os.str());
    }
  } else {
    require(spec.ensemble.empty(),
            "only DiscreteEnsemble priors carry an explicit ensemble");
  }
}

MeasurementRecord::MeasurementRecord(std::vector<Matrix> effects) {
  for (auto& e : effects) append(std::move(e));
}

void MeasurementRecord::append(Matrix effect) {
  require(effect.rows() == effect.cols() && effect.rows() >= 1,
          "record effects must be square");
  if (!effects_.empty()) {
    require(effect.rows() == effects_.front().rows(),
            "record effects must share one dimension");
  }
  const double herm = (effect - effect.adjoint()).cwiseAbs().maxCoeff();
  require(herm <= tol::kHermitian, "record effect not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(effect, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigensolver failed on a record effect");
  }
  require(solver.eigenvalues().minCoeff() >= -tol::kPsd,
          "record effect not positive semidefinite");
  effects_.push_back(std::move(effect));
}

MeasurementRecord MeasurementRecord::slice(int first, int count) const {
  require(first >= 0 && count >= 0 && first + count <= size(),
          "record slice out of range");
  return MeasurementRecord(std::vector<Matrix>(effects_.begin() + first,
                                               effects_.begin() + first + count));
}

ParticleEnsemble::ParticleEnsemble(std::vector<DensityMatrix> particles,
                                   std::vector<double> weights,
                                   double log_evidence)
    : particles_(std::move(particles)),
      weights_(std::move(weights)),
      log_evidence_(log_evidence) {
  require(!particles_.empty(), "particle ensemble must be nonempty");
  require(particles_.size() == weights_.size(),
          "particles and weights must have equal length");
  double sum = 0.0;
  for (double w : weights_) {
    require(w >= 0.0, "particle weights must be >= 0");
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol::kProbSum) {
    std::ostringstream os;
    os << "particle weights sum to " << sum << ", not 1 within " << tol::kProbSum;
    throw std::invalid_argument(os.str());
  }
}

double ParticleEnsemble::effective_sample_size() const {
  double sq = 0.0;
  for (double w : weights_) sq += w * w;
  return 1.0 / sq;
}

ParticleEnsemble sample_prior(const PriorSpec& spec, int count, std::uint64_t seed) {
  validate(spec);
  require(count >= 1, "particle count must be >= 1");
  const CounterRng root(seed);
  std::vector<DensityMatrix> particles;
  particles.reserve(count);
  for (int i = 0; i < count; ++i) {
    CounterRng rng = root.derive(static_cast<std::uint64_t>(i));
    particles.push_back(sample_one(spec, rng));
  }
  return ParticleEnsemble(std::move(particles),
                          std::vector<double>(count, 1.0 / count));
}

ParticleEnsemble exact_ensemble(const PriorSpec& spec) {
  validate(spec);
  require(spec.kind == PriorKind::DiscreteEnsemble,
          "exact ensembles exist only for DiscreteEnsemble priors");
  std::vector<DensityMatrix> particles;
  std::vector<double> weights;
  particles.reserve(spec.ensemble.size());
  for (const auto& ws : spec.ensemble) {
    particles.push_back(ws.state);
    weights.push_back(ws.probability);
  }
  return ParticleEnsemble(std::move(particles), std::move(weights));
}

double log_likelihood(const DensityMatrix& state, const MeasurementRecord& record) {
  if (record.empty()) return 0.0;
  require(state.dim() == record.dim(), "state and record dimensions differ");
  double total = 0.0;
  for (const Matrix& e : record.effects()) {
    const double p = std::real((e * state.matrix()).trace());
    if (p <= kLikelihoodFloor) return kNegInf;
    total += std::log(p);
  }
  return total;
}

ParticleEnsemble posterior_update(const ParticleEnsemble& prior,
                                  const MeasurementRecord& record,
                                  const UpdateOptions& options) {
  if (record.empty()) return prior;
  const int n = prior.size();
  std::vector<double> log_weights(n);
  for (int i = 0; i < n; ++i) {
    const double w = prior.weights()[i];
    log_weights[i] = (w > 0.0)
                         ? std::log(w) + log_likelihood(prior.particles()[i], record)
                         : kNegInf;
  }
  const double log_z = logsumexp(log_weights);
  if (log_z == kNegInf) {
    throw DegeneratePosteriorError(
        "record has zero likelihood under every particle");
  }
  std::vector<double> weights(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    weights[i] = (log_weights[i] == kNegInf) ? 0.0 : std::exp(log_weights[i] - log_z);
    sum += weights[i];
  }
  for (double& w : weights) w /= sum;

  std::vector<DensityMatrix> particles = prior.particles();
  double ess = 0.0;
  for (double w : weights) ess += w * w;
  ess = 1.0 / ess;
  if (options.resample && ess < options.resample_threshold * n) {
    // Systematic resampling: one uniform offset, n evenly spaced positions.
    CounterRng rng = CounterRng(options.seed).derive(0x7e5a);
    const double u0 = rng.next_double() / n;
    std::vector<DensityMatrix> resampled;
    resampled.reserve(n);
    double cum = weights[0];
    int idx = 0;
    for (int k = 0; k < n; ++k) {
      const double pos = u0 + static_cast<double>(k) / n;
      while (pos > cum && idx + 1 < n) cum += weights[++idx];
      resampled.push_back(particles[idx]);
    }
    particles = std::move(resampled);
    std::fill(weights.begin(), weights.end(), 1.0 / n);
  }
  return ParticleEnsemble(std::move(particles), std::move(weights),
                          prior.log_evidence() + log_z);
}

DensityMatrix posterior_mean(const ParticleEnsemble& ensemble) {
  const int d = ensemble.particles().front().dim();
  Matrix mean = Matrix::Zero(d, d);
  for (int i = 0; i < ensemble.size(); ++i) {
    mean += ensemble.weights()[i] * ensemble.particles()[i].matrix();
  }
  return DensityMatrix(std::move(mean));
}

PosteriorSummary summarize(const ParticleEnsemble& ensemble) {
  return PosteriorSummary{posterior_mean(ensemble), ensemble.log_evidence(),
                          ensemble.effective_sample_size()};
}

MleResult mle_estimate(const MeasurementRecord& record, int dim,
                       const MleOptions& options) {
  require(!record.empty(), "maximum-likelihood estimation needs a nonempty record");
  require(dim >= 2 && record.dim() == dim, "record dimension must match dim");
  require(options.tolerance > 0.0 && options.max_iters >= 1,
          "tolerance must be positive and max_iters >= 1");

  DensityMatrix rho = DensityMatrix::maximally_mixed(dim);
  DensityMatrix best = rho;
  double best_ll = log_likelihood(rho, record);
  MleResult result{best, false, 0, best_ll};
  for (int iter = 1; iter <= options.max_iters; ++iter) {
    Matrix r = Matrix::Zero(dim, dim);
    for (const Matrix& e : record.effects()) {
      const double p = std::real((e * rho.matrix()).trace());
      if (p <= kLikelihoodFloor) {
        // The iterate assigns zero probability to an observed effect; the
        // previous iterate is the usable answer.
        result.estimate = best;
        result.converged = false;
        result.iterations = iter - 1;
        result.log_likelihood = best_ll;
        return result;
      }
      r += e / p;
    }
    Matrix next = r * rho.matrix() * r;
    next = 0.5 * (next + next.adjoint()).eval();
    const double trace = next.trace().real();
    if (!(trace > 0.0)) {
      throw NumericalError("R rho R iterate lost its trace");
    }
    next /= trace;
    DensityMatrix next_state(std::move(next));
    const double step = trace_distance(next_state, rho);
    const double ll = log_likelihood(next_state, record);
    if (ll >= best_ll) {
      best_ll = ll;
      best = next_state;
    }
    rho = std::move(next_state);
    if (step < options.tolerance) {
      result.estimate = best;
      result.converged = true;
      result.iterations = iter;
      result.log_likelihood = best_ll;
      return result;
    }
  }
  result.estimate = best;
  result.converged = false;
  result.iterations = options.max_iters;
  result.log_likelihood = best_ll;
  return result;
}

MeasurementRecord simulate_record(const DensityMatrix& truth, const Povm& povm,
                                  int copies, CounterRng& rng) {
  require(copies >= 0, "copies must be >= 0");
  require(truth.dim() == povm.dim(), "truth and POVM dimensions differ");
  const OutcomeDistribution p = born_probabilities(truth, povm);
  MeasurementRecord record;
  for (int i = 0; i < copies; ++i) {
    const int outcome = sample_index(p.probs(), rng.next_double());
    record.append(povm.effect(outcome));
  }
  return record;
}

MeasurementRecord simulate_record_random_pauli(const DensityMatrix& truth,
                                               int copies, CounterRng& rng) {
  require(truth.dim() == 2, "random Pauli records are defined for qubits");
  require(copies >= 0, "copies must be >= 0");
  const Complex i01(0.0, 1.0);
  Matrix x_plus(2, 1), x_minus(2, 1), y_plus(2, 1), y_minus(2, 1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  x_plus << inv_sqrt2, inv_sqrt2;
  x_minus << inv_sqrt2, -inv_sqrt2;
  y_plus << inv_sqrt2, i01 * inv_sqrt2;
  y_minus << inv_sqrt2, -i01 * inv_sqrt2;
  std::vector<MeasurementBasis> bases;
  {
    Matrix bx(2, 2), by(2, 2);
    bx.col(0) = x_plus;
    bx.col(1) = x_minus;
    by.col(0) = y_plus;
    by.col(1) = y_minus;
    bases.emplace_back(std::move(bx));
    bases.emplace_back(std::move(by));
    bases.push_back(MeasurementBasis::computational(2));
  }
  MeasurementRecord record;
  for (int i = 0; i < copies; ++i) {
    const auto& basis = bases[rng.next_below(3)];
    const OutcomeDistribution p = born_probabilities(truth, basis);
    const int outcome = sample_index(p.probs(), rng.next_double());
    const Vector v = basis.vector(outcome);
    record.append(v * v.adjoint());
  }
  return record;
}

RiskTable estimator_risk(const RiskStudyConfig& config) {
  validate(config.prior);
  require(config.trials >= 1, "risk study needs trials >= 1");
  require(config.copies >= 0, "copies must be >= 0");
  require(config.particle_count >= 1, "particle count must be >= 1");
  if (config.scheme == MeasurementScheme::FixedPovm) {
    require(config.povm.has_value(), "FixedPovm scheme needs an explicit POVM");
  }
  if (config.scheme == MeasurementScheme::SicPovm ||
      config.scheme == MeasurementScheme::RandomPauli) {
    require(config.prior.dim == 2,
            "SIC and random-Pauli schemes are defined for qubits");
  }

  const CounterRng root(config.seed);
  RiskTable table;
  table.estimator = config.estimator;
  table.copies = config.copies;
  table.rows.reserve(config.trials);

  for (int t = 0; t < config.trials; ++t) {
    CounterRng trial_rng = root.derive(static_cast<std::uint64_t>(t));
    const DensityMatrix truth = sample_one(config.prior, trial_rng);

    MeasurementRecord record;
    switch (config.scheme) {
      case MeasurementScheme::SicPovm:
        record = simulate_record(truth, Povm::sic_qubit(), config.copies, trial_rng);
        break;
      case MeasurementScheme::RandomPauli:
        record = simulate_record_random_pauli(truth, config.copies, trial_rng);
        break;
      case MeasurementScheme::FixedPovm:
        record = simulate_record(truth, *config.povm, config.copies, trial_rng);
        break;
    }

    DensityMatrix estimate = DensityMatrix::maximally_mixed(config.prior.dim);
    if (config.estimator == Estimator::BayesMean) {
      ParticleEnsemble prior_particles = sample_prior(
          config.prior, config.particle_count, trial_rng.next_u64());
      UpdateOptions opts;
      opts.seed = trial_rng.next_u64();
      estimate = posterior_mean(posterior_update(prior_particles, record, opts));
    } else if (!record.empty()) {
      estimate = mle_estimate(record, config.prior.dim).estimate;
    }
    // Empty-record MLE: the likelihood is flat, reported as maximally mixed.

    const auto est_eig = eigendecompose(estimate);
    RiskRow row;
    row.trial = t;
    row.relative_entropy_risk = relative_entropy(truth, estimate);
    row.trace_distance = trace_distance(truth, estimate);
    row.rank_deficient = est_eig.eigenvalues.minCoeff() < tol::kSupport;
    table.rows.push_back(row);
  }

  std::vector<double> finite;
  int infinite = 0;
  for (const auto& row : table.rows) {
    if (is_finite(row.relative_entropy_risk)) {
      finite.push_back(row.relative_entropy_risk);
    } else {
      ++infinite;
    }
  }
  std::vector<double> sorted_all;
  for (const auto& row : table.rows) sorted_all.push_back(row.relative_entropy_risk);
  std::sort(sorted_all.begin(), sorted_all.end());
  const auto quantile = [&](double q) {
    const double pos = q * (sorted_all.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted_all.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    if (!is_finite(sorted_all[lo]) || !is_finite(sorted_all[hi])) {
      return sorted_all[lo];
    }
    return sorted_all[lo] * (1.0 - frac) + sorted_all[hi] * frac;
  };
  table.summary.infinite_fraction =
      static_cast<double>(infinite) / static_cast<double>(table.rows.size());
  table.summary.mean_risk =
      infinite > 0 ? kPosInf
                   : std::accumulate(finite.begin(), finite.end(), 0.0) /
                         static_cast<double>(finite.size());
  table.summary.median = quantile(0.5);
  table.summary.q25 = quantile(0.25);
  table.summary.q75 = quantile(0.75);
  return table;
}

}  // namespace hers
