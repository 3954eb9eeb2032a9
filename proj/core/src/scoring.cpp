#include "hers/scoring.hpp"

#include <cmath>
#include <sstream>

namespace hers {

void validate(const ScoringRule& rule) {
  require(rule.d > 0.0, "scoring rule scale d must be positive");
}

double hers_payoff(const ScoringRule& rule, double reported_prob) {
  validate(rule);
  require(rule.kind == ScoreKind::Hers, "hers_payoff needs a Hers rule");
  require(reported_prob >= 0.0 && reported_prob <= 1.0,
          "reported probability must lie in [0, 1]");
  if (reported_prob == 0.0) return kNegInf;
  return rule.c + rule.d * std::log(reported_prob);
}

double expected_reward(const ScoringRule& rule, const DensityMatrix& truth,
                       const DensityMatrix& report) {
  validate(rule);
  require(truth.dim() == report.dim(),
          "expected reward needs states of equal dimension");
  const auto eig = eigendecompose(report);
  const OutcomeDistribution p = born_probabilities(truth, eig.basis);

  if (rule.kind == ScoreKind::Brier) {
    double s_sq = 0.0;
    for (int i = 0; i < report.dim(); ++i) s_sq += eig.eigenvalues(i) * eig.eigenvalues(i);
    double score = 0.0;
    for (int i = 0; i < report.dim(); ++i) {
      score += p[i] * (2.0 * eig.eigenvalues(i) - s_sq);
    }
    return rule.c + rule.d * score;
  }

  double log_term = 0.0;
  for (int i = 0; i < report.dim(); ++i) {
    const double s = eig.eigenvalues(i);
    if (s < tol::kSupport) {
      if (p[i] > tol::kSupportWeight) return kNegInf;
      continue;  // 0 * ln 0 convention on negligible truth weight
    }
    if (p[i] > 0.0) log_term += p[i] * std::log(s);
  }
  return rule.c + rule.d * log_term;
}

double classical_expected_score(const ScoringRule& rule,
                                const OutcomeDistribution& truth,
                                const OutcomeDistribution& report) {
  validate(rule);
  require(truth.size() == report.size(),
          "classical score needs equal outcome counts");

  if (rule.kind == ScoreKind::Brier) {
    double q_sq = 0.0;
    for (int i = 0; i < report.size(); ++i) q_sq += report[i] * report[i];
    double score = 0.0;
    for (int i = 0; i < truth.size(); ++i) {
      score += truth[i] * (2.0 * report[i] - q_sq);
    }
    return rule.c + rule.d * score;
  }

  double log_term = 0.0;
  for (int i = 0; i < truth.size(); ++i) {
    if (truth[i] <= 0.0) continue;  // 0 ln 0 = 0
    if (report[i] == 0.0) return kNegInf;
    log_term += truth[i] * std::log(report[i]);
  }
  return rule.c + rule.d * log_term;
}

double value_function(const ScoringRule& rule, const OutcomeDistribution& p) {
  return classical_expected_score(rule, p, p);
}

double propriety_gap(const ScoringRule& rule, const DensityMatrix& truth,
                     const DensityMatrix& report) {
  const double honest = expected_reward(rule, truth, truth);
  const double reported = expected_reward(rule, truth, report);
  if (reported == kNegInf) return kPosInf;
  const double gap = honest - reported;
  // The gap is a relative entropy up to scale; cancellation can leave a
  // vanishing negative residue when report ~ truth.
  return (gap < 0.0 && gap > -1e-12) ? 0.0 : gap;
}

double ensemble_expected_reward(const ScoringRule& rule,
                                std::span<const DensityMatrix> states,
                                std::span<const double> weights,
                                const DensityMatrix& report) {
  validate(rule);
  require(!states.empty() && states.size() == weights.size(),
          "ensemble reward needs matching nonempty states and weights");
  const auto eig = eigendecompose(report);

  double s_sq = 0.0;
  if (rule.kind == ScoreKind::Brier) {
    for (int i = 0; i < report.dim(); ++i) s_sq += eig.eigenvalues(i) * eig.eigenvalues(i);
  }

  double total = 0.0;
  for (std::size_t j = 0; j < states.size(); ++j) {
    if (weights[j] <= 0.0) continue;
    require(states[j].dim() == report.dim(),
            "ensemble member dimension differs from report");
    const OutcomeDistribution p = born_probabilities(states[j], eig.basis);
    double member;
    if (rule.kind == ScoreKind::Brier) {
      member = 0.0;
      for (int i = 0; i < report.dim(); ++i) {
        member += p[i] * (2.0 * eig.eigenvalues(i) - s_sq);
      }
      member = rule.c + rule.d * member;
    } else {
      double log_term = 0.0;
      member = rule.c;
      bool violated = false;
      for (int i = 0; i < report.dim(); ++i) {
        const double s = eig.eigenvalues(i);
        if (s < tol::kSupport) {
          if (p[i] > tol::kSupportWeight) {
            violated = true;
            break;
          }
          continue;
        }
        if (p[i] > 0.0) log_term += p[i] * std::log(s);
      }
      if (violated) return kNegInf;
      member += rule.d * log_term;
    }
    total += weights[j] * member;
  }
  return total;
}

}  // namespace hers
