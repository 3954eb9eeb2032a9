#pragma once

#include <span>

#include "hers/quantum.hpp"

namespace hers {

enum class ScoreKind { Hers, Brier };

// Strictly proper scoring rule applied to outcome distributions. Hers pays
// c + d ln(s_i) on outcome i; Brier pays c + d (2 q_i - sum_j q_j^2). The
// scale d must be positive (d = 0 rewards every report equally).
struct ScoringRule {
  ScoreKind kind = ScoreKind::Hers;
  double c = 0.0;
  double d = 1.0;
};

inline ScoringRule hers_rule(double c = 0.0, double d = 1.0) {
  return {ScoreKind::Hers, c, d};
}
inline ScoringRule brier_rule(double c = 0.0, double d = 1.0) {
  return {ScoreKind::Brier, c, d};
}

void validate(const ScoringRule& rule);

// One payout event: which outcome fired and what it paid. payoff is -inf
// exactly when the reported probability for the observed outcome was 0.
struct RewardOutcome {
  int outcome_index = 0;
  double payoff = 0.0;
};

// c + d ln(s); -inf at s = 0. Rejects s outside [0, 1] and non-Hers rules.
double hers_payoff(const ScoringRule& rule, double reported_prob);

// Expected payout when Bob measures in the report's eigenbasis: the Born
// probabilities of truth against the report eigenvalues. Equals
// c - d [H(truth) + S(truth || report)] (asserted by tests); -inf on a
// support violation.
double expected_reward(const ScoringRule& rule, const DensityMatrix& truth,
                       const DensityMatrix& report);

// Classical average score sum_i p_i R_i(q) for the rule's payoff function.
double classical_expected_score(const ScoringRule& rule,
                                const OutcomeDistribution& truth,
                                const OutcomeDistribution& report);

// G(p) = expected score of an honest report, classical_expected_score(p, p).
// Strictly convex for both rules; equals -H(p) for Hers(0, 1).
double value_function(const ScoringRule& rule, const OutcomeDistribution& p);

// Honest expected reward minus reported expected reward; >= 0, zero iff the
// report equals the truth, +inf on a support violation. For Hers this is
// d * S(truth || report).
double propriety_gap(const ScoringRule& rule, const DensityMatrix& truth,
                     const DensityMatrix& report);

// Ensemble-averaged reward sum_j w_j R(rho_j : report); the direct route the
// posterior-mean optimality checks compare against.
double ensemble_expected_reward(const ScoringRule& rule,
                                std::span<const DensityMatrix> states,
                                std::span<const double> weights,
                                const DensityMatrix& report);

}  // namespace hers
