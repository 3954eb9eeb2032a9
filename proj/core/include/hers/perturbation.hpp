#pragma once

#include <cstdint>
#include <vector>

#include "hers/quantum.hpp"

namespace hers {

// Unitary perturbation of a diagonal state: sigma(t) = U(t) rho U(t)^dagger
// with U(t) = exp(iXt). Stores the populations r_i in index order (the state
// is diagonal in the stored basis), one reward offset C_i per index, and the
// Hermitian generator X. The propriety deficit along the curve is
//   g(t) = S(rho || sigma(t)) + sum_i C_i [r_i - p_i(t)],
// p_i(t) = Tr(rho U(t) |e_i><e_i| U(t)^dagger): honest expected reward minus
// the reward for reporting sigma(t) under payoffs D ln s + C_i.
class PerturbationCurve {
 public:
  PerturbationCurve(RealVector populations, Matrix generator, RealVector constants);

  int dim() const { return static_cast<int>(populations_.size()); }
  const RealVector& populations() const { return populations_; }
  const Matrix& generator() const { return generator_; }
  const RealVector& constants() const { return constants_; }
  DensityMatrix state() const;  // diag(populations)
  bool full_rank() const;

 private:
  RealVector populations_;
  Matrix generator_;
  RealVector constants_;
};

// exp(iXt) rho exp(-iXt); the spectrum is that of rho.
DensityMatrix sigma_at(const PerturbationCurve& curve, double t);

// g(t) as above; +inf when the rotated support no longer covers rho's.
double g_function(const PerturbationCurve& curve, double t);

// Closed form of the curvature at t = 0:
//   2 Tr([X, rho] (ln rho + B) X),   B = diag(C_i).
// Requires full-rank populations (ln rho must be finite).
double second_derivative_analytic(const PerturbationCurve& curve);

// Central second difference (g(h) - 2 g(0) + g(-h)) / h^2, h in [1e-5, 1e-2].
double second_derivative_numeric(const PerturbationCurve& curve, double h = 1e-3);

// First central difference (g(h) - g(-h)) / (2h); vanishes at t = 0.
double first_derivative_numeric(const PerturbationCurve& curve, double h = 1e-3);

// Three-level curve witnessing that unequal offsets break propriety:
// r_j = exp(-(c_j + 2 ln 2) / 2) for j = 1, 2 and r_3 = 1 - r_1 - r_2, with
// constants (c1, c2, 0) and the generator a Pauli-X on the first two levels.
// The curvature at 0 is then strictly negative, so g dips below zero for
// small t. Rejects c1 = c2 and parameter pairs whose populations leave
// (0, 1/2] x (0, 1/2] x [0, 1).
PerturbationCurve construct_counterexample(double c1, double c2);

struct CurveWitness {
  RealVector populations;
  RealVector constants;
  Matrix generator;
  double second_derivative = 0.0;
  double witness_t = 0.0;  // scanned t with g(witness_t) < 0 (counterexamples)
  double witness_g = 0.0;
};

struct VerificationReport {
  int dim = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  // Equal offsets: curvature must stay >= -1e-10 on every sampled curve.
  int equal_violation_count = 0;
  double equal_min_second_derivative = 0.0;
  // Unequal offsets: a negative-curvature curve must be found per trial.
  int unequal_trials = 0;
  int unequal_failure_count = 0;
  std::vector<CurveWitness> witnesses;  // one per successful unequal trial (capped)
  bool passed = false;
};

// Numerical check that per-outcome reward offsets must agree: with equal
// offsets no sampled (rho, X) gives negative curvature; with unequal offsets
// the constructed curve (plus a random search over block-supported X when
// needed) exhibits one. Requires dim >= 3: with two outcomes the argument
// has no room to separate the offsets.
VerificationReport verify_constant_equality(int dim, int trials, std::uint64_t seed);

}  // namespace hers
