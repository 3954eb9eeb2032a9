#include <doctest.h>

#include <cmath>

#include "hers/perturbation.hpp"
#include "test_helpers.hpp"

using namespace hers;
using namespace hers::test;

namespace {

PerturbationCurve random_full_rank_curve(int dim, CounterRng& rng,
                                         bool equal_constants) {
  RealVector populations(dim);
  double sum = 0.0;
  for (int i = 0; i < dim; ++i) {
    populations(i) = 0.05 + rng.next_double();
    sum += populations(i);
  }
  populations /= sum;
  RealVector constants(dim);
  if (equal_constants) {
    const double c = 2.0 * rng.next_double() - 1.0;
    constants.setConstant(c);
  } else {
    for (int i = 0; i < dim; ++i) constants(i) = 2.0 * rng.next_double() - 1.0;
  }
  // Unit-scale generator: the derivative tolerances assume an order-one
  // parametrization (rescaling X only rescales t).
  Matrix generator = random_hermitian(dim, rng);
  generator /= generator.norm();
  return PerturbationCurve(populations, generator, constants);
}

}  // namespace

TEST_CASE("curve validation") {
  RealVector populations(2);
  populations << 0.5, 0.5;
  RealVector constants(2);
  constants << 0.0, 0.0;
  Matrix skew = Matrix::Zero(2, 2);
  skew(0, 1) = Complex(0.0, 1.0);
  skew(1, 0) = Complex(0.0, 1.0);  // not Hermitian: should be -i
  CHECK_THROWS_WITH_AS(PerturbationCurve(populations, skew, constants),
                       doctest::Contains("not Hermitian"), std::invalid_argument);

  RealVector bad_sum(2);
  bad_sum << 0.7, 0.7;
  CHECK_THROWS_AS(PerturbationCurve(bad_sum, Matrix::Zero(2, 2), constants),
                  std::invalid_argument);
}

TEST_CASE("sigma_at: frozen examples") {
  RealVector populations(2);
  populations << 0.75, 0.25;
  RealVector constants = RealVector::Zero(2);

  // t = 0 and X = 0 both leave the state alone.
  const PerturbationCurve still(populations, Matrix::Zero(2, 2), constants);
  CHECK(frobenius_distance(sigma_at(still, 0.7), still.state()) < 1e-12);

  // X = Pauli-Y / 2 for a half turn swaps the populations.
  Matrix half_y = Matrix::Zero(2, 2);
  half_y(0, 1) = Complex(0.0, -0.5);
  half_y(1, 0) = Complex(0.0, 0.5);
  const PerturbationCurve spin(populations, half_y, constants);
  CHECK(frobenius_distance(sigma_at(spin, 0.0), spin.state()) < 1e-12);
  RealVector swapped(2);
  swapped << 0.25, 0.75;
  constexpr double kPi = 3.141592653589793238462643383279502884;
  CHECK(frobenius_distance(sigma_at(spin, kPi),
                           DensityMatrix::diagonal(swapped)) < 1e-12);

  // Conjugation preserves the spectrum.
  CounterRng rng(62);
  const PerturbationCurve curve = random_full_rank_curve(3, rng, false);
  const auto eig = eigendecompose(sigma_at(curve, 0.37));
  RealVector sorted = curve.populations();
  std::sort(sorted.data(), sorted.data() + 3, std::greater<>());
  for (int i = 0; i < 3; ++i) {
    CHECK(eig.eigenvalues(i) == doctest::Approx(sorted(i)).epsilon(1e-9));
  }
}

TEST_CASE("g vanishes at t = 0 and reduces to relative entropy for zero offsets") {
  CounterRng rng(63);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 2 + static_cast<int>(rng.next_below(3));
    PerturbationCurve curve = random_full_rank_curve(dim, rng, false);
    CHECK(g_function(curve, 0.0) == doctest::Approx(0.0).epsilon(1e-12));

    const PerturbationCurve zero_offsets(curve.populations(), curve.generator(),
                                         RealVector::Zero(dim));
    const double t = 0.4 * rng.next_double();
    const double g = g_function(zero_offsets, t);
    CHECK(g >= -1e-12);
    CHECK(g == doctest::Approx(relative_entropy(zero_offsets.state(),
                                                sigma_at(zero_offsets, t)))
                   .epsilon(1e-10));
  }
}

TEST_CASE("curvature: commuting generator gives zero") {
  RealVector populations(3);
  populations << 0.5, 0.3, 0.2;
  RealVector constants(3);
  constants << 0.4, -0.7, 2.0;
  Matrix diagonal = Matrix::Zero(3, 3);
  diagonal(0, 0) = 1.3;
  diagonal(1, 1) = -0.2;
  diagonal(2, 2) = 0.5;
  const PerturbationCurve curve(populations, diagonal, constants);
  CHECK(second_derivative_analytic(curve) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(second_derivative_numeric(curve) == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("curvature: equal offsets never negative (property)") {
  CounterRng rng(64);
  for (int trial = 0; trial < 500; ++trial) {
    const int dim = 2 + static_cast<int>(rng.next_below(3));
    const PerturbationCurve curve = random_full_rank_curve(dim, rng, true);
    CHECK(second_derivative_analytic(curve) >= -1e-10);
  }
}

TEST_CASE("curvature: analytic matches finite differences (property)") {
  CounterRng rng(65);
  for (int trial = 0; trial < 500; ++trial) {
    const int dim = 2 + static_cast<int>(rng.next_below(3));
    const PerturbationCurve curve = random_full_rank_curve(dim, rng, trial % 2 == 0);
    const double analytic = second_derivative_analytic(curve);
    const double numeric = second_derivative_numeric(curve);
    CHECK(std::abs(analytic - numeric) <=
          std::max(1e-4, 1e-3 * std::abs(analytic)));
  }
}

TEST_CASE("first derivative vanishes at t = 0 (property)") {
  CounterRng rng(66);
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + static_cast<int>(rng.next_below(3));
    const PerturbationCurve curve = random_full_rank_curve(dim, rng, false);
    CHECK(std::abs(first_derivative_numeric(curve, 1e-3)) <= 1e-6);
  }
}

TEST_CASE("finite-difference step domain") {
  CounterRng rng(67);
  const PerturbationCurve curve = random_full_rank_curve(2, rng, true);
  CHECK_THROWS_AS(second_derivative_numeric(curve, 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(second_derivative_numeric(curve, 0.5), std::invalid_argument);
}

TEST_CASE("rank-deficient populations reject the analytic curvature") {
  RealVector populations(3);
  populations << 0.5, 0.5, 0.0;
  const PerturbationCurve curve(populations, Matrix::Zero(3, 3),
                                RealVector::Zero(3));
  CHECK_THROWS_AS(second_derivative_analytic(curve), std::invalid_argument);
}

TEST_CASE("construct_counterexample: canonical instance") {
  const double c2 = 2.0 * kLn2;
  const PerturbationCurve curve = construct_counterexample(0.0, c2);
  CHECK(curve.populations()(0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(curve.populations()(1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(curve.populations()(2) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(curve.constants()(0) == 0.0);
  CHECK(curve.constants()(1) == c2);

  // Curvature is -ln(2)/2 here: 2 (r1 - r2)(ln r1 + c1 - ln r2 - c2).
  const double curvature = second_derivative_analytic(curve);
  CHECK(curvature == doctest::Approx(-0.5 * kLn2).epsilon(1e-12));
  CHECK(curvature < 0.0);

  // And g dips negative on (0, 0.1]; oracle value at t = 0.05.
  CHECK(g_function(curve, 0.05) ==
        doctest::Approx(-0.0004328560940098749).epsilon(1e-6));
  double min_g = 0.0;
  for (int k = 1; k <= 100; ++k) {
    min_g = std::min(min_g, g_function(curve, 0.001 * k));
  }
  CHECK(min_g < 0.0);
}

TEST_CASE("construct_counterexample: preconditions") {
  CHECK_THROWS_AS(construct_counterexample(0.3, 0.3), std::invalid_argument);
  // c = -2 pushes r above 1/2.
  CHECK_THROWS_AS(construct_counterexample(-2.0, 0.5), std::invalid_argument);
  // Large offsets push r3 toward 1 but keep r1, r2 positive: still feasible.
  CHECK_NOTHROW(construct_counterexample(6.0, 8.0));
}

TEST_CASE("construct_counterexample: negative curvature for random feasible pairs") {
  CounterRng rng(68);
  for (int trial = 0; trial < 100; ++trial) {
    double c1 = 4.0 * rng.next_double();
    double c2 = 4.0 * rng.next_double();
    if (std::abs(c1 - c2) < 0.05) c2 += 0.1;
    const PerturbationCurve curve = construct_counterexample(c1, c2);
    CHECK(second_derivative_analytic(curve) < 0.0);
  }
}

TEST_CASE("verify_constant_equality: equal offsets clean, unequal violated") {
  const VerificationReport report = verify_constant_equality(3, 50, 69);
  CHECK(report.passed);
  CHECK(report.equal_violation_count == 0);
  CHECK(report.equal_min_second_derivative >= -1e-10);
  CHECK(report.unequal_failure_count == 0);
  CHECK(report.unequal_trials == 50);
  REQUIRE(!report.witnesses.empty());
  CHECK(report.witnesses.front().second_derivative < 0.0);
  CHECK(report.witnesses.front().witness_g < 0.0);

  const VerificationReport wide = verify_constant_equality(4, 20, 70);
  CHECK(wide.passed);
}

TEST_CASE("verify_constant_equality rejects two-level systems") {
  CHECK_THROWS_WITH_AS(verify_constant_equality(2, 10, 0),
                       doctest::Contains(">= 3"), std::invalid_argument);
}
