#include <doctest.h>

#include <cmath>

#include "hers/quantum.hpp"
#include "test_helpers.hpp"

using namespace hers;
using namespace hers::test;

TEST_CASE("density matrix invariants are enforced with residuals") {
  Matrix bad_trace(2, 2);
  bad_trace << Complex(0.6, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0),
      Complex(0.3, 0.0);
  CHECK_THROWS_WITH_AS(DensityMatrix{bad_trace},
                       doctest::Contains("trace differs from 1"),
                       std::invalid_argument);

  Matrix non_hermitian(2, 2);
  non_hermitian << Complex(0.5, 0.0), Complex(0.2, 0.0), Complex(-0.2, 0.0),
      Complex(0.5, 0.0);
  CHECK_THROWS_WITH_AS(DensityMatrix{non_hermitian},
                       doctest::Contains("not Hermitian"), std::invalid_argument);

  Matrix negative(2, 2);
  negative << Complex(1.2, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0),
      Complex(-0.2, 0.0);
  CHECK_THROWS_WITH_AS(DensityMatrix{negative},
                       doctest::Contains("positive semidefinite"),
                       std::invalid_argument);

  // Eigenvalue in [-1e-10, 0) is numerical noise, accepted.
  Matrix noisy(2, 2);
  noisy << Complex(1.0 + 5e-11, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0),
      Complex(-5e-11, 0.0);
  CHECK_NOTHROW(DensityMatrix{noisy});
}

TEST_CASE("eigendecompose: frozen examples and reconstruction") {
  const auto mixed = eigendecompose(DensityMatrix::maximally_mixed(2));
  CHECK(mixed.eigenvalues(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mixed.eigenvalues(1) == doctest::Approx(0.5).epsilon(1e-12));

  const auto pure = eigendecompose(DensityMatrix::basis_state(2, 0));
  CHECK(pure.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pure.eigenvalues(1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(pure.basis.vector(0)(0)) == doctest::Approx(1.0).epsilon(1e-10));

  const auto mean = eigendecompose(mean_state_example());
  CHECK(mean.eigenvalues(0) ==
        doctest::Approx(mean_state_top_eigenvalue()).epsilon(1e-12));
  CHECK(mean.eigenvalues(1) ==
        doctest::Approx(mean_state_bottom_eigenvalue()).epsilon(1e-12));
  CHECK(mean.eigenvalues(0) == doctest::Approx(0.853553).epsilon(1e-6));

  CounterRng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 2 + static_cast<int>(rng.next_below(3));
    const DensityMatrix rho = random_density_matrix(dim, rng);
    const auto eig = eigendecompose(rho);
    Matrix rebuilt = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
      const Vector v = eig.basis.vector(i);
      rebuilt += eig.eigenvalues(i) * (v * v.adjoint()).eval();
    }
    CHECK((rebuilt - rho.matrix()).norm() < 1e-9);
    for (int i = 0; i + 1 < dim; ++i) {
      CHECK(eig.eigenvalues(i) >= eig.eigenvalues(i + 1));
    }
    CHECK(eig.eigenvalues.minCoeff() >= 0.0);
  }
}

TEST_CASE("von Neumann entropy: frozen values") {
  CHECK(von_neumann_entropy(DensityMatrix::basis_state(2, 0)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(2)) ==
        doctest::Approx(kLn2).epsilon(1e-12));

  // Oracle: -sum lambda ln lambda on the closed-form eigenvalues.
  const double oracle = shannon_entropy(
      {mean_state_top_eigenvalue(), mean_state_bottom_eigenvalue()});
  CHECK(oracle == doctest::Approx(0.4164955306996875).epsilon(1e-12));
  CHECK(von_neumann_entropy(mean_state_example()) ==
        doctest::Approx(oracle).epsilon(1e-12));

  CounterRng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + static_cast<int>(rng.next_below(3));
    const double h = von_neumann_entropy(random_density_matrix(dim, rng));
    CHECK(h >= 0.0);
    CHECK(h <= std::log(static_cast<double>(dim)) + 1e-12);
  }
}

TEST_CASE("relative entropy: frozen values and support handling") {
  const DensityMatrix zero = DensityMatrix::basis_state(2, 0);
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
  CHECK(relative_entropy(zero, mixed) == doctest::Approx(kLn2).epsilon(1e-12));
  CHECK(relative_entropy(mixed, zero) == kPosInf);
  CHECK(relative_entropy(zero, zero) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(relative_entropy(zero, DensityMatrix::maximally_mixed(3)),
                  std::invalid_argument);
}

TEST_CASE("relative entropy: nonnegative, zero iff equal (property)") {
  CounterRng rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const int dim = 2 + static_cast<int>(rng.next_below(3));
    const DensityMatrix rho = random_density_matrix(dim, rng);
    const DensityMatrix sigma = random_density_matrix(dim, rng);
    CHECK(relative_entropy(rho, rho) <= 1e-12);
    const double s = relative_entropy(rho, sigma);
    CHECK(s >= 0.0);
    if (frobenius_distance(rho, sigma) > 1e-9) CHECK(s > 0.0);
  }
}

TEST_CASE("relative entropy: tensor additivity (property)") {
  CounterRng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = depolarize(random_density_matrix(2, rng), 0.01);
    const DensityMatrix sigma = depolarize(random_density_matrix(2, rng), 0.01);
    const double single = relative_entropy(rho, sigma);
    const double doubled =
        relative_entropy(tensor_power(rho, 2), tensor_power(sigma, 2));
    CHECK(doubled == doctest::Approx(2.0 * single).epsilon(1e-8));
  }
}

TEST_CASE("Born probabilities: bases and POVMs") {
  const auto comp = MeasurementBasis::computational(2);
  const auto p0 = born_probabilities(DensityMatrix::basis_state(2, 0), comp);
  CHECK(p0[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p0[1] == doctest::Approx(0.0).epsilon(1e-12));

  const auto plus = born_probabilities(DensityMatrix::plus_state(), comp);
  CHECK(plus[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(plus[1] == doctest::Approx(0.5).epsilon(1e-12));

  CounterRng rng(15);
  const auto any_basis = random_basis(2, rng);
  const auto mixed = born_probabilities(DensityMatrix::maximally_mixed(2), any_basis);
  CHECK(mixed[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mixed[1] == doctest::Approx(0.5).epsilon(1e-12));

  const auto sic = born_probabilities(DensityMatrix::maximally_mixed(2),
                                      Povm::sic_qubit());
  for (int i = 0; i < 4; ++i) CHECK(sic[i] == doctest::Approx(0.25).epsilon(1e-12));

  CHECK_THROWS_AS(
      born_probabilities(DensityMatrix::maximally_mixed(3), comp),
      std::invalid_argument);
}

TEST_CASE("dephase: examples and channel laws") {
  const auto comp = MeasurementBasis::computational(2);
  const DensityMatrix dephased = dephase(DensityMatrix::plus_state(), comp);
  CHECK(frobenius_distance(dephased, DensityMatrix::maximally_mixed(2)) < 1e-12);

  CounterRng rng(16);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 2 + static_cast<int>(rng.next_below(3));
    const DensityMatrix rho = random_density_matrix(dim, rng);
    const MeasurementBasis basis = random_basis(dim, rng);

    const DensityMatrix once = dephase(rho, basis);
    const DensityMatrix twice = dephase(once, basis);
    CHECK(frobenius_distance(once, twice) < 1e-10);
    CHECK(std::abs(once.matrix().trace().real() - 1.0) < 1e-10);

    // Diagonal equals the Born distribution.
    const OutcomeDistribution p = born_probabilities(rho, basis);
    const Matrix in_basis = basis.matrix().adjoint() * once.matrix() * basis.matrix();
    for (int i = 0; i < dim; ++i) {
      CHECK(std::real(in_basis(i, i)) == doctest::Approx(p[i]).epsilon(1e-10));
    }

    // Identity map in the state's own eigenbasis.
    const auto eig = eigendecompose(rho);
    CHECK(frobenius_distance(dephase(rho, eig.basis), rho) < 1e-9);

    // Entropy never decreases under dephasing.
    CHECK(von_neumann_entropy(once) >= von_neumann_entropy(rho) - 1e-10);
  }

  const DensityMatrix mixed3 = DensityMatrix::maximally_mixed(3);
  CHECK(frobenius_distance(dephase(mixed3, random_basis(3, rng)), mixed3) < 1e-12);
}

TEST_CASE("majorization: examples and Schur property") {
  CHECK(majorizes({1.0, 0.0}, {0.5, 0.5}));
  CHECK_FALSE(majorizes({0.5, 0.5}, {1.0, 0.0}));
  CHECK_THROWS_AS(majorizes({1.0, 0.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(majorizes({0.7, 0.7}, {1.0, 0.4}), std::invalid_argument);

  CounterRng rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const int dim = 2 + static_cast<int>(rng.next_below(3));
    const DensityMatrix rho = random_density_matrix(dim, rng);
    const MeasurementBasis basis = random_basis(dim, rng);
    const auto eig = eigendecompose(rho);
    std::vector<double> eigenvalues(eig.eigenvalues.data(),
                                    eig.eigenvalues.data() + dim);
    CHECK(majorizes(eigenvalues, born_probabilities(rho, basis).probs()));
  }
}

TEST_CASE("fidelity: frozen values and symmetry") {
  const DensityMatrix zero = DensityMatrix::basis_state(2, 0);
  const DensityMatrix one = DensityMatrix::basis_state(2, 1);
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
  CHECK(fidelity(zero, zero) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fidelity(zero, one) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fidelity(zero, mixed) == doctest::Approx(0.5).epsilon(1e-12));

  CounterRng rng(18);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 2 + static_cast<int>(rng.next_below(3));
    const DensityMatrix a = random_density_matrix(dim, rng);
    const DensityMatrix b = random_density_matrix(dim, rng);
    CHECK(fidelity(a, b) == doctest::Approx(fidelity(b, a)).epsilon(1e-9));
    CHECK(fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-9));

    // Pure second argument reduces to <psi| a |psi>.
    const DensityMatrix psi = random_pure_state(dim, rng);
    const double direct = std::real((psi.matrix() * a.matrix()).trace());
    CHECK(fidelity(a, psi) == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("tensor power: examples and cap") {
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
  CHECK(frobenius_distance(tensor_power(mixed, 1), mixed) == 0.0);
  CHECK(frobenius_distance(tensor_power(mixed, 2),
                           DensityMatrix::maximally_mixed(4)) < 1e-12);
  CHECK(std::abs(tensor_power(mixed, 8).matrix().trace().real() - 1.0) < 1e-10);
  CHECK_THROWS_AS(tensor_power(mixed, 9), std::length_error);
  CHECK_THROWS_AS(tensor_power(mixed, 0), std::invalid_argument);
}

TEST_CASE("outcome distribution clamping and validation") {
  const OutcomeDistribution d({0.5, 0.5 + 5e-13, -5e-13});
  CHECK(d[2] == 0.0);
  CHECK(d[1] <= 1.0);
  CHECK_THROWS_AS(OutcomeDistribution({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(OutcomeDistribution({1.2, -0.2}), std::invalid_argument);
}

TEST_CASE("measurement basis and POVM validation") {
  Matrix skew(2, 2);
  skew << Complex(1.0, 0.0), Complex(0.5, 0.0), Complex(0.0, 0.0),
      Complex(1.0, 0.0);
  CHECK_THROWS_AS(MeasurementBasis{skew}, std::invalid_argument);

  // Effects summing past the identity are rejected.
  std::vector<Matrix> effects = {Matrix::Identity(2, 2), 0.5 * Matrix::Identity(2, 2)};
  CHECK_THROWS_AS(Povm{effects}, std::invalid_argument);

  CounterRng rng(19);
  const Matrix u = random_unitary(3, rng);
  CHECK((u * u.adjoint() - Matrix::Identity(3, 3)).norm() < 1e-12);
  CHECK_NOTHROW(Povm::from_basis(random_basis(3, rng)));
}
