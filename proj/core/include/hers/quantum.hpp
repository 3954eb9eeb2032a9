#pragma once

#include <string>
#include <vector>

#include "hers/common.hpp"
#include "hers/rng.hpp"

namespace hers {

// Hermitian, positive semidefinite, unit-trace complex matrix. Validated on
// construction: hermiticity within 1e-10 (max entry deviation), |Tr - 1| <=
// 1e-10, smallest eigenvalue >= -1e-10. Rejections carry the failing check
// and the measured residual. Immutable after construction.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }
  Complex operator()(int r, int c) const { return entries_(r, c); }

  static DensityMatrix maximally_mixed(int dim);
  // |psi><psi| from a state vector (normalized first).
  static DensityMatrix pure(const Vector& psi);
  // Computational basis state |k><k|.
  static DensityMatrix basis_state(int dim, int k);
  static DensityMatrix plus_state();          // |+><+|, dim 2
  static DensityMatrix bell_state();          // |Phi+><Phi+|, dim 4
  static DensityMatrix diagonal(const RealVector& populations);

 private:
  Matrix entries_;
};

// dim orthonormal column vectors; Gram matrix checked against identity
// within 1e-10.
class MeasurementBasis {
 public:
  explicit MeasurementBasis(Matrix columns);

  int dim() const { return static_cast<int>(columns_.rows()); }
  int size() const { return static_cast<int>(columns_.cols()); }
  const Matrix& matrix() const { return columns_; }
  Vector vector(int i) const { return columns_.col(i); }

  static MeasurementBasis computational(int dim);

 private:
  Matrix columns_;
};

// Positive operator-valued measure: PSD effects summing to the identity
// within 1e-10.
class Povm {
 public:
  explicit Povm(std::vector<Matrix> effects);

  int dim() const { return static_cast<int>(effects_.front().rows()); }
  int size() const { return static_cast<int>(effects_.size()); }
  const Matrix& effect(int i) const { return effects_[i]; }
  const std::vector<Matrix>& effects() const { return effects_; }

  static Povm from_basis(const MeasurementBasis& basis);
  // Symmetric informationally complete qubit POVM (tetrahedron effects).
  static Povm sic_qubit();

 private:
  std::vector<Matrix> effects_;
};

// Probability vector over measurement outcomes. Entries outside
// [-1e-12, 1 + 1e-12] are rejected; entries inside are clamped to [0, 1];
// the clamped sum must be within 1e-10 of 1.
class OutcomeDistribution {
 public:
  explicit OutcomeDistribution(std::vector<double> probs);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

  static OutcomeDistribution uniform(int n);

 private:
  std::vector<double> probs_;
};

struct Eigendecomposition {
  RealVector eigenvalues;  // descending, clamped to >= 0
  MeasurementBasis basis;  // column i pairs with eigenvalues[i]
};

// Eigenvalues sorted descending and clamped to >= 0 (values in [-1e-10, 0)
// are numerical noise by the state invariant). Throws NumericalError if the
// solver fails to converge.
Eigendecomposition eigendecompose(const DensityMatrix& state);

// H(rho) = -sum lambda ln lambda in nats, 0 ln 0 = 0; result in [0, ln dim].
double von_neumann_entropy(const DensityMatrix& state);

// S(truth || report) = Tr(rho ln rho - rho ln sigma) in nats. Returns +inf
// when a report eigenvalue below 1e-12 carries truth weight above 1e-10
// (support violation). Never negative.
double relative_entropy(const DensityMatrix& truth, const DensityMatrix& report);

OutcomeDistribution born_probabilities(const DensityMatrix& state,
                                       const MeasurementBasis& basis);
OutcomeDistribution born_probabilities(const DensityMatrix& state,
                                       const Povm& povm);

// Channel that removes off-diagonal elements in the given basis. Idempotent,
// trace preserving; the identity map when the basis diagonalizes the state.
DensityMatrix dephase(const DensityMatrix& state, const MeasurementBasis& basis);

// Majorization partial order on probability vectors: true iff every prefix
// sum of a (sorted descending) is >= the corresponding prefix sum of b minus
// 1e-10. Inputs must have equal length and each sum to 1 within 1e-9.
bool majorizes(std::vector<double> a, std::vector<double> b);

// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2 in [0, 1]; reduces to
// <psi|a|psi> when b = |psi><psi|.
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

// Kronecker power state^(x n). Throws std::length_error when dim^n exceeds
// max_dim (default 256).
DensityMatrix tensor_power(const DensityMatrix& state, int n, int max_dim = 256);

// Plumbing shared by several modules.
Matrix kron(const Matrix& a, const Matrix& b);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
double frobenius_distance(const DensityMatrix& a, const DensityMatrix& b);

// Ginibre matrix G with i.i.d. standard complex Gaussian entries.
Matrix random_ginibre(int dim, CounterRng& rng);
// rho = GG^dagger / Tr(GG^dagger): the Hilbert-Schmidt measure.
DensityMatrix random_density_matrix(int dim, CounterRng& rng);
// Haar-distributed unitary (QR of a Ginibre matrix, phases fixed).
Matrix random_unitary(int dim, CounterRng& rng);
MeasurementBasis random_basis(int dim, CounterRng& rng);
DensityMatrix random_pure_state(int dim, CounterRng& rng);
Matrix random_hermitian(int dim, CounterRng& rng);

}  // namespace hers
