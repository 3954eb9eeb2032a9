#include "hers/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace hers {
namespace {

std::string residual_message(const std::string& check, double residual,
                             double limit) {
  std::ostringstream os;
  os << check << ": residual " << residual << " exceeds tolerance " << limit;
  return os.str();
}

Eigen::SelfAdjointEigenSolver<Matrix> solve_hermitian(const Matrix& m,
                                                      bool with_vectors) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      m, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian eigensolver failed to converge");
  }
  return solver;
}

}  // namespace

DensityMatrix::DensityMatrix(Matrix entries) {
  require(entries.rows() == entries.cols() && entries.rows() >= 1,
          "density matrix must be square with dim >= 1");
  const double herm = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol::kHermitian) {
    throw std::invalid_argument(
        residual_message("state not Hermitian", herm, tol::kHermitian));
  }
  const double trace_dev = std::abs(entries.trace() - Complex(1.0, 0.0));
  if (trace_dev > tol::kTrace) {
    throw std::invalid_argument(
        residual_message("state trace differs from 1", trace_dev, tol::kTrace));
  }
  // Work with the exactly Hermitian part from here on.
  entries_ = 0.5 * (entries + entries.adjoint());
  const auto solver = solve_hermitian(entries_, false);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -tol::kPsd) {
    throw std::invalid_argument(residual_message(
        "state not positive semidefinite (min eigenvalue)", -min_eig, tol::kPsd));
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  require(dim >= 1, "dim must be >= 1");
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  require(psi.size() >= 1, "state vector must be nonempty");
  const double norm = psi.norm();
  require(norm > 0.0, "state vector must be nonzero");
  const Vector unit = psi / norm;
  return DensityMatrix(unit * unit.adjoint());
}

DensityMatrix DensityMatrix::basis_state(int dim, int k) {
  require(dim >= 1 && k >= 0 && k < dim, "basis state index out of range");
  Vector psi = Vector::Zero(dim);
  psi(k) = 1.0;
  return pure(psi);
}

DensityMatrix DensityMatrix::plus_state() {
  Vector psi(2);
  psi << 1.0, 1.0;
  return pure(psi);
}

DensityMatrix DensityMatrix::bell_state() {
  Vector psi = Vector::Zero(4);
  psi(0) = 1.0;
  psi(3) = 1.0;
  return pure(psi);
}

DensityMatrix DensityMatrix::diagonal(const RealVector& populations) {
  Matrix m = Matrix::Zero(populations.size(), populations.size());
  for (Eigen::Index i = 0; i < populations.size(); ++i) m(i, i) = populations(i);
  return DensityMatrix(std::move(m));
}

MeasurementBasis::MeasurementBasis(Matrix columns) {
  require(columns.rows() == columns.cols() && columns.rows() >= 1,
          "basis must hold dim orthonormal vectors of length dim");
  const Matrix gram = columns.adjoint() * columns;
  const double dev =
      (gram - Matrix::Identity(columns.cols(), columns.cols())).cwiseAbs().maxCoeff();
  if (dev > tol::kGram) {
    throw std::invalid_argument(
        residual_message("basis not orthonormal (Gram deviation)", dev, tol::kGram));
  }
  columns_ = std::move(columns);
}

MeasurementBasis MeasurementBasis::computational(int dim) {
  return MeasurementBasis(Matrix::Identity(dim, dim));
}

Povm::Povm(std::vector<Matrix> effects) {
  require(!effects.empty(), "POVM needs at least one effect");
  const Eigen::Index d = effects.front().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& e : effects) {
    require(e.rows() == d && e.cols() == d, "POVM effects must share one dimension");
    const double herm = (e - e.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol::kHermitian) {
      throw std::invalid_argument(
          residual_message("POVM effect not Hermitian", herm, tol::kHermitian));
    }
    const auto solver = solve_hermitian(e, false);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -tol::kPsd) {
      throw std::invalid_argument(residual_message(
          "POVM effect not positive semidefinite", -min_eig, tol::kPsd));
    }
    sum += e;
  }
  const double completeness = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (completeness > tol::kGram) {
    throw std::invalid_argument(residual_message(
        "POVM effects do not sum to the identity", completeness, tol::kGram));
  }
  effects_ = std::move(effects);
}

Povm Povm::from_basis(const MeasurementBasis& basis) {
  std::vector<Matrix> effects;
  effects.reserve(basis.size());
  for (int i = 0; i < basis.size(); ++i) {
    const Vector v = basis.vector(i);
    effects.push_back(v * v.adjoint());
  }
  return Povm(std::move(effects));
}

Povm Povm::sic_qubit() {
  const double s = 1.0 / std::sqrt(3.0);
  const double axes[4][3] = {
      {s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
  std::vector<Matrix> effects;
  for (const auto& a : axes) {
    Matrix e(2, 2);
    e(0, 0) = Complex(1.0 + a[2], 0.0);
    e(0, 1) = Complex(a[0], -a[1]);
    e(1, 0) = Complex(a[0], a[1]);
    e(1, 1) = Complex(1.0 - a[2], 0.0);
    effects.push_back(0.25 * e);
  }
  return Povm(std::move(effects));
}

OutcomeDistribution::OutcomeDistribution(std::vector<double> probs) {
  require(!probs.empty(), "outcome distribution must be nonempty");
  double sum = 0.0;
  for (double& p : probs) {
    if (p < -tol::kProbEntry || p > 1.0 + tol::kProbEntry) {
      std::ostringstream os;
      os << "outcome probability " << p << " outside [0, 1] beyond tolerance "
         << tol::kProbEntry;
      throw std::invalid_argument(os.str());
    }
    p = std::clamp(p, 0.0, 1.0);
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol::kProbSum) {
    throw std::invalid_argument(residual_message(
        "outcome probabilities do not sum to 1", std::abs(sum - 1.0), tol::kProbSum));
  }
  probs_ = std::move(probs);
}

OutcomeDistribution OutcomeDistribution::uniform(int n) {
  require(n >= 1, "uniform distribution needs n >= 1");
  return OutcomeDistribution(std::vector<double>(n, 1.0 / n));
}

Eigendecomposition eigendecompose(const DensityMatrix& state) {
  const auto solver = solve_hermitian(state.matrix(), true);
  const int d = state.dim();
  RealVector values(d);
  Matrix vectors(d, d);
  // Eigen returns ascending order; flip to descending and clamp noise.
  for (int i = 0; i < d; ++i) {
    values(i) = std::max(solver.eigenvalues()(d - 1 - i), 0.0);
    vectors.col(i) = solver.eigenvectors().col(d - 1 - i);
  }
  return Eigendecomposition{std::move(values), MeasurementBasis(std::move(vectors))};
}

double von_neumann_entropy(const DensityMatrix& state) {
  const auto eig = eigendecompose(state);
  double h = 0.0;
  for (int i = 0; i < state.dim(); ++i) {
    const double lambda = eig.eigenvalues(i);
    if (lambda > 0.0) h -= lambda * std::log(lambda);
  }
  return std::clamp(h, 0.0, std::log(static_cast<double>(state.dim())));
}

double relative_entropy(const DensityMatrix& truth, const DensityMatrix& report) {
  require(truth.dim() == report.dim(),
          "relative entropy needs states of equal dimension");
  const auto report_eig = eigendecompose(report);
  // Tr(rho ln sigma) accumulated in sigma's eigenbasis; a dead report
  // direction that carries truth weight is a support violation.
  double cross = 0.0;
  for (int i = 0; i < report.dim(); ++i) {
    const Vector v = report_eig.basis.vector(i);
    const double weight =
        std::max(std::real(Complex(v.adjoint() * truth.matrix() * v)), 0.0);
    const double s = report_eig.eigenvalues(i);
    if (s < tol::kSupport) {
      if (weight > tol::kSupportWeight) return kPosInf;
      continue;
    }
    if (weight > 0.0) cross += weight * std::log(s);
  }
  const double result = -von_neumann_entropy(truth) - cross;
  return std::max(result, 0.0);
}

OutcomeDistribution born_probabilities(const DensityMatrix& state,
                                       const MeasurementBasis& basis) {
  require(state.dim() == basis.dim(),
          "state and measurement basis dimensions differ");
  std::vector<double> probs(basis.size());
  for (int i = 0; i < basis.size(); ++i) {
    const Vector v = basis.vector(i);
    probs[i] = std::real(Complex(v.adjoint() * state.matrix() * v));
  }
  return OutcomeDistribution(std::move(probs));
}

OutcomeDistribution born_probabilities(const DensityMatrix& state,
                                       const Povm& povm) {
  require(state.dim() == povm.dim(), "state and POVM dimensions differ");
  std::vector<double> probs(povm.size());
  for (int i = 0; i < povm.size(); ++i) {
    probs[i] = std::real((povm.effect(i) * state.matrix()).trace());
  }
  return OutcomeDistribution(std::move(probs));
}

DensityMatrix dephase(const DensityMatrix& state, const MeasurementBasis& basis) {
  require(state.dim() == basis.dim(), "state and basis dimensions differ");
  const Matrix& b = basis.matrix();
  const Matrix in_basis = b.adjoint() * state.matrix() * b;
  Matrix diag = Matrix::Zero(state.dim(), state.dim());
  for (int i = 0; i < state.dim(); ++i) diag(i, i) = std::real(in_basis(i, i));
  return DensityMatrix(b * diag * b.adjoint());
}

bool majorizes(std::vector<double> a, std::vector<double> b) {
  require(a.size() == b.size(), "majorization needs equal-length vectors");
  const double sum_a = std::accumulate(a.begin(), a.end(), 0.0);
  const double sum_b = std::accumulate(b.begin(), b.end(), 0.0);
  require(std::abs(sum_a - 1.0) <= 1e-9 && std::abs(sum_b - 1.0) <= 1e-9,
          "majorization inputs must each sum to 1 within 1e-9");
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  double prefix_a = 0.0;
  double prefix_b = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    prefix_a += a[k];
    prefix_b += b[k];
    if (prefix_a < prefix_b - 1e-10) return false;
  }
  return true;
}

namespace {

Matrix matrix_sqrt_psd(const DensityMatrix& state) {
  const auto eig = eigendecompose(state);
  Matrix result = Matrix::Zero(state.dim(), state.dim());
  for (int i = 0; i < state.dim(); ++i) {
    // Eigenvalues at solver noise level are exact zeros; their square roots
    // would otherwise inject O(1e-8) garbage.
    const double lambda = eig.eigenvalues(i) < 1e-14 ? 0.0 : eig.eigenvalues(i);
    if (lambda == 0.0) continue;
    const Vector v = eig.basis.vector(i);
    result += std::sqrt(lambda) * (v * v.adjoint()).eval();
  }
  return result;
}

}  // namespace

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  require(a.dim() == b.dim(), "fidelity needs states of equal dimension");
  // (Tr sqrt(sqrt(a) b sqrt(a)))^2 computed as the squared trace norm of
  // sqrt(b) sqrt(a); singular values avoid the precision loss of taking
  // square roots of noise-level eigenvalues.
  const Matrix sa = matrix_sqrt_psd(a);
  const Matrix sb = matrix_sqrt_psd(b);
  Eigen::JacobiSVD<Matrix> svd(sb * sa);
  const double root_sum = svd.singularValues().sum();
  return std::clamp(root_sum * root_sum, 0.0, 1.0);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix tensor_power(const DensityMatrix& state, int n, int max_dim) {
  require(n >= 1, "tensor power needs n >= 1");
  double target = 1.0;
  for (int i = 0; i < n; ++i) {
    target *= state.dim();
    if (target > static_cast<double>(max_dim)) {
      std::ostringstream os;
      os << "tensor power dimension " << state.dim() << "^" << n
         << " exceeds cap " << max_dim;
      throw std::length_error(os.str());
    }
  }
  Matrix acc = state.matrix();
  for (int i = 1; i < n; ++i) acc = kron(acc, state.matrix());
  return DensityMatrix(std::move(acc));
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require(a.dim() == b.dim(), "trace distance needs states of equal dimension");
  const Matrix diff = a.matrix() - b.matrix();
  const auto solver = solve_hermitian(diff, false);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double frobenius_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require(a.dim() == b.dim(), "Frobenius distance needs equal dimensions");
  return (a.matrix() - b.matrix()).norm();
}

Matrix random_ginibre(int dim, CounterRng& rng) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      g(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
    }
  }
  return g;
}

DensityMatrix random_density_matrix(int dim, CounterRng& rng) {
  const Matrix g = random_ginibre(dim, rng);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(std::move(m));
}

Matrix random_unitary(int dim, CounterRng& rng) {
  const Matrix g = random_ginibre(dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is Haar.
  for (int i = 0; i < dim; ++i) {
    const Complex rii = r(i, i);
    const double mag = std::abs(rii);
    q.col(i) *= (mag > 0.0) ? rii / mag : Complex(1.0, 0.0);
  }
  return q;
}

MeasurementBasis random_basis(int dim, CounterRng& rng) {
  return MeasurementBasis(random_unitary(dim, rng));
}

DensityMatrix random_pure_state(int dim, CounterRng& rng) {
  Vector psi(dim);
  for (int i = 0; i < dim; ++i) {
    psi(i) = Complex(rng.next_gaussian(), rng.next_gaussian());
  }
  return DensityMatrix::pure(psi);
}

Matrix random_hermitian(int dim, CounterRng& rng) {
  const Matrix g = random_ginibre(dim, rng);
  return 0.5 * (g + g.adjoint());
}

}  // namespace hers
