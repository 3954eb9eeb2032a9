#include "hers/perturbation.hpp"

#include <cmath>
#include <sstream>

namespace hers {
namespace {

constexpr double kLn2 = 0.6931471805599453;

// exp(iXt) for Hermitian X via its spectral decomposition.
Matrix unitary_exp(const Matrix& x, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(x);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigensolver failed on the curve generator");
  }
  const int d = static_cast<int>(x.rows());
  Matrix phases = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    phases(i, i) = std::exp(Complex(0.0, solver.eigenvalues()(i) * t));
  }
  return solver.eigenvectors() * phases * solver.eigenvectors().adjoint();
}

}  // namespace

PerturbationCurve::PerturbationCurve(RealVector populations, Matrix generator,
                                     RealVector constants)
    : populations_(std::move(populations)),
      generator_(std::move(generator)),
      constants_(std::move(constants)) {
  const int d = static_cast<int>(populations_.size());
  require(d >= 2, "curve needs dimension >= 2");
  require(generator_.rows() == d && generator_.cols() == d,
          "generator dimension must match the populations");
  require(constants_.size() == d, "one constant per population required");
  const double herm = (generator_ - generator_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol::kHermitian) {
    std::ostringstream os;
    os << "generator not Hermitian: residual " << herm << " exceeds "
       << tol::kHermitian;
    throw std::invalid_argument(os.str());
  }
  double sum = 0.0;
  for (int i = 0; i < d; ++i) {
    require(populations_(i) >= -tol::kPsd, "populations must be >= 0");
    sum += populations_(i);
  }
  require(std::abs(sum - 1.0) <= tol::kTrace, "populations must sum to 1");
}

DensityMatrix PerturbationCurve::state() const {
  return DensityMatrix::diagonal(populations_);
}

bool PerturbationCurve::full_rank() const {
  return populations_.minCoeff() > tol::kSupport;
}

DensityMatrix sigma_at(const PerturbationCurve& curve, double t) {
  const Matrix u = unitary_exp(curve.generator(), t);
  Matrix rotated = u * curve.state().matrix() * u.adjoint();
  rotated = 0.5 * (rotated + rotated.adjoint()).eval();
  return DensityMatrix(std::move(rotated));
}

double g_function(const PerturbationCurve& curve, double t) {
  const DensityMatrix rho = curve.state();
  const DensityMatrix sigma = sigma_at(curve, t);
  const double s = relative_entropy(rho, sigma);
  if (s == kPosInf) return kPosInf;

  const Matrix u = unitary_exp(curve.generator(), t);
  const Matrix rotated_back = u.adjoint() * rho.matrix() * u;
  double offset_term = 0.0;
  for (int i = 0; i < curve.dim(); ++i) {
    const double p_i = std::real(rotated_back(i, i));
    offset_term += curve.constants()(i) * (curve.populations()(i) - p_i);
  }
  return s + offset_term;
}

double second_derivative_analytic(const PerturbationCurve& curve) {
  require(curve.full_rank(),
          "analytic curvature needs full-rank populations (ln rho finite)");
  const int d = curve.dim();
  const Matrix& x = curve.generator();
  const Matrix rho = curve.state().matrix();
  Matrix ln_plus_b = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    ln_plus_b(i, i) = std::log(curve.populations()(i)) + curve.constants()(i);
  }
  const Matrix comm = x * rho - rho * x;
  return 2.0 * std::real((comm * ln_plus_b * x).trace());
}

double second_derivative_numeric(const PerturbationCurve& curve, double h) {
  require(h >= 1e-5 && h <= 1e-2, "finite-difference step must lie in [1e-5, 1e-2]");
  const double g_plus = g_function(curve, h);
  const double g_zero = g_function(curve, 0.0);
  const double g_minus = g_function(curve, -h);
  return (g_plus - 2.0 * g_zero + g_minus) / (h * h);
}

double first_derivative_numeric(const PerturbationCurve& curve, double h) {
  require(h >= 1e-5 && h <= 1e-2, "finite-difference step must lie in [1e-5, 1e-2]");
  return (g_function(curve, h) - g_function(curve, -h)) / (2.0 * h);
}

PerturbationCurve construct_counterexample(double c1, double c2) {
  require(c1 != c2, "the construction needs distinct offsets c1 != c2");
  const double r1 = std::exp(-(c1 + 2.0 * kLn2) / 2.0);
  const double r2 = std::exp(-(c2 + 2.0 * kLn2) / 2.0);
  const double r3 = 1.0 - r1 - r2;
  const auto in_half = [](double r) { return r > 0.0 && r <= 0.5; };
  if (!in_half(r1) || !in_half(r2) || r3 < 0.0 || r3 >= 1.0) {
    std::ostringstream os;
    os << "infeasible offsets: populations (" << r1 << ", " << r2 << ", " << r3
       << ") leave (0, 1/2] x (0, 1/2] x [0, 1)";
    throw std::invalid_argument(os.str());
  }
  RealVector populations(3);
  populations << r1, r2, r3;
  RealVector constants(3);
  constants << c1, c2, 0.0;
  Matrix generator = Matrix::Zero(3, 3);
  generator(0, 1) = 1.0;
  generator(1, 0) = 1.0;
  return PerturbationCurve(std::move(populations), std::move(generator),
                           std::move(constants));
}

VerificationReport verify_constant_equality(int dim, int trials,
                                            std::uint64_t seed) {
  require(dim >= 3,
          "constant-equality verification requires dimension >= 3; with fewer "
          "outcomes the offsets cannot be separated");
  require(trials >= 1, "trials must be >= 1");

  VerificationReport report;
  report.dim = dim;
  report.trials = trials;
  report.seed = seed;
  report.equal_min_second_derivative = kPosInf;
  const CounterRng root(seed);

  // Equal offsets: curvature is that of the relative entropy alone, which is
  // nonnegative because t = 0 minimizes S(rho || sigma(t)).
  for (int t = 0; t < trials; ++t) {
    CounterRng rng = root.derive(static_cast<std::uint64_t>(t));
    // Full-rank populations: mix a random state toward uniform.
    const DensityMatrix sample = random_density_matrix(dim, rng);
    const auto eig = eigendecompose(sample);
    RealVector populations(dim);
    double sum = 0.0;
    for (int i = 0; i < dim; ++i) {
      populations(i) = eig.eigenvalues(i) + 0.01 / dim;
      sum += populations(i);
    }
    populations /= sum;
    const Matrix x = random_hermitian(dim, rng);
    const double c = 2.0 * rng.next_double() - 1.0;
    RealVector constants = RealVector::Constant(dim, c);
    const PerturbationCurve curve(populations, x, constants);
    const double dd = second_derivative_analytic(curve);
    report.equal_min_second_derivative =
        std::min(report.equal_min_second_derivative, dd);
    if (dd < -1e-10) ++report.equal_violation_count;
  }

  // Unequal offsets: the canonical construction embedded in dim levels; if
  // the block Pauli-X ever degenerates, search random block-supported X.
  report.unequal_trials = trials;
  for (int t = 0; t < trials; ++t) {
    CounterRng rng = root.derive(0x10000 + static_cast<std::uint64_t>(t));
    // Spread the offsets enough that the quadratic dip in g is well above
    // evaluation noise on the scanned t window.
    double c1 = 0.0;
    double c2 = 0.0;
    while (std::abs(c1 - c2) < 0.25) {
      c1 = 2.0 * rng.next_double();
      c2 = 2.0 * rng.next_double();
    }
    const double r1 = std::exp(-(c1 + 2.0 * kLn2) / 2.0);
    const double r2 = std::exp(-(c2 + 2.0 * kLn2) / 2.0);
    const double rest = 1.0 - r1 - r2;
    RealVector populations(dim);
    populations(0) = r1;
    populations(1) = r2;
    for (int i = 2; i < dim; ++i) populations(i) = rest / (dim - 2);
    RealVector constants = RealVector::Zero(dim);
    constants(0) = c1;
    constants(1) = c2;

    Matrix x = Matrix::Zero(dim, dim);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    PerturbationCurve curve(populations, x, constants);
    double dd = second_derivative_analytic(curve);
    int attempts = 0;
    while (dd >= 0.0 && attempts < 64) {
      // Random Hermitian generator supported on the first two levels.
      const double a = rng.next_gaussian();
      const double b = rng.next_gaussian();
      const Complex off(rng.next_gaussian(), rng.next_gaussian());
      Matrix xr = Matrix::Zero(dim, dim);
      xr(0, 0) = a;
      xr(1, 1) = b;
      xr(0, 1) = off;
      xr(1, 0) = std::conj(off);
      curve = PerturbationCurve(populations, xr, constants);
      dd = second_derivative_analytic(curve);
      ++attempts;
    }
    if (dd >= 0.0) {
      ++report.unequal_failure_count;
      continue;
    }
    // Scan small t for a strictly negative propriety deficit.
    double witness_t = 0.0;
    double witness_g = 0.0;
    for (int k = 1; k <= 100; ++k) {
      const double tt = 0.001 * k;
      const double g = g_function(curve, tt);
      if (g < witness_g) {
        witness_g = g;
        witness_t = tt;
      }
    }
    if (witness_g >= 0.0) {
      ++report.unequal_failure_count;
      continue;
    }
    if (report.witnesses.size() < 8) {
      report.witnesses.push_back(CurveWitness{curve.populations(),
                                              curve.constants(),
                                              curve.generator(), dd, witness_t,
                                              witness_g});
    }
  }

  report.passed =
      report.equal_violation_count == 0 && report.unequal_failure_count == 0;
  return report;
}

}  // namespace hers
