#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hers {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Extended reals. Payoffs and relative entropies live on [-inf, +inf]; the
// IEEE infinities are the distinguished values (never a large-magnitude
// float sentinel). -inf + finite = -inf and -inf < finite hold natively;
// the one case IEEE gets wrong for us, 0 * (±inf), is resolved as 0 at
// every expectation-sum site (the 0 ln 0 = 0 convention).
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline bool is_finite(double x) { return std::isfinite(x); }

// Tolerances shared across the library. All entropies and scores are in
// natural log (nats).
namespace tol {
inline constexpr double kHermitian = 1e-10;       // max |A - A^dagger| entry
inline constexpr double kTrace = 1e-10;           // |Tr - 1|
inline constexpr double kPsd = 1e-10;             // min eigenvalue >= -kPsd
inline constexpr double kGram = 1e-10;            // basis orthonormality
inline constexpr double kProbEntry = 1e-12;       // distribution entry slack
inline constexpr double kProbSum = 1e-10;         // |sum - 1|
inline constexpr double kSupport = 1e-12;         // eigenvalue counts as zero
inline constexpr double kSupportWeight = 1e-10;   // truth weight on dead support
inline constexpr double kReconstruct = 1e-9;      // eigendecomposition residual
inline constexpr double kStateEq = 1e-9;          // Frobenius state equality
}  // namespace tol

// Eigen-solver failure or other breakdowns of the numerics, as opposed to
// invalid caller input (std::invalid_argument) or resource caps
// (std::length_error).
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Every particle assigns zero likelihood to the record; the posterior is
// undefined.
struct DegeneratePosteriorError : std::runtime_error {
  explicit DegeneratePosteriorError(const std::string& what)
      : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& message) {
  if (!cond) throw std::invalid_argument(message);
}

}  // namespace hers
