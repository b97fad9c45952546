#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qinstr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Tolerances threaded through constructors and checks; never global state.
struct NumericConfig {
  double hermiticity_tol = 1e-10;
  double psd_tol = 1e-10;
  double trace_tol = 1e-10;
  double degeneracy_tol = 1e-8;
  double class_tol = 1e-9;
  double state_prob_floor = 1e-12;
  double eta_zero_tol = 1e-8;
  double eps_zero_tol = 1e-8;
  double slack_tol = 1e-9;
};

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct OutcomeProbabilityZero : std::domain_error {
  using std::domain_error::domain_error;
};
struct NonCommutingPair : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DisturbanceNotZero : std::domain_error {
  using std::domain_error::domain_error;
};
struct NoiseNotZero : std::domain_error {
  using std::domain_error::domain_error;
};
struct NotUncorrelated : std::domain_error {
  using std::domain_error::domain_error;
};

enum class Keep { First, Second };

/// Largest entry modulus.
double max_norm(const Matrix& m);

/// Hilbert-Schmidt (Frobenius) norm, sqrt(sum |entries|^2).
double hs_norm(const Matrix& m);

/// Kronecker product; (a⊗b)(c⊗d) = ac⊗bd.
Matrix tensor(const Matrix& a, const Matrix& b);

/// Reduced operator of m on C^{d1}⊗C^{d2}; preserves the trace.
Matrix partial_trace(const Matrix& m, int d1, int d2, Keep keep);

Matrix commutator(const Matrix& a, const Matrix& b);
Matrix anticommutator(const Matrix& a, const Matrix& b);

bool is_hermitian(const Matrix& m, double tol);
bool is_unitary(const Matrix& m, double tol);

/// PSD square root via spectral decomposition; negative round-off clamped at 0.
Matrix psd_sqrt(const Matrix& m);

}  // namespace qinstr
