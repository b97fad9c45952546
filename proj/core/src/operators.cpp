#include "qinstr/operators.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace qinstr {

Observable::Observable(Matrix m, std::string lbl, const NumericConfig& cfg)
    : matrix(std::move(m)), label(std::move(lbl)) {
  if (matrix.rows() != matrix.cols())
    throw ValidationError("Observable: matrix must be square");
  if (!matrix.allFinite()) throw ValidationError("Observable: non-finite entries");
  if (max_norm(matrix - matrix.adjoint()) > cfg.hermiticity_tol)
    throw ValidationError("Observable '" + label + "': not Hermitian within tolerance");
}

DensityOperator::DensityOperator(Matrix m, const NumericConfig& cfg)
    : matrix(std::move(m)) {
  if (matrix.rows() != matrix.cols())
    throw ValidationError("DensityOperator: matrix must be square");
  if (!matrix.allFinite()) throw ValidationError("DensityOperator: non-finite entries");
  if (max_norm(matrix - matrix.adjoint()) > cfg.hermiticity_tol)
    throw ValidationError("DensityOperator: not Hermitian within tolerance");
  if (std::abs(matrix.trace().real() - 1.0) > cfg.trace_tol ||
      std::abs(matrix.trace().imag()) > cfg.trace_tol)
    throw ValidationError("DensityOperator: trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(matrix, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -cfg.psd_tol)
    throw ValidationError("DensityOperator: negative eigenvalue beyond tolerance");
}

std::vector<SpectralCluster> spectral_clusters(const Observable& obs,
                                               const NumericConfig& cfg) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(obs.matrix);
  const Eigen::VectorXd vals = es.eigenvalues();
  const Matrix& vecs = es.eigenvectors();
  const int n = static_cast<int>(vals.size());

  std::vector<SpectralCluster> clusters;
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && vals(end) - vals(end - 1) < cfg.degeneracy_tol) ++end;
    const int mult = end - start;
    SpectralCluster c;
    c.eigenvalue = vals.segment(start, mult).mean();
    c.basis = vecs.middleCols(start, mult);
    clusters.push_back(std::move(c));
    start = end;
  }
  return clusters;
}

SpectralDecomposition spectral(const Observable& obs, const NumericConfig& cfg) {
  SpectralDecomposition sd;
  for (const auto& c : spectral_clusters(obs, cfg)) {
    sd.eigenvalues.push_back(c.eigenvalue);
    sd.projectors.push_back(c.basis * c.basis.adjoint());
  }
  return sd;
}

std::pair<double, double> mean_stddev(const Observable& obs, const DensityOperator& state) {
  if (obs.dim() != state.dim())
    throw DimensionMismatch("mean_stddev: dimension mismatch");
  const double mean = (obs.matrix * state.matrix).trace().real();
  const double second = (obs.matrix * obs.matrix * state.matrix).trace().real();
  const double var = std::max(0.0, second - mean * mean);
  return {mean, std::sqrt(var)};
}

Complex commutator_mean(const Observable& a, const Observable& b,
                        const DensityOperator& state) {
  if (a.dim() != b.dim() || a.dim() != state.dim())
    throw DimensionMismatch("commutator_mean: dimension mismatch");
  return (commutator(a.matrix, b.matrix) * state.matrix).trace();
}

DensityOperator pure_state(const Vector& psi, const NumericConfig& cfg) {
  const double norm = psi.norm();
  if (norm == 0.0) throw ValidationError("pure_state: zero vector");
  Vector unit = psi / norm;
  return DensityOperator(unit * unit.adjoint(), cfg);
}

DensityOperator maximally_mixed(int dim) {
  return DensityOperator(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix spin_x() { return 0.5 * pauli_x(); }
Matrix spin_y() { return 0.5 * pauli_y(); }
Matrix spin_z() { return 0.5 * pauli_z(); }

Matrix hadamard() {
  Matrix m(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

Vector ket0() {
  Vector v(2);
  v << 1, 0;
  return v;
}

Vector ket1() {
  Vector v(2);
  v << 0, 1;
  return v;
}

Vector ket_plus() {
  Vector v(2);
  const double s = 1.0 / std::sqrt(2.0);
  v << s, s;
  return v;
}

Vector ket_sy_plus() {
  Vector v(2);
  const double s = 1.0 / std::sqrt(2.0);
  v << Complex(s, 0), Complex(0, s);
  return v;
}

}  // namespace qinstr
