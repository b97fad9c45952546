#include "qinstr/matrix.hpp"

#include <Eigen/Eigenvalues>

namespace qinstr {

double max_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double hs_norm(const Matrix& m) { return m.norm(); }

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix partial_trace(const Matrix& m, int d1, int d2, Keep keep) {
  const Eigen::Index n = static_cast<Eigen::Index>(d1) * d2;
  if (m.rows() != n || m.cols() != n)
    throw DimensionMismatch("partial_trace: matrix is not d1*d2 square");
  if (keep == Keep::First) {
    Matrix out = Matrix::Zero(d1, d1);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d1; ++j)
        for (int k = 0; k < d2; ++k) out(i, j) += m(i * d2 + k, j * d2 + k);
    return out;
  }
  Matrix out = Matrix::Zero(d2, d2);
  for (int i = 0; i < d2; ++i)
    for (int j = 0; j < d2; ++j)
      for (int k = 0; k < d1; ++k) out(i, j) += m(k * d2 + i, k * d2 + j);
  return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && max_norm(m - m.adjoint()) <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_norm(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())) <= tol;
}

Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  Eigen::VectorXd vals = es.eigenvalues();
  // clamp roundoff-level eigenvalues so the square root does not amplify
  // O(1e-16) noise into O(1e-8) entries
  const double floor = vals.cwiseAbs().maxCoeff() * 1e-14;
  vals = (vals.array() < floor).select(0.0, vals).cwiseSqrt();
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace qinstr
