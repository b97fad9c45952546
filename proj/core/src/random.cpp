#include "qinstr/random.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>

#include "qinstr/gate_audit.hpp"

namespace qinstr {

Matrix random_ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  return g;
}

Matrix random_unitary(int dim, std::mt19937_64& rng) {
  Matrix g = random_ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix phases so the distribution is Haar
  for (int i = 0; i < dim; ++i) {
    Complex diag = r(i, i);
    q.col(i) *= diag / std::abs(diag);
  }
  return q;
}

Observable random_hermitian(int dim, std::mt19937_64& rng) {
  Matrix g = random_ginibre(dim, dim, rng);
  return Observable(0.5 * (g + g.adjoint().eval()), "random");
}

DensityOperator random_density(int dim, std::mt19937_64& rng) {
  Matrix g = random_ginibre(dim, dim, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint().eval());
  return DensityOperator(rho);
}

Vector random_pure(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  return v / v.norm();
}

KrausInstrument random_instrument(int dim, int n_outcomes, int kraus_per_outcome,
                                  std::mt19937_64& rng) {
  std::vector<std::vector<Matrix>> sets(static_cast<std::size_t>(n_outcomes));
  Matrix sum = Matrix::Zero(dim, dim);
  for (auto& set : sets)
    for (int k = 0; k < kraus_per_outcome; ++k) {
      set.push_back(random_ginibre(dim, dim, rng));
      sum += set.back().adjoint() * set.back();
    }
  // renormalize to trace preservation: K -> K S^{-1/2}
  Eigen::SelfAdjointEigenSolver<Matrix> es(sum);
  Matrix inv_sqrt = es.eigenvectors() *
                    es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                    es.eigenvectors().adjoint();
  for (auto& set : sets)
    for (auto& k : set) k = k * inv_sqrt;

  std::vector<double> outcomes;
  for (int i = 0; i < n_outcomes; ++i) outcomes.push_back(i);
  return KrausInstrument(std::move(outcomes), std::move(sets));
}

POVM random_povm(int dim, int n_outcomes, std::mt19937_64& rng) {
  std::vector<Matrix> effects;
  Matrix sum = Matrix::Zero(dim, dim);
  for (int i = 0; i < n_outcomes; ++i) {
    Matrix g = random_ginibre(dim, dim, rng);
    effects.push_back(g * g.adjoint());
    sum += effects.back();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(sum);
  Matrix inv_sqrt = es.eigenvectors() *
                    es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                    es.eigenvectors().adjoint();
  std::vector<double> outcomes;
  for (int i = 0; i < n_outcomes; ++i) {
    effects[static_cast<std::size_t>(i)] =
        inv_sqrt * effects[static_cast<std::size_t>(i)] * inv_sqrt;
    Matrix& e = effects[static_cast<std::size_t>(i)];
    e = 0.5 * (e + e.adjoint().eval());
    outcomes.push_back(i - (n_outcomes - 1) / 2.0);
  }
  return POVM(std::move(outcomes), std::move(effects));
}

JointPOVM random_joint_povm(int dim, int nx, int ny, std::mt19937_64& rng) {
  const int n = nx * ny;
  std::vector<Matrix> effects;
  Matrix sum = Matrix::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    Matrix g = random_ginibre(dim, dim, rng);
    effects.push_back(g * g.adjoint());
    sum += effects.back();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(sum);
  Matrix inv_sqrt = es.eigenvectors() *
                    es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                    es.eigenvectors().adjoint();
  std::vector<std::pair<double, double>> outcomes;
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y) {
      Matrix& e = effects[static_cast<std::size_t>(x * ny + y)];
      e = inv_sqrt * e * inv_sqrt;
      e = 0.5 * (e + e.adjoint().eval());
      outcomes.emplace_back(x, y);
    }
  return JointPOVM(std::move(outcomes), std::move(effects));
}

std::pair<Observable, Observable> random_commuting_pair(int dim, std::mt19937_64& rng) {
  Matrix w = random_unitary(dim, rng);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Eigen::VectorXd c(dim), d(dim);
  for (int i = 0; i < dim; ++i) {
    c(i) = uni(rng);
    d(i) = uni(rng);
  }
  Matrix cm = w * c.cast<Complex>().asDiagonal() * w.adjoint();
  Matrix dm = w * d.cast<Complex>().asDiagonal() * w.adjoint();
  return {Observable(0.5 * (cm + cm.adjoint().eval()), "C"),
          Observable(0.5 * (dm + dm.adjoint().eval()), "D")};
}

ConservingModel random_conserving_model(int system_dim, int ancilla_dim,
                                        std::mt19937_64& rng, const NumericConfig& cfg) {
  Observable l1 = system_dim == 2 ? Observable(spin_x(), "S_x")
                                  : random_hermitian(system_dim, rng);
  Observable l2 = random_hermitian(ancilla_dim, rng);

  Matrix u = conserving_unitary(l1, l2, rng, cfg);

  // meter as a random function of L2 so [M, L2] = 0 exactly
  auto clusters = spectral_clusters(l2, cfg);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  Matrix meter = Matrix::Zero(ancilla_dim, ancilla_dim);
  std::vector<double> labels;
  for (const auto& c : clusters) {
    double label;
    bool fresh = false;
    while (!fresh) {
      label = uni(rng);
      fresh = true;
      for (double prev : labels)
        if (std::abs(prev - label) < 1e-3) fresh = false;
    }
    labels.push_back(label);
    meter += label * (c.basis * c.basis.adjoint());
  }

  MeasurementModel model(system_dim, ancilla_dim, random_density(ancilla_dim, rng),
                         std::move(u),
                         Observable(0.5 * (meter + meter.adjoint().eval()), "M", cfg),
                         cfg);
  return ConservingModel{std::move(model), ConservationSpec{std::move(l1), std::move(l2)}};
}

}  // namespace qinstr
