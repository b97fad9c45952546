#include "qinstr/povm.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace qinstr {

namespace {

void validate_effects(const std::vector<Matrix>& effects, int dim,
                      const NumericConfig& cfg) {
  Matrix sum = Matrix::Zero(dim, dim);
  for (const auto& e : effects) {
    if (e.rows() != dim || e.cols() != dim)
      throw ValidationError("POVM: effect dimension mismatch");
    if (max_norm(e - e.adjoint()) > cfg.hermiticity_tol)
      throw ValidationError("POVM: effect not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(e, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -cfg.psd_tol)
      throw ValidationError("POVM: effect not positive semidefinite");
    sum += e;
  }
  if (max_norm(sum - Matrix::Identity(dim, dim)) > 100 * cfg.hermiticity_tol)
    throw ValidationError("POVM: effects do not sum to identity");
}

}  // namespace

POVM::POVM(std::vector<double> outs, std::vector<Matrix> effs, const NumericConfig& cfg)
    : outcomes(std::move(outs)), effects(std::move(effs)) {
  if (outcomes.empty() || outcomes.size() != effects.size())
    throw ValidationError("POVM: outcomes/effects size mismatch");
  for (std::size_t i = 0; i < outcomes.size(); ++i)
    for (std::size_t j = i + 1; j < outcomes.size(); ++j)
      if (outcomes[i] == outcomes[j]) throw ValidationError("POVM: duplicate outcome");
  validate_effects(effects, static_cast<int>(effects.front().rows()), cfg);
}

JointPOVM::JointPOVM(std::vector<std::pair<double, double>> outs, std::vector<Matrix> effs,
                     const NumericConfig& cfg)
    : outcomes(std::move(outs)), effects(std::move(effs)) {
  if (outcomes.empty() || outcomes.size() != effects.size())
    throw ValidationError("JointPOVM: outcomes/effects size mismatch");
  for (std::size_t i = 0; i < outcomes.size(); ++i)
    for (std::size_t j = i + 1; j < outcomes.size(); ++j)
      if (outcomes[i] == outcomes[j]) throw ValidationError("JointPOVM: duplicate outcome");
  validate_effects(effects, static_cast<int>(effects.front().rows()), cfg);
}

Observable moment_operator(const POVM& povm, int n) {
  if (n < 1) throw ValidationError("moment_operator: n must be >= 1");
  Matrix out = Matrix::Zero(povm.dim(), povm.dim());
  for (int i = 0; i < povm.n_outcomes(); ++i)
    out += std::pow(povm.outcomes[i], n) * povm.effects[i];
  // symmetrize away round-off
  out = 0.5 * (out + out.adjoint().eval());
  return Observable(out, "O^(" + std::to_string(n) + ")");
}

std::pair<double, double> povm_mean_stddev(const POVM& povm, const DensityOperator& state) {
  if (povm.dim() != state.dim())
    throw DimensionMismatch("povm_mean_stddev: dimension mismatch");
  const Observable o1 = moment_operator(povm, 1);
  const Observable o2 = moment_operator(povm, 2);
  const double mean = (o1.matrix * state.matrix).trace().real();
  const double second = (o2.matrix * state.matrix).trace().real();
  return {mean, std::sqrt(std::max(0.0, second - mean * mean))};
}

std::pair<POVM, POVM> marginals(const JointPOVM& joint, const NumericConfig& cfg) {
  std::vector<double> xs, ys;
  std::vector<Matrix> ex, ey;
  const int d = joint.dim();
  for (std::size_t i = 0; i < joint.outcomes.size(); ++i) {
    const auto [x, y] = joint.outcomes[i];
    auto ix = std::find(xs.begin(), xs.end(), x);
    if (ix == xs.end()) {
      xs.push_back(x);
      ex.push_back(Matrix::Zero(d, d));
      ix = xs.end() - 1;
    }
    ex[static_cast<std::size_t>(ix - xs.begin())] += joint.effects[i];
    auto iy = std::find(ys.begin(), ys.end(), y);
    if (iy == ys.end()) {
      ys.push_back(y);
      ey.push_back(Matrix::Zero(d, d));
      iy = ys.end() - 1;
    }
    ey[static_cast<std::size_t>(iy - ys.begin())] += joint.effects[i];
  }
  return {POVM(xs, ex, cfg), POVM(ys, ey, cfg)};
}

POVM spectral_povm(const Observable& obs, const NumericConfig& cfg) {
  SpectralDecomposition sd = spectral(obs, cfg);
  return POVM(sd.eigenvalues, sd.projectors, cfg);
}

}  // namespace qinstr
