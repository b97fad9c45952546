#include "qinstr/instrument.hpp"

#include <algorithm>
#include <cmath>

namespace qinstr {

KrausInstrument::KrausInstrument(std::vector<double> outs,
                                 std::vector<std::vector<Matrix>> sets,
                                 const NumericConfig& cfg)
    : outcomes(std::move(outs)), kraus_sets(std::move(sets)) {
  if (outcomes.empty() || outcomes.size() != kraus_sets.size())
    throw ValidationError("KrausInstrument: outcomes/kraus size mismatch");
  for (std::size_t i = 0; i < outcomes.size(); ++i)
    for (std::size_t j = i + 1; j < outcomes.size(); ++j)
      if (outcomes[i] == outcomes[j])
        throw ValidationError("KrausInstrument: duplicate outcome");
  const Eigen::Index d = kraus_sets.front().front().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& set : kraus_sets) {
    if (set.empty()) throw ValidationError("KrausInstrument: empty Kraus set");
    for (const auto& k : set) {
      if (k.rows() != d || k.cols() != d)
        throw ValidationError("KrausInstrument: Kraus dimension mismatch");
      sum += k.adjoint() * k;
    }
  }
  if (max_norm(sum - Matrix::Identity(d, d)) > 100 * cfg.hermiticity_tol)
    throw ValidationError("KrausInstrument: sum K†K != I (not trace preserving)");
}

KrausInstrument lueders(const Observable& obs, const NumericConfig& cfg) {
  SpectralDecomposition sd = spectral(obs, cfg);
  std::vector<std::vector<Matrix>> sets;
  for (const auto& p : sd.projectors) sets.push_back({p});
  return KrausInstrument(sd.eigenvalues, std::move(sets), cfg);
}

POVM induced_povm(const KrausInstrument& instr, const NumericConfig& cfg) {
  std::vector<Matrix> effects;
  const int d = instr.dim();
  for (const auto& set : instr.kraus_sets) {
    Matrix e = Matrix::Zero(d, d);
    for (const auto& k : set) e += k.adjoint() * k;
    e = 0.5 * (e + e.adjoint().eval());
    effects.push_back(std::move(e));
  }
  return POVM(instr.outcomes, std::move(effects), cfg);
}

Matrix apply_outcome(const KrausInstrument& instr, const Matrix& rho, int outcome_index) {
  const int d = instr.dim();
  if (rho.rows() != d || rho.cols() != d)
    throw DimensionMismatch("apply_outcome: dimension mismatch");
  Matrix out = Matrix::Zero(d, d);
  for (const auto& k : instr.kraus_sets[static_cast<std::size_t>(outcome_index)])
    out += k * rho * k.adjoint();
  return out;
}

std::vector<std::pair<double, double>> output_distribution(const KrausInstrument& instr,
                                                           const DensityOperator& state) {
  if (instr.dim() != state.dim())
    throw DimensionMismatch("output_distribution: dimension mismatch");
  std::vector<std::pair<double, double>> dist;
  for (int i = 0; i < instr.n_outcomes(); ++i)
    dist.emplace_back(instr.outcomes[i],
                      apply_outcome(instr, state.matrix, i).trace().real());
  return dist;
}

DensityOperator output_state(const KrausInstrument& instr, const DensityOperator& state,
                             double outcome, const NumericConfig& cfg) {
  auto it = std::find(instr.outcomes.begin(), instr.outcomes.end(), outcome);
  if (it == instr.outcomes.end())
    throw ValidationError("output_state: unknown outcome label");
  const int idx = static_cast<int>(it - instr.outcomes.begin());
  Matrix branch = apply_outcome(instr, state.matrix, idx);
  const double p = branch.trace().real();
  if (p <= cfg.state_prob_floor)
    throw OutcomeProbabilityZero("output_state: outcome probability below floor");
  branch /= p;
  branch = 0.5 * (branch + branch.adjoint().eval());
  return DensityOperator(branch, cfg);
}

DensityOperator nonselective_apply(const KrausInstrument& instr,
                                   const DensityOperator& state,
                                   const NumericConfig& cfg) {
  const int d = instr.dim();
  if (d != state.dim())
    throw DimensionMismatch("nonselective_apply: dimension mismatch");
  Matrix out = Matrix::Zero(d, d);
  for (int i = 0; i < instr.n_outcomes(); ++i)
    out += apply_outcome(instr, state.matrix, i);
  out = 0.5 * (out + out.adjoint().eval());
  return DensityOperator(out, cfg);
}

Matrix dual_apply_matrix(const KrausInstrument& instr, const Matrix& x) {
  const int d = instr.dim();
  if (x.rows() != d || x.cols() != d)
    throw DimensionMismatch("dual_apply: dimension mismatch");
  Matrix out = Matrix::Zero(d, d);
  for (const auto& set : instr.kraus_sets)
    for (const auto& k : set) out += k.adjoint() * x * k;
  return out;
}

Observable dual_apply(const KrausInstrument& instr, const Observable& obs,
                      const NumericConfig& cfg) {
  Matrix out = dual_apply_matrix(instr, obs.matrix);
  out = 0.5 * (out + out.adjoint().eval());
  return Observable(out, "T*(" + obs.label + ")", cfg);
}

POVM dual_spectral_povm(const KrausInstrument& instr, const Observable& b,
                        const NumericConfig& cfg) {
  SpectralDecomposition sd = spectral(b, cfg);
  std::vector<Matrix> effects;
  for (const auto& p : sd.projectors) {
    Matrix e = dual_apply_matrix(instr, p);
    effects.push_back(0.5 * (e + e.adjoint().eval()));
  }
  return POVM(sd.eigenvalues, std::move(effects), cfg);
}

}  // namespace qinstr
