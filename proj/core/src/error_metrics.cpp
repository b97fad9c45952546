#include "qinstr/error_metrics.hpp"

#include <cmath>

namespace qinstr {

NoiseAssessment assess_noise(const Observable& a, const POVM& povm,
                             const DensityOperator& state) {
  if (a.dim() != povm.dim() || a.dim() != state.dim())
    throw DimensionMismatch("assess_noise: dimension mismatch");
  const Matrix o1 = moment_operator(povm, 1).matrix;
  const Matrix& am = a.matrix;
  const int d = a.dim();

  Matrix n = o1 - am;
  n = 0.5 * (n + n.adjoint().eval());
  const double mean = (n * state.matrix).trace().real();
  // eps^2 = <O^(2) - OA - AO + A^2> evaluated as sum_a ||sqrt(E_a)(a - A)sqrt(rho)||^2,
  // which is quadratic in the per-effect residual and so stays accurate near zero noise
  const Matrix sqrt_rho = psd_sqrt(state.matrix);
  double eps_sq = 0.0;
  for (std::size_t i = 0; i < povm.effects.size(); ++i) {
    const Matrix shift = povm.outcomes[i] * Matrix::Identity(d, d) - am;
    const double t = hs_norm(psd_sqrt(povm.effects[i]) * shift * sqrt_rho);
    eps_sq += t * t;
  }
  const double eps = std::sqrt(eps_sq);
  const double dn = std::sqrt(std::max(0.0, eps_sq - mean * mean));
  return NoiseAssessment{Observable(n, "n(" + a.label + ")"), mean, eps, dn};
}

DisturbanceAssessment assess_disturbance(const Observable& b, const KrausInstrument& instr,
                                         const DensityOperator& state,
                                         const NumericConfig& cfg) {
  if (b.dim() != instr.dim() || b.dim() != state.dim())
    throw DimensionMismatch("assess_disturbance: dimension mismatch");
  POVM dual = dual_spectral_povm(instr, b, cfg);
  NoiseAssessment noise = assess_noise(b, dual, state);
  return DisturbanceAssessment{
      Observable(noise.mean_noise_operator.matrix, "d(" + b.label + ")"),
      noise.mean_noise, noise.rms_noise, noise.noise_stddev};
}

NoiseClass classify_noise(const Observable& a, const POVM& povm,
                          const NumericConfig& cfg) {
  if (a.dim() != povm.dim()) throw DimensionMismatch("classify_noise: dimension mismatch");
  Matrix n = moment_operator(povm, 1).matrix - a.matrix;
  const int d = a.dim();
  const double offset = n.trace().real() / d;
  const bool uncorrelated =
      max_norm(n - offset * Matrix::Identity(d, d)) <= cfg.class_tol;
  const bool unbiased = uncorrelated && std::abs(offset) <= cfg.class_tol;
  return NoiseClass{uncorrelated, unbiased, uncorrelated ? offset : 0.0};
}

ZeroNoiseReport zero_noise_equivalence(const Observable& a, const POVM& povm,
                                       const NumericConfig& cfg) {
  if (a.dim() != povm.dim())
    throw DimensionMismatch("zero_noise_equivalence: dimension mismatch");
  const int d = a.dim();

  // align POVM outcomes with eigenvalues before comparing effects
  SpectralDecomposition sd = spectral(a, cfg);
  bool is_spectral = povm.n_outcomes() == static_cast<int>(sd.eigenvalues.size());
  if (is_spectral) {
    for (int i = 0; i < povm.n_outcomes(); ++i) {
      bool matched = false;
      for (std::size_t j = 0; j < sd.eigenvalues.size(); ++j) {
        if (std::abs(povm.outcomes[static_cast<std::size_t>(i)] - sd.eigenvalues[j]) <
            cfg.degeneracy_tol) {
          matched = max_norm(povm.effects[static_cast<std::size_t>(i)] -
                             sd.projectors[j]) <= 100 * cfg.hermiticity_tol;
          break;
        }
      }
      if (!matched) {
        is_spectral = false;
        break;
      }
    }
  }

  ZeroNoiseReport report;
  report.is_spectral = is_spectral;
  for (int i = 0; i < d; ++i) {
    Vector basis = Vector::Zero(d);
    basis(i) = 1.0;
    report.eps_on_basis.push_back(assess_noise(a, povm, pure_state(basis, cfg)).rms_noise);
  }
  report.eps_on_faithful = assess_noise(a, povm, maximally_mixed(d)).rms_noise;
  return report;
}

}  // namespace qinstr
