#pragma once

#include "qinstr/instrument.hpp"

namespace qinstr {

/// Mean noise operator n(A,Π), its mean, the rms noise ε and the noise spread ΔN.
struct NoiseAssessment {
  Observable mean_noise_operator;
  double mean_noise;    // n̄
  double rms_noise;     // ε
  double noise_stddev;  // ΔN = sqrt(max(0, ε² − n̄²))
};

struct DisturbanceAssessment {
  Observable mean_disturbance_operator;
  double mean_disturbance;
  double rms_disturbance;     // η
  double disturbance_stddev;  // ΔD
};

struct NoiseClass {
  bool uncorrelated;
  bool unbiased;
  double offset;  // the r in n = rI when uncorrelated
};

/// n = O(Π) − A; ε² = <O⁽²⁾ − OA − AO + A²> clamped at 0.
NoiseAssessment assess_noise(const Observable& a, const POVM& povm,
                             const DensityOperator& state);

/// η(B,T,ρ) = ε(B, T*E^B, ρ) for the nonselective operation of the instrument.
DisturbanceAssessment assess_disturbance(const Observable& b, const KrausInstrument& instr,
                                         const DensityOperator& state,
                                         const NumericConfig& cfg = {});

NoiseClass classify_noise(const Observable& a, const POVM& povm,
                          const NumericConfig& cfg = {});

/// Numerical certificate for the zero-noise equivalence: Π = E^A iff ε vanishes on a
/// faithful state iff it vanishes on every basis state.
struct ZeroNoiseReport {
  bool is_spectral;
  std::vector<double> eps_on_basis;
  double eps_on_faithful;
};

ZeroNoiseReport zero_noise_equivalence(const Observable& a, const POVM& povm,
                                       const NumericConfig& cfg = {});

}  // namespace qinstr
