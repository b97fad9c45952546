#pragma once

#include <utility>
#include <vector>

#include "qinstr/povm.hpp"

namespace qinstr {

/// Outcome-labeled Kraus families; the sum over all outcomes is trace preserving.
struct KrausInstrument {
  std::vector<double> outcomes;
  std::vector<std::vector<Matrix>> kraus_sets;

  KrausInstrument(std::vector<double> outs, std::vector<std::vector<Matrix>> sets,
                  const NumericConfig& cfg = {});

  int dim() const { return static_cast<int>(kraus_sets.front().front().rows()); }
  int n_outcomes() const { return static_cast<int>(outcomes.size()); }
};

/// Projective instrument P ρ P over the spectral projectors of obs.
KrausInstrument lueders(const Observable& obs, const NumericConfig& cfg = {});

/// Effect(a) = sum_k K†K; always a valid POVM.
POVM induced_povm(const KrausInstrument& instr, const NumericConfig& cfg = {});

/// Unnormalized branch map I{a}ρ = sum_k K ρ K†.
Matrix apply_outcome(const KrausInstrument& instr, const Matrix& rho, int outcome_index);

/// p(a) = Tr[I{a}ρ], summing to 1.
std::vector<std::pair<double, double>> output_distribution(const KrausInstrument& instr,
                                                           const DensityOperator& state);

/// ρ_a = I{a}ρ / p(a); throws OutcomeProbabilityZero when p(a) is below the floor.
DensityOperator output_state(const KrausInstrument& instr, const DensityOperator& state,
                             double outcome, const NumericConfig& cfg = {});

/// Nonselective operation T(ρ) = sum_a I{a}ρ.
DensityOperator nonselective_apply(const KrausInstrument& instr,
                                   const DensityOperator& state,
                                   const NumericConfig& cfg = {});

/// Dual (Heisenberg picture) map on a raw operator: T*(X) = sum K† X K.
Matrix dual_apply_matrix(const KrausInstrument& instr, const Matrix& x);

/// Dual map on an observable.
Observable dual_apply(const KrausInstrument& instr, const Observable& obs,
                      const NumericConfig& cfg = {});

/// The POVM T*E^B, one effect per distinct eigenvalue of b.
POVM dual_spectral_povm(const KrausInstrument& instr, const Observable& b,
                        const NumericConfig& cfg = {});

}  // namespace qinstr
