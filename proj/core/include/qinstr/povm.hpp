#pragma once

#include <utility>
#include <vector>

#include "qinstr/operators.hpp"

namespace qinstr {

/// Outcome-labeled positive effects summing to identity.
struct POVM {
  std::vector<double> outcomes;
  std::vector<Matrix> effects;

  POVM(std::vector<double> outs, std::vector<Matrix> effs,
       const NumericConfig& cfg = {});

  int dim() const { return static_cast<int>(effects.front().rows()); }
  int n_outcomes() const { return static_cast<int>(outcomes.size()); }
};

/// POVM with outcomes in R^2.
struct JointPOVM {
  std::vector<std::pair<double, double>> outcomes;
  std::vector<Matrix> effects;

  JointPOVM(std::vector<std::pair<double, double>> outs, std::vector<Matrix> effs,
            const NumericConfig& cfg = {});

  int dim() const { return static_cast<int>(effects.front().rows()); }
};

/// n-th moment operator, sum_a a^n * effect(a).
Observable moment_operator(const POVM& povm, int n);

/// Mean Tr[O(Π)ρ] and stddev sqrt(max(0, <O²> − <O>²)).
std::pair<double, double> povm_mean_stddev(const POVM& povm, const DensityOperator& state);

/// Marginals over the second and first coordinate respectively.
std::pair<POVM, POVM> marginals(const JointPOVM& joint, const NumericConfig& cfg = {});

/// The spectral measure E^A as a POVM (one projector per distinct eigenvalue).
POVM spectral_povm(const Observable& obs, const NumericConfig& cfg = {});

}  // namespace qinstr
