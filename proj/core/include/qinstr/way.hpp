#pragma once

#include "qinstr/model.hpp"
#include "qinstr/error_metrics.hpp"

namespace qinstr {

/// Additive conserved quantities on the system and the ancilla.
struct ConservationSpec {
  Observable system_charge;   // L1
  Observable ancilla_charge;  // L2
};

struct WayReport {
  double achieved_noise_sq;      // ε(A)²
  double bound;                  // rhs of the quantitative bound
  double margin;                 // achieved − bound
  double numerator;              // |<[A,L1]>|²
  double delta_l1_sq;
  double delta_l2_sq;
  double conservation_residual;  // ‖[U, L̃1+L̃2]‖_max
  double meter_residual;         // ‖[M, L2]‖_max
};

/// Max-norms of [U, L̃1+L̃2] and [M, L2]; zero certifies the bound's hypotheses.
std::pair<double, double> check_conservation(const MeasurementModel& model,
                                             const ConservationSpec& spec);

/// rhs of ε(A)² ≥ |<[A,L1]>|² / (4(ΔL1)² + 4(ΔL2)²), statistics in ρ⊗σ.
/// Returns +infinity when the denominator degenerates with nonzero numerator.
double way_bound(const Observable& a, const ConservationSpec& spec,
                 const DensityOperator& state, const DensityOperator& probe,
                 const NumericConfig& cfg = {});

/// Full audit: achieved noise from the model's instrument vs the bound, plus the
/// hypothesis residuals. Margin ≥ 0 is only guaranteed when both residuals vanish.
WayReport way_audit(const MeasurementModel& model, const Observable& a,
                    const ConservationSpec& spec, const DensityOperator& state,
                    const NumericConfig& cfg = {});

}  // namespace qinstr
