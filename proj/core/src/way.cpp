#include "qinstr/way.hpp"

#include <cmath>
#include <limits>

namespace qinstr {

std::pair<double, double> check_conservation(const MeasurementModel& model,
                                             const ConservationSpec& spec) {
  if (spec.system_charge.dim() != model.system_dim ||
      spec.ancilla_charge.dim() != model.ancilla_dim)
    throw DimensionMismatch("check_conservation: charge dimension mismatch");
  const Matrix total =
      tensor(spec.system_charge.matrix, identity(model.ancilla_dim)) +
      tensor(identity(model.system_dim), spec.ancilla_charge.matrix);
  const double unitary_residual = max_norm(commutator(model.unitary, total));
  const double meter_residual =
      max_norm(commutator(model.meter.matrix, spec.ancilla_charge.matrix));
  return {unitary_residual, meter_residual};
}

double way_bound(const Observable& a, const ConservationSpec& spec,
                 const DensityOperator& state, const DensityOperator& probe,
                 const NumericConfig& cfg) {
  if (a.dim() != spec.system_charge.dim() || a.dim() != state.dim() ||
      probe.dim() != spec.ancilla_charge.dim())
    throw DimensionMismatch("way_bound: dimension mismatch");
  const double numerator =
      std::pow(std::abs(commutator_mean(a, spec.system_charge, state)), 2);
  const double dl1 = mean_stddev(spec.system_charge, state).second;
  const double dl2 = mean_stddev(spec.ancilla_charge, probe).second;
  const double denom = 4 * dl1 * dl1 + 4 * dl2 * dl2;
  if (denom <= 1e-14)
    return numerator > cfg.slack_tol ? std::numeric_limits<double>::infinity() : 0.0;
  return numerator / denom;
}

WayReport way_audit(const MeasurementModel& model, const Observable& a,
                    const ConservationSpec& spec, const DensityOperator& state,
                    const NumericConfig& cfg) {
  if (a.dim() != model.system_dim || state.dim() != model.system_dim)
    throw DimensionMismatch("way_audit: dimension mismatch");

  const KrausInstrument instr = instrument_from_model(model, cfg);
  const POVM povm = induced_povm(instr, cfg);
  const NoiseAssessment noise = assess_noise(a, povm, state);

  WayReport r{};
  r.achieved_noise_sq = noise.rms_noise * noise.rms_noise;
  r.bound = way_bound(a, spec, state, model.ancilla_state, cfg);
  r.margin = r.achieved_noise_sq - r.bound;
  r.numerator = std::pow(std::abs(commutator_mean(a, spec.system_charge, state)), 2);
  const double dl1 = mean_stddev(spec.system_charge, state).second;
  const double dl2 = mean_stddev(spec.ancilla_charge, model.ancilla_state).second;
  r.delta_l1_sq = dl1 * dl1;
  r.delta_l2_sq = dl2 * dl2;
  std::tie(r.conservation_residual, r.meter_residual) = check_conservation(model, spec);
  return r;
}

}  // namespace qinstr
