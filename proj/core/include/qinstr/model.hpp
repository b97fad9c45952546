#pragma once

#include "qinstr/instrument.hpp"

namespace qinstr {

/// Indirect measurement model (ancilla space, probe state, coupling unitary, meter).
struct MeasurementModel {
  int system_dim;
  int ancilla_dim;
  DensityOperator ancilla_state;  // on the ancilla
  Matrix unitary;                 // on system ⊗ ancilla
  Observable meter;               // on the ancilla

  MeasurementModel(int sys_dim, int anc_dim, DensityOperator sigma, Matrix u,
                   Observable m, const NumericConfig& cfg = {});
};

/// I{a}ρ = Tr_K{[I⊗E^M{a}] U(ρ⊗σ)U†}, returned as an explicit Kraus family.
KrausInstrument instrument_from_model(const MeasurementModel& model,
                                      const NumericConfig& cfg = {});

/// Realization with a pure probe: V|ψ> = Σ_{a,k} (K_{a,k}|ψ>)⊗|a,k>, completed to a
/// unitary by deterministic Gram-Schmidt over ascending basis vectors.
MeasurementModel dilate_instrument(const KrausInstrument& instr,
                                   const NumericConfig& cfg = {});

/// Stinespring dilation of a one-outcome trace-preserving channel.
MeasurementModel dilate_channel(const KrausInstrument& channel,
                                const NumericConfig& cfg = {});

/// Isometric embedding realizing a POVM as a spectral measurement upstairs.
struct NaimarkExtension {
  int extended_dim;
  Matrix isometry;  // extended_dim x dim, V†V = I
  Observable extended_observable;
};

/// Block construction: V stacks sqrt(effect_a); C has eigenvalue a on block a.
/// Projective POVMs get the trivial extension V = I.
NaimarkExtension naimark_extension(const POVM& povm, const NumericConfig& cfg = {});

}  // namespace qinstr
