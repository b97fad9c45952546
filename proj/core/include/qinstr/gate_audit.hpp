#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "qinstr/way.hpp"

namespace qinstr {

/// Physical implementation (U, ξ) of the Hadamard gate: U on qubit ⊗ ancilla,
/// ξ the ancilla preparation.
struct GateImplementation {
  int ancilla_dim;
  Matrix unitary;  // 2·ancilla_dim square
  Vector ancilla_vector;

  GateImplementation(int anc_dim, Matrix u, Vector xi, const NumericConfig& cfg = {});
};

/// The four transition vectors U|a>|ξ> = Σ_b |b>|E^a_b>; not normalized individually,
/// but ‖e_{a0}‖² + ‖e_{a1}‖² = 1.
struct EVectors {
  Vector e00, e01, e10, e11;
};

struct FidelityReport {
  double f0_sq;
  double f1_sq;
  double gate_fidelity;
  Vector worst_state;
  double cb_lower_bound;
};

enum class BoundScenario { Coherent, Number, Thermal, SpinEntangled, SpinSeparable };

struct BoundReport {
  BoundScenario scenario;
  double parameter;  // <N> or n
  double floor;      // lower bound on 1 − F²
  std::optional<double> achieved_error;
  double delta_lx_sq;
};

struct OptimizerConfig {
  int grid = 64;             // Bloch grid per angle
  int refine_iters = 200;    // Nelder-Mead steps per refinement start
  int refine_starts = 8;     // grid cells fed to local refinement
  int cb_samples = 1000;
  std::uint64_t seed = 12345;
};

/// The trace-preserving channel ρ ↦ Tr_A[U(ρ⊗|ξ><ξ|)U†], one outcome.
KrausInstrument channel_of(const GateImplementation& impl, const NumericConfig& cfg = {});

EVectors e_vectors(const GateImplementation& impl);

/// F(|0>)² and F(|1>)²; both printed identities checked internally.
std::pair<double, double> basis_fidelities(const GateImplementation& impl,
                                           const NumericConfig& cfg = {});

/// inf_ψ F(ψ) over pure qubit inputs, by Bloch grid plus local refinement; also a
/// sampled lower bound on the CB distance (qubit ⊗ 2-level reference).
FidelityReport gate_fidelity(const GateImplementation& impl,
                             const OptimizerConfig& opt = {},
                             const NumericConfig& cfg = {});

/// ε(S_z)² for the measure-S_x-after-U process, by two independent routes which must
/// agree: the moment formula on Π₀ and the vector-norm form.
struct SzNoise {
  double eps_sq;         // moment-formula value
  double eps_sq_vector;  // ‖S̃_x U|ψ⊗ξ> − U S̃_z|ψ⊗ξ>‖²
};

SzNoise sz_noise(const GateImplementation& impl, const Vector& psi,
                 const NumericConfig& cfg = {});

/// Unitary commuting with S_x⊗I + I⊗L_x: block-diagonal in the total-charge
/// eigenbasis with a Haar-random (seeded) unitary on each eigenspace.
Matrix conserving_unitary(const Observable& ancilla_charge, std::mt19937_64& rng,
                          const NumericConfig& cfg = {});

/// General form for an arbitrary system charge.
Matrix conserving_unitary(const Observable& system_charge, const Observable& ancilla_charge,
                          std::mt19937_64& rng, const NumericConfig& cfg = {});

BoundReport bound_coherent(double mean_photons);
BoundReport bound_spin(int n, bool entangled);

/// Field ancilla on a truncated Fock space: number-diagonal states floor at 1/4,
/// otherwise 1/(4 + 16(ΔN)²).
BoundReport bound_field_state(const DensityOperator& field_state, int cutoff,
                              const NumericConfig& cfg = {});

struct OptimizeResult {
  GateImplementation best;
  FidelityReport fidelity;
  BoundReport report;
};

/// Random-restart hill climbing over conserving unitaries and ancilla vectors,
/// maximizing the gate fidelity. Warm starts seed extra restarts (an (n−1)-qubit
/// solution embeds as U⊗I and stays conserving).
OptimizeResult optimize_fidelity(const Observable& ancilla_charge, int iterations,
                                 int restarts, std::uint64_t seed,
                                 const std::vector<GateImplementation>& warm_starts = {},
                                 const OptimizerConfig& opt = {},
                                 const NumericConfig& cfg = {});

/// x-components of total ancilla spin for n qubits, L_x = Σ_j S_x^{(j)}.
Observable ancilla_spin_x(int n_qubits);

/// Embed an implementation into one more ancilla qubit as U⊗I, ξ⊗|0>.
GateImplementation embed_extra_qubit(const GateImplementation& impl,
                                     const NumericConfig& cfg = {});

}  // namespace qinstr
