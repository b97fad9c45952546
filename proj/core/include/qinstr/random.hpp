#pragma once

#include <cstdint>
#include <random>

#include "qinstr/model.hpp"
#include "qinstr/way.hpp"

namespace qinstr {

// Seeded generators for the randomized sweeps. Everything draws from the caller's
// engine so sweeps stay reproducible.

Matrix random_ginibre(int rows, int cols, std::mt19937_64& rng);
Matrix random_unitary(int dim, std::mt19937_64& rng);
Observable random_hermitian(int dim, std::mt19937_64& rng);
DensityOperator random_density(int dim, std::mt19937_64& rng);
Vector random_pure(int dim, std::mt19937_64& rng);

/// Random instrument: Ginibre Kraus draws renormalized to trace preservation.
KrausInstrument random_instrument(int dim, int n_outcomes, int kraus_per_outcome,
                                  std::mt19937_64& rng);

/// Random POVM via S^{-1/2} E S^{-1/2} normalization of random PSD effects.
POVM random_povm(int dim, int n_outcomes, std::mt19937_64& rng);

JointPOVM random_joint_povm(int dim, int nx, int ny, std::mt19937_64& rng);

/// Commuting pair built by conjugating a diagonal pair with one random unitary.
std::pair<Observable, Observable> random_commuting_pair(int dim, std::mt19937_64& rng);

/// Indirect measurement model obeying [U, L̃1+L̃2] = 0 and [M, L2] = 0: U is
/// block-synthesized on the total-charge eigenspaces, M is a random function of L2.
struct ConservingModel {
  MeasurementModel model;
  ConservationSpec charges;
};

ConservingModel random_conserving_model(int system_dim, int ancilla_dim,
                                        std::mt19937_64& rng,
                                        const NumericConfig& cfg = {});

}  // namespace qinstr
