#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qinstr/matrix.hpp"

namespace qinstr {

/// Self-adjoint operator with a human-readable label.
struct Observable {
  Matrix matrix;
  std::string label;

  Observable(Matrix m, std::string lbl = "", const NumericConfig& cfg = {});

  int dim() const { return static_cast<int>(matrix.rows()); }
};

/// Hermitian, PSD, unit-trace operator.
struct DensityOperator {
  Matrix matrix;

  explicit DensityOperator(Matrix m, const NumericConfig& cfg = {});

  int dim() const { return static_cast<int>(matrix.rows()); }
};

/// Eigenvalues ascending, one Hermitian projector per distinct eigenvalue.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  std::vector<Matrix> projectors;
};

/// One orthonormal-basis block per distinct eigenvalue (columns span the eigenspace).
struct SpectralCluster {
  double eigenvalue;
  Matrix basis;  // dim x multiplicity
};

/// Eigenvalue clusters with gap < cfg.degeneracy_tol merged.
std::vector<SpectralCluster> spectral_clusters(const Observable& obs,
                                               const NumericConfig& cfg = {});

SpectralDecomposition spectral(const Observable& obs, const NumericConfig& cfg = {});

/// mean = Tr[Aρ], stddev = sqrt(max(0, Tr[A²ρ] − mean²)).
std::pair<double, double> mean_stddev(const Observable& obs, const DensityOperator& state);

/// Tr[(AB−BA)ρ]; purely imaginary for Hermitian A, B.
Complex commutator_mean(const Observable& a, const Observable& b,
                        const DensityOperator& state);

DensityOperator pure_state(const Vector& psi, const NumericConfig& cfg = {});
DensityOperator maximally_mixed(int dim);

// Fixed operators, ħ = 1: spin-1/2 components are S_i = σ_i/2.
Matrix identity(int dim);
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix spin_x();
Matrix spin_y();
Matrix spin_z();
Matrix hadamard();
Vector ket0();
Vector ket1();
Vector ket_plus();
Vector ket_sy_plus();  // (|0> + i|1>)/sqrt(2), the S_y = +1/2 eigenstate

}  // namespace qinstr
