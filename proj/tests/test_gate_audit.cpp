#include <doctest.h>

#include "qinstr/gate_audit.hpp"
#include "qinstr/random.hpp"

using namespace qinstr;

namespace {

GateImplementation random_conserving_impl(int n_qubits, std::mt19937_64& rng) {
  const Observable lx = ancilla_spin_x(n_qubits);
  const Matrix u = conserving_unitary(lx, rng);
  return GateImplementation(lx.dim(), u, random_pure(lx.dim(), rng));
}

}  // namespace

TEST_CASE("SWAP coupling with a |0> ancilla is the constant channel") {
  Matrix swap = Matrix::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = 1.0;
  swap(1, 2) = swap(2, 1) = 1.0;
  const GateImplementation impl(2, swap, ket0());
  const KrausInstrument channel = channel_of(impl);
  std::mt19937_64 rng(3);
  const Matrix rho = random_density(2, rng).matrix;
  const Matrix out = apply_outcome(channel, rho, 0);
  CHECK(max_norm(out - ket0() * ket0().adjoint()) < 1e-12);
}

TEST_CASE("transition vectors of the ideal decoupled Hadamard") {
  std::mt19937_64 rng(5);
  const Vector xi = random_pure(3, rng);
  const GateImplementation impl(3, tensor(hadamard(), identity(3)), xi);
  const EVectors e = e_vectors(impl);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(max_norm(e.e00 - s * xi) < 1e-12);
  CHECK(max_norm(e.e01 - s * xi) < 1e-12);
  CHECK(max_norm(e.e10 - s * xi) < 1e-12);
  CHECK(max_norm(e.e11 + s * xi) < 1e-12);
  CHECK(e.e00.squaredNorm() + e.e01.squaredNorm() == doctest::Approx(1.0));
  CHECK(e.e10.squaredNorm() + e.e11.squaredNorm() == doctest::Approx(1.0));
}

TEST_CASE("basis fidelities") {
  SUBCASE("identity coupling gives 1/2 on both basis states") {
    const GateImplementation impl(2, Matrix::Identity(4, 4), ket0());
    const auto [f0, f1] = basis_fidelities(impl);
    CHECK(f0 == doctest::Approx(0.5));
    CHECK(f1 == doctest::Approx(0.5));
  }
  SUBCASE("ideal Hadamard gives 1 on both") {
    const GateImplementation impl(2, tensor(hadamard(), identity(2)), ket0());
    const auto [f0, f1] = basis_fidelities(impl);
    CHECK(f0 == doctest::Approx(1.0));
    CHECK(f1 == doctest::Approx(1.0));
  }
  SUBCASE("both defining identities agree on random implementations") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
      const GateImplementation impl(2, random_unitary(4, rng), random_pure(2, rng));
      const EVectors e = e_vectors(impl);
      const double f0 = 0.5 * (e.e00 + e.e01).squaredNorm();
      const double f0_alt = 1.0 - 0.5 * (e.e00 - e.e01).squaredNorm();
      const double f1 = 0.5 * (e.e10 - e.e11).squaredNorm();
      const double f1_alt = 1.0 - 0.5 * (e.e10 + e.e11).squaredNorm();
      CHECK(std::abs(f0 - f0_alt) <= 1e-10);
      CHECK(std::abs(f1 - f1_alt) <= 1e-10);
      CHECK_NOTHROW(basis_fidelities(impl));
    }
  }
}

TEST_CASE("worst-case gate fidelity") {
  OptimizerConfig opt;
  opt.cb_samples = 50;

  SUBCASE("identity coupling has fidelity 0") {
    const GateImplementation impl(2, Matrix::Identity(4, 4), ket0());
    const FidelityReport r = gate_fidelity(impl, opt);
    CHECK(r.gate_fidelity <= 1e-3);
  }
  SUBCASE("ideal Hadamard has fidelity 1") {
    const GateImplementation impl(2, tensor(hadamard(), identity(2)), ket0());
    const FidelityReport r = gate_fidelity(impl, opt);
    CHECK(r.gate_fidelity == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.cb_lower_bound <= 1e-9);
  }
  SUBCASE("grid value never exceeds the refined value") {
    std::mt19937_64 rng(11);
    const GateImplementation impl(2, random_unitary(4, rng), random_pure(2, rng));
    OptimizerConfig coarse = opt;
    coarse.refine_iters = 0;
    coarse.refine_starts = 0;
    const double refined = gate_fidelity(impl, opt).gate_fidelity;
    const double grid_only = gate_fidelity(impl, coarse).gate_fidelity;
    CHECK(refined <= grid_only + 1e-12);
  }
}

TEST_CASE("conserving unitaries commute with the total x-charge") {
  std::mt19937_64 rng(13);
  for (int n : {1, 2}) {
    const Observable lx = ancilla_spin_x(n);
    const Matrix u = conserving_unitary(lx, rng);
    const Matrix total = tensor(spin_x(), identity(lx.dim())) +
                         tensor(identity(2), lx.matrix);
    CHECK(max_norm(commutator(u, total)) <= 1e-10);
    CHECK(is_unitary(u, 1e-10));
  }
}

TEST_CASE("S_z measurement noise after the gate") {
  SUBCASE("ideal Hadamard maps S_z to S_x exactly") {
    const GateImplementation impl(2, tensor(hadamard(), identity(2)), ket0());
    std::mt19937_64 rng(17);
    const SzNoise noise = sz_noise(impl, random_pure(2, rng));
    CHECK(noise.eps_sq <= 1e-12);
    CHECK(noise.eps_sq_vector <= 1e-12);
  }
  SUBCASE("identity coupling in the S_y eigenstate") {
    const GateImplementation impl(2, Matrix::Identity(4, 4), ket0());
    const SzNoise noise = sz_noise(impl, ket_sy_plus());
    CHECK(noise.eps_sq == doctest::Approx(0.5));
    CHECK(noise.eps_sq_vector == doctest::Approx(0.5));
  }
  SUBCASE("the two routes and the fidelity identity agree on conserving models") {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 30; ++t) {
      const GateImplementation impl = random_conserving_impl(1 + (t % 2), rng);
      const Vector psi = random_pure(2, rng);
      const SzNoise noise = sz_noise(impl, psi);
      CHECK(std::abs(noise.eps_sq - noise.eps_sq_vector) <= 1e-9);
      const auto [f0, f1] = basis_fidelities(impl);
      const double identity_form =
          1.0 - std::norm(psi(0)) * f0 - std::norm(psi(1)) * f1;
      CHECK(std::abs(noise.eps_sq - identity_form) <= 1e-9);
    }
  }
}

TEST_CASE("error floors are exact formula evaluations") {
  CHECK(bound_coherent(0.0).floor == doctest::Approx(0.25));
  CHECK(bound_coherent(1.0).floor == doctest::Approx(0.05));
  CHECK(bound_spin(1, true).floor == doctest::Approx(0.125));
  CHECK(bound_spin(1, false).floor == doctest::Approx(0.125));
  CHECK(bound_spin(2, true).floor == doctest::Approx(0.05));
  CHECK(bound_spin(5, true).floor == doctest::Approx(1.0 / 104.0));
  CHECK(bound_spin(5, false).floor == doctest::Approx(1.0 / 24.0));
  CHECK(bound_spin(5, false).floor > bound_spin(5, true).floor);
}

TEST_CASE("field-state floors") {
  const int cutoff = 16;
  SUBCASE("number state") {
    Matrix rho = Matrix::Zero(cutoff + 1, cutoff + 1);
    rho(3, 3) = 1.0;
    const BoundReport r = bound_field_state(DensityOperator(rho), cutoff);
    CHECK(r.scenario == BoundScenario::Number);
    CHECK(r.floor == doctest::Approx(0.25));
  }
  SUBCASE("thermal mixture") {
    Matrix rho = Matrix::Zero(cutoff + 1, cutoff + 1);
    double norm = 0.0;
    for (int i = 0; i <= cutoff; ++i) norm += std::pow(0.5, i);
    for (int i = 0; i <= cutoff; ++i) rho(i, i) = std::pow(0.5, i) / norm;
    const BoundReport r = bound_field_state(DensityOperator(rho), cutoff);
    CHECK(r.scenario == BoundScenario::Number);
    CHECK(r.floor == doctest::Approx(0.25));
  }
  SUBCASE("truncated coherent state approaches the analytic floor") {
    Vector alpha = Vector::Zero(cutoff + 1);
    double fact = 1.0;
    for (int i = 0; i <= cutoff; ++i) {
      if (i > 0) fact *= i;
      alpha(i) = std::exp(-0.5) * std::pow(1.0, i) / std::sqrt(fact);
    }
    alpha /= alpha.norm();
    const BoundReport r =
        bound_field_state(pure_state(alpha, NumericConfig{}), cutoff);
    CHECK(r.scenario == BoundScenario::Thermal);
    CHECK(std::abs(r.floor - 0.05) <= 1e-3);
  }
}

TEST_CASE("single-qubit conserving implementations respect the floor") {
  std::mt19937_64 rng(23);
  OptimizerConfig opt;
  opt.cb_samples = 1;
  for (int t = 0; t < 20; ++t) {
    const GateImplementation impl = random_conserving_impl(1, rng);
    const FidelityReport r = gate_fidelity(impl, opt);
    const double achieved = 1.0 - r.gate_fidelity * r.gate_fidelity;
    CHECK(achieved >= 0.125 - 1e-6);
  }
}

TEST_CASE("embedding into one more qubit preserves conservation and the channel") {
  std::mt19937_64 rng(29);
  const GateImplementation impl = random_conserving_impl(1, rng);
  const GateImplementation big = embed_extra_qubit(impl);
  CHECK(big.ancilla_dim == 4);
  const Observable lx2 = ancilla_spin_x(2);
  const Matrix total =
      tensor(spin_x(), identity(4)) + tensor(identity(2), lx2.matrix);
  CHECK(max_norm(commutator(big.unitary, total)) <= 1e-10);

  OptimizerConfig opt;
  opt.cb_samples = 1;
  const double f_small = gate_fidelity(impl, opt).gate_fidelity;
  const double f_big = gate_fidelity(big, opt).gate_fidelity;
  CHECK(f_small == doctest::Approx(f_big).epsilon(1e-6));
}

TEST_CASE("optimizer respects the floor and improves with resources") {
  const NumericConfig cfg;
  OptimizerConfig opt;
  opt.cb_samples = 1;
  const OptimizeResult r1 =
      optimize_fidelity(ancilla_spin_x(1), 60, 8, 71, {}, opt, cfg);
  const double e1 = 1.0 - std::pow(r1.fidelity.gate_fidelity, 2);
  CHECK(e1 >= 0.125 - 1e-6);

  const OptimizeResult r2 = optimize_fidelity(
      ancilla_spin_x(2), 60, 8, 71, {embed_extra_qubit(r1.best, cfg)}, opt, cfg);
  const double e2 = 1.0 - std::pow(r2.fidelity.gate_fidelity, 2);
  CHECK(e2 >= 0.05 - 1e-6);
  // warm-started search can only improve on the embedded solution
  CHECK(e2 <= e1 + 1e-6);
}
