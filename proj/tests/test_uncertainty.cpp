#include <doctest.h>

#include "qinstr/random.hpp"
#include "qinstr/uncertainty.hpp"

using namespace qinstr;

namespace {

void check_all_links(const ChainReport& r, double tol = 1e-8) {
  for (const auto& link : r.links) CHECK(link.slack >= -tol);
  CHECK(r.holds);
}

JointPOVM arthurs_kelly_joint() {
  // Unbiased simultaneous (sigma_z, sigma_x) measurement: effects
  // (I + x*l*sigma_z + y*m*sigma_x)/4 with l = m = 1/sqrt(2), labels rescaled
  // to x/l, y/m so both marginal moment operators hit the target exactly.
  const double l = 1.0 / std::sqrt(2.0);
  std::vector<std::pair<double, double>> outcomes;
  std::vector<Matrix> effects;
  for (int x : {1, -1})
    for (int y : {1, -1}) {
      outcomes.emplace_back(x / l, y / l);
      effects.push_back(0.25 * (Matrix::Identity(2, 2) + x * l * pauli_z() +
                                y * l * pauli_x()));
    }
  return JointPOVM(outcomes, effects);
}

}  // namespace

TEST_CASE("direct joint chain on the dilated commuting pair") {
  // A = sigma_z (x) I, B = sigma_x (x) I measured via C = sigma_z (x) I and
  // D = I (x) sigma_x in |0><0| (x) |+><+|: eps(A) = 0 and eps(B) = sqrt(2).
  const Observable a(tensor(pauli_z(), identity(2)), "A");
  const Observable b(tensor(pauli_x(), identity(2)), "B");
  const Observable c(tensor(pauli_z(), identity(2)), "C");
  const Observable d(tensor(identity(2), pauli_x()), "D");
  const DensityOperator state = pure_state(tensor(ket0(), ket_plus()));

  const ChainReport r = joint_direct_chain(a, b, c, d, state);
  CHECK(r.terms.at("eps_A") == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.terms.at("eps_B") == doctest::Approx(std::sqrt(2.0)));
  check_all_links(r);
}

TEST_CASE("direct joint chain rejects non-commuting measured pairs") {
  const Observable a(pauli_z(), "A"), b(pauli_x(), "B");
  CHECK_THROWS_AS(
      joint_direct_chain(a, b, a, b, pure_state(ket0())),
      NonCommutingPair);
}

TEST_CASE("direct joint chain holds on random commuting pairs") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 200; ++t) {
    const int d = 2 + (t % 3);
    auto [c, dd] = random_commuting_pair(d, rng);
    const ChainReport r = joint_direct_chain(random_hermitian(d, rng),
                                             random_hermitian(d, rng), c, dd,
                                             random_density(d, rng));
    check_all_links(r);
  }
}

TEST_CASE("joint POVM chain with one noisy margin") {
  // Effects E^{sigma_z}(x) * 1/2 over y: first marginal spectral, second trivial.
  const POVM ez = spectral_povm(Observable(pauli_z(), "Z"));
  std::vector<std::pair<double, double>> outcomes;
  std::vector<Matrix> effects;
  for (std::size_t i = 0; i < ez.outcomes.size(); ++i)
    for (int y : {1, -1}) {
      outcomes.emplace_back(ez.outcomes[i], y);
      effects.push_back(0.5 * ez.effects[i]);
    }
  const JointPOVM joint(outcomes, effects);
  const Observable a(pauli_z(), "A"), b(pauli_x(), "B");
  const DensityOperator state = pure_state(ket_sy_plus());

  const ChainReport r = joint_povm_chain(a, b, joint, state);
  CHECK(r.terms.at("eps_A") <= 1e-8);
  check_all_links(r);
  // with eps(A) = 0 the chain reduces to Delta A * eps(B) >= half the commutator
  const double delta_a = r.terms.at("Delta_A");
  const double eps_b = r.terms.at("eps_B");
  CHECK(delta_a * eps_b >= r.terms.at("comm_A_B") - 1e-8);
}

TEST_CASE("joint POVM chain holds on random joint POVMs") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 200; ++t) {
    const int d = 2 + (t % 2);
    const ChainReport r =
        joint_povm_chain(random_hermitian(d, rng), random_hermitian(d, rng),
                         random_joint_povm(d, 2, 2, rng), random_density(d, rng));
    check_all_links(r);
  }
}

TEST_CASE("instrument chain on the projective S_z instrument") {
  const KrausInstrument lz = lueders(Observable(pauli_z(), "Z"));
  const Observable a(pauli_z(), "A"), b(pauli_x(), "B");

  SUBCASE("in |+><+| the final bound vanishes") {
    const ChainReport r = instrument_chain(a, b, lz, pure_state(ket_plus()));
    CHECK(r.terms.at("eps_A") <= 1e-8);
    CHECK(r.terms.at("eta_B") == doctest::Approx(std::sqrt(2.0)));
    CHECK(r.terms.at("comm_A_B") == doctest::Approx(0.0).epsilon(1e-10));
    check_all_links(r);
  }
  SUBCASE("in the S_y eigenstate the bound is 1 and Delta A carries it") {
    const ChainReport r = instrument_chain(a, b, lz, pure_state(ket_sy_plus()));
    CHECK(r.terms.at("comm_A_B") == doctest::Approx(1.0));
    CHECK(r.terms.at("Delta_A") == doctest::Approx(1.0));
    check_all_links(r);
  }
}

TEST_CASE("instrument chain holds on random instruments") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 300; ++t) {
    const int d = 2 + (t % 3);
    const ChainReport r = instrument_chain(
        random_hermitian(d, rng), random_hermitian(d, rng),
        random_instrument(d, 2, 1 + (t % 2), rng), random_density(d, rng));
    check_all_links(r);
  }
}

TEST_CASE("Heisenberg conditions") {
  SUBCASE("measuring A with its own projective instrument") {
    std::mt19937_64 rng(43);
    const Observable a = random_hermitian(3, rng);
    const HeisenbergReport h =
        heisenberg_check(a, a, lueders(a), random_density(3, rng));
    CHECK(h.condition_i);
    CHECK(h.condition_ii);
    CHECK(h.condition_iii);
    CHECK(h.heisenberg_holds);
  }
  SUBCASE("label-shifted projective instrument is uncorrelated but biased") {
    const Observable z(pauli_z(), "Z");
    const KrausInstrument lz = lueders(z);
    KrausInstrument shifted(
        {lz.outcomes[0] + 1.0, lz.outcomes[1] + 1.0}, lz.kraus_sets);
    const HeisenbergReport h =
        heisenberg_check(z, z, shifted, pure_state(ket_plus()));
    CHECK(h.condition_ii);
    CHECK_FALSE(h.condition_iii);
    CHECK(h.heisenberg_holds);
  }
  SUBCASE("generic instruments still satisfy the chain even if conditions fail") {
    std::mt19937_64 rng(47);
    for (int t = 0; t < 50; ++t) {
      const Observable a = random_hermitian(2, rng);
      const Observable b = random_hermitian(2, rng);
      const KrausInstrument instr = random_instrument(2, 2, 1, rng);
      const DensityOperator rho = random_density(2, rng);
      const HeisenbergReport h = heisenberg_check(a, b, instr, rho);
      if (h.condition_i || h.condition_ii || h.condition_iii)
        CHECK(h.heisenberg_holds);
      check_all_links(instrument_chain(a, b, instr, rho));
    }
  }
}

TEST_CASE("bound for non-disturbing instruments") {
  const KrausInstrument lz = lueders(Observable(pauli_z(), "Z"));
  const Observable a(pauli_x(), "A"), b(pauli_z(), "B");

  SUBCASE("trivial bound in a basis state") {
    const ChainLink link = nondisturbing_bound(a, b, lz, pure_state(ket0()));
    CHECK(link.rhs == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(link.slack >= -1e-8);
  }
  SUBCASE("in the S_y eigenstate the bound is tight but holds") {
    const ChainLink link = nondisturbing_bound(a, b, lz, pure_state(ket_sy_plus()));
    CHECK(link.rhs == doctest::Approx(1.0));
    CHECK(link.lhs == doctest::Approx(std::sqrt(2.0)));
    CHECK(link.slack >= -1e-8);
  }
  SUBCASE("disturbing instruments are rejected") {
    CHECK_THROWS_AS(
        nondisturbing_bound(b, a, lz, pure_state(ket_plus())),
        DisturbanceNotZero);
  }
}

TEST_CASE("bound for precise measurements") {
  const KrausInstrument lz = lueders(Observable(pauli_z(), "Z"));
  const Observable a(pauli_z(), "A"), b(pauli_x(), "B");

  SUBCASE("projective measurement of A disturbs B at least by the commutator") {
    const ChainLink link =
        precise_measurement_bound(a, b, lz, pure_state(ket_sy_plus()));
    CHECK(link.lhs == doctest::Approx(std::sqrt(2.0)));
    CHECK(link.rhs == doctest::Approx(1.0));
    CHECK(link.slack >= -1e-8);
  }
  SUBCASE("noisy measurements are rejected") {
    CHECK_THROWS_AS(
        precise_measurement_bound(b, a, lz, pure_state(ket_plus())),
        NoiseNotZero);
  }
  SUBCASE("holds for random projective instruments") {
    std::mt19937_64 rng(53);
    for (int t = 0; t < 100; ++t) {
      const Observable a2 = random_hermitian(3, rng);
      const ChainLink link = precise_measurement_bound(
          a2, random_hermitian(3, rng), lueders(a2), random_density(3, rng));
      CHECK(link.slack >= -1e-8);
    }
  }
}

TEST_CASE("product bounds for uncorrelated joint measurements") {
  const Observable a(pauli_z(), "A"), b(pauli_x(), "B");
  const JointPOVM joint = arthurs_kelly_joint();

  SUBCASE("all three product links hold, the spread link with equality") {
    const DensityOperator state = pure_state(ket_sy_plus());
    const UncorrelatedProductsReport r = uncorrelated_products(a, b, joint, state);
    CHECK(r.eps_product_link.slack >= -1e-8);
    CHECK(r.deltaN_link.slack >= -1e-8);
    CHECK(r.povm_spread_link.slack >= -1e-8);
    CHECK(r.povm_spread_link.lhs == doctest::Approx(r.povm_spread_link.rhs));
  }
  SUBCASE("correlated marginals are rejected") {
    const POVM ez = spectral_povm(a);
    std::vector<std::pair<double, double>> outcomes;
    std::vector<Matrix> effects;
    for (std::size_t i = 0; i < ez.outcomes.size(); ++i)
      for (int y : {1, -1}) {
        outcomes.emplace_back(ez.outcomes[i], y);
        effects.push_back(0.5 * ez.effects[i]);
      }
    CHECK_THROWS_AS(uncorrelated_products(a, b, JointPOVM(outcomes, effects),
                                          pure_state(ket0())),
                    NotUncorrelated);
  }
}
