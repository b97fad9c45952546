#include <doctest.h>

#include "qinstr/random.hpp"
#include "qinstr/uncertainty.hpp"

using namespace qinstr;

TEST_CASE("spectral measurement of A has zero noise") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 10; ++t) {
    const Observable a = random_hermitian(3, rng);
    const POVM e = spectral_povm(a);
    CHECK(assess_noise(a, e, random_density(3, rng)).rms_noise <= 1e-10);
  }
}

TEST_CASE("coin POVM against sigma_z") {
  const POVM coin({1.0, -1.0},
                  {0.5 * Matrix::Identity(2, 2), 0.5 * Matrix::Identity(2, 2)});
  const Observable z(pauli_z(), "Z");
  const NoiseAssessment na = assess_noise(z, coin, pure_state(ket0()));
  // O = 0, so n = -sigma_z with mean -1 on |0>, and eps^2 = <I + sigma_z^2> = 2
  CHECK(max_norm(na.mean_noise_operator.matrix + pauli_z()) < 1e-12);
  CHECK(na.mean_noise == doctest::Approx(-1.0));
  CHECK(na.rms_noise == doctest::Approx(std::sqrt(2.0)));

  const NoiseClass cls = classify_noise(z, coin);
  CHECK_FALSE(cls.uncorrelated);
}

TEST_CASE("label-shifted spectral measurement has scalar noise") {
  const Observable z(pauli_z(), "Z");
  const POVM e = spectral_povm(z);
  std::vector<double> shifted;
  for (double a : e.outcomes) shifted.push_back(a + 1.0);
  const POVM shifted_povm(shifted, e.effects);

  std::mt19937_64 rng(3);
  const NoiseAssessment na = assess_noise(z, shifted_povm, random_density(2, rng));
  CHECK(max_norm(na.mean_noise_operator.matrix - Matrix::Identity(2, 2)) < 1e-12);

  const NoiseClass cls = classify_noise(z, shifted_povm);
  CHECK(cls.uncorrelated);
  CHECK_FALSE(cls.unbiased);
  CHECK(cls.offset == doctest::Approx(1.0));
}

TEST_CASE("disturbance of sigma_x under the projective S_z instrument") {
  const KrausInstrument lz = lueders(Observable(pauli_z(), "Z"));
  const DisturbanceAssessment da = assess_disturbance(
      Observable(pauli_x(), "X"), lz, pure_state(ket_plus()));
  // T* E^{sigma_x}(+-1) = I/2, so the dual POVM is the coin: eta = sqrt(2)
  CHECK(da.rms_disturbance == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("zero-noise equivalence certificate") {
  const Observable z(pauli_z(), "Z");
  const NumericConfig cfg;

  SUBCASE("spectral case") {
    const ZeroNoiseReport r = zero_noise_equivalence(z, spectral_povm(z), cfg);
    CHECK(r.is_spectral);
    for (double eps : r.eps_on_basis) CHECK(eps <= 1e-10);
    CHECK(r.eps_on_faithful <= 1e-10);
  }
  SUBCASE("coin POVM is far from spectral") {
    const POVM coin({1.0, -1.0},
                    {0.5 * Matrix::Identity(2, 2), 0.5 * Matrix::Identity(2, 2)});
    const ZeroNoiseReport r = zero_noise_equivalence(z, coin, cfg);
    CHECK_FALSE(r.is_spectral);
    // O = 0 and O^(2) = I, so eps^2 = <I + sigma_z^2> = 2 on any state
    CHECK(r.eps_on_faithful == doctest::Approx(std::sqrt(2.0)));
  }
  SUBCASE("wrong observable against a projective measurement") {
    const ZeroNoiseReport r =
        zero_noise_equivalence(Observable(pauli_x(), "X"), spectral_povm(z), cfg);
    CHECK_FALSE(r.is_spectral);
    bool some_positive = false;
    for (double eps : r.eps_on_basis)
      if (eps > 1e-6) some_positive = true;
    CHECK(some_positive);
  }
}

TEST_CASE("noise moments agree with a sampling-free direct oracle") {
  // Oracle: expand eps^2 = sum_a <(a - A) E_a (a - A)>-style moment sums directly.
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    const int d = 2 + (t % 3);
    const POVM p = random_povm(d, 3, rng);
    const Observable a = random_hermitian(d, rng);
    const DensityOperator rho = random_density(d, rng);

    double direct = 0.0;
    for (std::size_t i = 0; i < p.outcomes.size(); ++i) {
      const Matrix shift = p.outcomes[i] * Matrix::Identity(d, d) - a.matrix;
      direct += ((0.5 * (shift * p.effects[i] + p.effects[i] * shift) * shift) *
                 rho.matrix)
                    .trace()
                    .real();
    }
    const double eps = assess_noise(a, p, rho).rms_noise;
    CHECK(eps * eps == doctest::Approx(direct).epsilon(1e-8));
  }
}
