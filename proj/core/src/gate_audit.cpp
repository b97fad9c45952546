#include "qinstr/gate_audit.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>

#include "qinstr/random.hpp"

namespace qinstr {

namespace {

Vector bloch_state(double theta, double phi) {
  Vector psi(2);
  psi << std::cos(theta / 2.0),
      std::exp(Complex(0, phi)) * std::sin(theta / 2.0);
  return psi;
}

/// F(ψ)² = Σ_j |<Hψ|K_j|ψ>|² for the implementation's Kraus family.
double fidelity_sq(const std::vector<Matrix>& kraus, const Vector& psi) {
  const Vector target = hadamard() * psi;
  double f = 0.0;
  for (const auto& k : kraus) f += std::norm(target.dot(k * psi));
  return f;
}

std::vector<Matrix> channel_kraus(const GateImplementation& impl) {
  const int k = impl.ancilla_dim;
  std::vector<Matrix> kraus;
  Matrix in(2 * k, 2);
  in.setZero();
  in.block(0, 0, k, 1) = impl.ancilla_vector;
  in.block(k, 1, k, 1) = impl.ancilla_vector;
  const Matrix w = impl.unitary * in;  // columns U(|a>⊗ξ)
  for (int j = 0; j < k; ++j) {
    Matrix m(2, 2);
    for (int b = 0; b < 2; ++b)
      for (int a = 0; a < 2; ++a) m(b, a) = w(b * k + j, a);
    kraus.push_back(std::move(m));
  }
  return kraus;
}

double trace_distance(const Matrix& x, const Matrix& y) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(x - y, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

// 2-parameter Nelder-Mead on the Bloch sphere angles.
std::pair<Eigen::Vector2d, double> nelder_mead_2d(
    const std::function<double(double, double)>& f, Eigen::Vector2d start, double scale,
    int iters) {
  std::array<Eigen::Vector2d, 3> simplex = {
      start, start + Eigen::Vector2d(scale, 0), start + Eigen::Vector2d(0, scale)};
  std::array<double, 3> vals;
  for (int i = 0; i < 3; ++i) vals[i] = f(simplex[i](0), simplex[i](1));
  for (int it = 0; it < iters; ++it) {
    std::array<int, 3> order = {0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    const Eigen::Vector2d centroid =
        0.5 * (simplex[order[0]] + simplex[order[1]]);
    const Eigen::Vector2d worst = simplex[order[2]];
    Eigen::Vector2d refl = centroid + (centroid - worst);
    double frefl = f(refl(0), refl(1));
    if (frefl < vals[order[0]]) {
      Eigen::Vector2d exp2 = centroid + 2.0 * (centroid - worst);
      double fexp = f(exp2(0), exp2(1));
      if (fexp < frefl) {
        simplex[order[2]] = exp2;
        vals[order[2]] = fexp;
      } else {
        simplex[order[2]] = refl;
        vals[order[2]] = frefl;
      }
    } else if (frefl < vals[order[1]]) {
      simplex[order[2]] = refl;
      vals[order[2]] = frefl;
    } else {
      Eigen::Vector2d contr = centroid + 0.5 * (worst - centroid);
      double fcontr = f(contr(0), contr(1));
      if (fcontr < vals[order[2]]) {
        simplex[order[2]] = contr;
        vals[order[2]] = fcontr;
      } else {
        for (int i : {order[1], order[2]}) {
          simplex[i] = simplex[order[0]] + 0.5 * (simplex[i] - simplex[order[0]]);
          vals[i] = f(simplex[i](0), simplex[i](1));
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (vals[i] < vals[best]) best = i;
  return {simplex[best], vals[best]};
}

Matrix haar_block_unitary(const std::vector<SpectralCluster>& clusters,
                          const std::vector<Matrix>& blocks) {
  const Eigen::Index dim = clusters.front().basis.rows();
  Matrix u = Matrix::Zero(dim, dim);
  for (std::size_t b = 0; b < clusters.size(); ++b)
    u += clusters[b].basis * blocks[b] * clusters[b].basis.adjoint();
  return u;
}

}  // namespace

GateImplementation::GateImplementation(int anc_dim, Matrix u, Vector xi,
                                       const NumericConfig& cfg)
    : ancilla_dim(anc_dim), unitary(std::move(u)), ancilla_vector(std::move(xi)) {
  if (ancilla_dim < 1) throw ValidationError("GateImplementation: ancilla_dim < 1");
  if (unitary.rows() != 2 * ancilla_dim || unitary.cols() != 2 * ancilla_dim)
    throw DimensionMismatch("GateImplementation: unitary must be 2*ancilla_dim square");
  if (ancilla_vector.size() != ancilla_dim)
    throw DimensionMismatch("GateImplementation: ancilla vector dimension mismatch");
  if (!is_unitary(unitary, 100 * cfg.hermiticity_tol))
    throw ValidationError("GateImplementation: U not unitary within tolerance");
  if (std::abs(ancilla_vector.norm() - 1.0) > 100 * cfg.hermiticity_tol)
    throw ValidationError("GateImplementation: ancilla vector not normalized");
}

KrausInstrument channel_of(const GateImplementation& impl, const NumericConfig& cfg) {
  return KrausInstrument({0.0}, {channel_kraus(impl)}, cfg);
}

EVectors e_vectors(const GateImplementation& impl) {
  const int k = impl.ancilla_dim;
  Vector in0 = Vector::Zero(2 * k), in1 = Vector::Zero(2 * k);
  in0.segment(0, k) = impl.ancilla_vector;
  in1.segment(k, k) = impl.ancilla_vector;
  const Vector out0 = impl.unitary * in0;
  const Vector out1 = impl.unitary * in1;
  return EVectors{out0.segment(0, k), out0.segment(k, k), out1.segment(0, k),
                  out1.segment(k, k)};
}

std::pair<double, double> basis_fidelities(const GateImplementation& impl,
                                           const NumericConfig& cfg) {
  const EVectors e = e_vectors(impl);
  const double f0 = 0.5 * (e.e00 + e.e01).squaredNorm();
  const double f0_alt = 1.0 - 0.5 * (e.e00 - e.e01).squaredNorm();
  const double f1 = 0.5 * (e.e10 - e.e11).squaredNorm();
  const double f1_alt = 1.0 - 0.5 * (e.e10 + e.e11).squaredNorm();
  if (std::abs(f0 - f0_alt) > 1e-9 || std::abs(f1 - f1_alt) > 1e-9)
    throw ValidationError("basis_fidelities: fidelity identities violated");
  (void)cfg;
  return {f0, f1};
}

FidelityReport gate_fidelity(const GateImplementation& impl, const OptimizerConfig& opt,
                             const NumericConfig& cfg) {
  const std::vector<Matrix> kraus = channel_kraus(impl);
  auto objective = [&](double theta, double phi) {
    return fidelity_sq(kraus, bloch_state(theta, phi));
  };

  constexpr double pi = std::numbers::pi;
  struct Cell {
    double value, theta, phi;
  };
  std::vector<Cell> cells;
  double best_val = 2.0, best_theta = 0.0, best_phi = 0.0;
  for (int i = 0; i < opt.grid; ++i)
    for (int j = 0; j < opt.grid; ++j) {
      const double theta = pi * (i + 0.5) / opt.grid;
      const double phi = 2 * pi * j / opt.grid;
      const double v = objective(theta, phi);
      cells.push_back({v, theta, phi});
      if (v < best_val) {
        best_val = v;
        best_theta = theta;
        best_phi = phi;
      }
    }
  std::partial_sort(cells.begin(),
                    cells.begin() + std::min<std::size_t>(opt.refine_starts, cells.size()),
                    cells.end(), [](const Cell& a, const Cell& b) { return a.value < b.value; });
  const double step = pi / opt.grid;
  for (std::size_t s = 0; s < std::min<std::size_t>(opt.refine_starts, cells.size()); ++s) {
    auto [pt, val] = nelder_mead_2d(objective, {cells[s].theta, cells[s].phi}, step,
                                    opt.refine_iters);
    if (val < best_val) {
      best_val = val;
      best_theta = pt(0);
      best_phi = pt(1);
    }
  }

  auto [f0, f1] = basis_fidelities(impl, cfg);

  FidelityReport r;
  r.f0_sq = f0;
  r.f1_sq = f1;
  r.gate_fidelity = std::sqrt(std::max(0.0, best_val));
  r.worst_state = bloch_state(best_theta, best_phi);

  // sampled lower bound on the CB distance: product of channel and a 2-level reference
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Matrix h2 = tensor(hadamard(), identity(2));
  double cb = 0.0;
  for (int s = 0; s < opt.cb_samples; ++s) {
    Vector psi(4);
    for (int i = 0; i < 4; ++i) psi(i) = Complex(gauss(rng), gauss(rng));
    psi /= psi.norm();
    const Matrix rho = psi * psi.adjoint();
    Matrix out = Matrix::Zero(4, 4);
    for (const auto& k : kraus) {
      const Matrix kk = tensor(k, identity(2));
      out += kk * rho * kk.adjoint();
    }
    cb = std::max(cb, trace_distance(out, h2 * rho * h2.adjoint()));
  }
  r.cb_lower_bound = cb;
  return r;
}

SzNoise sz_noise(const GateImplementation& impl, const Vector& psi,
                 const NumericConfig& cfg) {
  if (psi.size() != 2) throw DimensionMismatch("sz_noise: psi must be a qubit vector");
  const int k = impl.ancilla_dim;
  const Matrix sx_tilde = tensor(spin_x(), identity(k));
  const Matrix sz_tilde = tensor(spin_z(), identity(k));

  // route 1: moment formula on the compressed POVM Π0
  const SpectralDecomposition sx_spec = spectral(Observable(spin_x(), "S_x"), cfg);
  std::vector<double> outcomes;
  std::vector<Matrix> effects;
  for (std::size_t a = 0; a < sx_spec.eigenvalues.size(); ++a) {
    const Matrix e_full =
        impl.unitary.adjoint() * tensor(sx_spec.projectors[a], identity(k)) * impl.unitary;
    Matrix e0(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        e0(i, j) = (impl.ancilla_vector.adjoint() *
                    e_full.block(i * k, j * k, k, k) * impl.ancilla_vector)(0, 0);
    effects.push_back(0.5 * (e0 + e0.adjoint().eval()));
    outcomes.push_back(sx_spec.eigenvalues[a]);
  }
  const POVM pi0(outcomes, effects, cfg);
  const double eps =
      assess_noise(Observable(spin_z(), "S_z"), pi0, pure_state(psi, cfg)).rms_noise;

  // route 2: the vector-norm form on the dilated space
  Vector joint(2 * k);
  joint.segment(0, k) = psi(0) * impl.ancilla_vector;
  joint.segment(k, k) = psi(1) * impl.ancilla_vector;
  joint /= joint.norm();
  const double eps_sq_vec =
      (sx_tilde * (impl.unitary * joint) - impl.unitary * (sz_tilde * joint))
          .squaredNorm();
  return SzNoise{eps * eps, eps_sq_vec};
}

Matrix conserving_unitary(const Observable& system_charge, const Observable& ancilla_charge,
                          std::mt19937_64& rng, const NumericConfig& cfg) {
  const Matrix total =
      tensor(system_charge.matrix, identity(ancilla_charge.dim())) +
      tensor(identity(system_charge.dim()), ancilla_charge.matrix);
  const auto clusters = spectral_clusters(Observable(total, "total charge", cfg), cfg);
  std::vector<Matrix> blocks;
  for (const auto& c : clusters)
    blocks.push_back(random_unitary(static_cast<int>(c.basis.cols()), rng));
  return haar_block_unitary(clusters, blocks);
}

Matrix conserving_unitary(const Observable& ancilla_charge, std::mt19937_64& rng,
                          const NumericConfig& cfg) {
  return conserving_unitary(Observable(spin_x(), "S_x"), ancilla_charge, rng, cfg);
}

BoundReport bound_coherent(double mean_photons) {
  if (mean_photons < 0) throw ValidationError("bound_coherent: negative photon number");
  return BoundReport{BoundScenario::Coherent, mean_photons,
                     1.0 / (4.0 + 16.0 * mean_photons), std::nullopt, mean_photons};
}

BoundReport bound_spin(int n, bool entangled) {
  if (n < 1) throw ValidationError("bound_spin: n must be >= 1");
  const double floor =
      entangled ? 1.0 / (4.0 + 4.0 * n * n) : 1.0 / (4.0 + 4.0 * n);
  const double dlx_sq = entangled ? 0.25 * n * n : 0.25 * n;
  return BoundReport{entangled ? BoundScenario::SpinEntangled : BoundScenario::SpinSeparable,
                     static_cast<double>(n), floor, std::nullopt, dlx_sq};
}

BoundReport bound_field_state(const DensityOperator& field_state, int cutoff,
                              const NumericConfig& cfg) {
  if (field_state.dim() != cutoff + 1)
    throw DimensionMismatch("bound_field_state: state dimension must be cutoff+1");
  double offdiag = 0.0;
  for (int i = 0; i <= cutoff; ++i)
    for (int j = 0; j <= cutoff; ++j)
      if (i != j) offdiag = std::max(offdiag, std::abs(field_state.matrix(i, j)));

  Matrix number = Matrix::Zero(cutoff + 1, cutoff + 1);
  for (int i = 0; i <= cutoff; ++i) number(i, i) = i;
  const auto [mean_n, dn] = mean_stddev(Observable(number, "N", cfg), field_state);

  if (offdiag <= 100 * cfg.hermiticity_tol)
    return BoundReport{BoundScenario::Number, mean_n, 0.25, std::nullopt, dn * dn};
  return BoundReport{BoundScenario::Thermal, mean_n, 1.0 / (4.0 + 16.0 * dn * dn),
                     std::nullopt, dn * dn};
}

Observable ancilla_spin_x(int n_qubits) {
  const int dim = 1 << n_qubits;
  Matrix lx = Matrix::Zero(dim, dim);
  for (int j = 0; j < n_qubits; ++j) {
    Matrix term = Matrix::Identity(1, 1);
    for (int q = 0; q < n_qubits; ++q)
      term = tensor(term, q == j ? spin_x() : identity(2));
    lx += term;
  }
  return Observable(lx, "L_x");
}

GateImplementation embed_extra_qubit(const GateImplementation& impl,
                                     const NumericConfig& cfg) {
  Vector ket(2);
  ket << 1, 0;
  return GateImplementation(2 * impl.ancilla_dim, tensor(impl.unitary, identity(2)),
                            tensor(impl.ancilla_vector, ket), cfg);
}

OptimizeResult optimize_fidelity(const Observable& ancilla_charge, int iterations,
                                 int restarts, std::uint64_t seed,
                                 const std::vector<GateImplementation>& warm_starts,
                                 const OptimizerConfig& opt, const NumericConfig& cfg) {
  const int k = ancilla_charge.dim();
  const Matrix total = tensor(spin_x(), identity(k)) + tensor(identity(2), ancilla_charge.matrix);
  const auto clusters = spectral_clusters(Observable(total, "total charge", cfg), cfg);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  OptimizerConfig coarse = opt;
  coarse.grid = 24;
  coarse.refine_iters = 60;
  coarse.refine_starts = 4;
  coarse.cb_samples = 1;

  auto evaluate = [&](const GateImplementation& impl, const OptimizerConfig& oc) {
    return gate_fidelity(impl, oc, cfg).gate_fidelity;
  };

  struct State {
    std::vector<Matrix> blocks;
    Vector xi;
  };
  auto build = [&](const State& st) {
    return GateImplementation(k, haar_block_unitary(clusters, st.blocks), st.xi, cfg);
  };
  auto random_state = [&]() {
    State st;
    for (const auto& c : clusters)
      st.blocks.push_back(random_unitary(static_cast<int>(c.basis.cols()), rng));
    Vector xi(k);
    for (int i = 0; i < k; ++i) xi(i) = Complex(gauss(rng), gauss(rng));
    st.xi = xi / xi.norm();
    return st;
  };

  GateImplementation best = warm_starts.empty() ? build(random_state()) : warm_starts.front();
  double best_fid = evaluate(best, coarse);

  const int total_restarts = restarts + static_cast<int>(warm_starts.size());
  for (int r = 0; r < total_restarts; ++r) {
    State st;
    GateImplementation current = best;
    if (r < static_cast<int>(warm_starts.size())) {
      // warm starts are evaluated as-is; hill climbing applies to random starts
      current = warm_starts[static_cast<std::size_t>(r)];
      double fid = evaluate(current, coarse);
      if (fid > best_fid) {
        best_fid = fid;
        best = current;
      }
      continue;
    }
    st = random_state();
    current = build(st);
    double fid = evaluate(current, coarse);
    double step = 0.5;
    for (int it = 0; it < iterations; ++it) {
      State trial = st;
      std::uniform_int_distribution<int> which(0, static_cast<int>(clusters.size()));
      const int pick = which(rng);
      if (pick < static_cast<int>(clusters.size())) {
        const int bd = static_cast<int>(clusters[static_cast<std::size_t>(pick)].basis.cols());
        Matrix g = Matrix::Zero(bd, bd);
        for (int i = 0; i < bd; ++i)
          for (int j = 0; j < bd; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
        Matrix herm = 0.5 * (g + g.adjoint().eval());
        Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
        Matrix expo = es.eigenvectors() *
                      (Complex(0, step) * es.eigenvalues().array().cast<Complex>())
                          .exp()
                          .matrix()
                          .asDiagonal() *
                      es.eigenvectors().adjoint();
        trial.blocks[static_cast<std::size_t>(pick)] =
            expo * trial.blocks[static_cast<std::size_t>(pick)];
      } else {
        Vector g(k);
        for (int i = 0; i < k; ++i) g(i) = Complex(gauss(rng), gauss(rng));
        trial.xi = trial.xi + step * g;
        trial.xi /= trial.xi.norm();
      }
      GateImplementation cand = build(trial);
      const double cand_fid = evaluate(cand, coarse);
      if (cand_fid > fid) {
        fid = cand_fid;
        st = trial;
        current = cand;
        step = std::min(0.5, step * 1.2);
      } else {
        step = std::max(0.02, step * 0.9);
      }
    }
    if (fid > best_fid) {
      best_fid = fid;
      best = current;
    }
  }

  FidelityReport report = gate_fidelity(best, opt, cfg);

  Eigen::SelfAdjointEigenSolver<Matrix> es(ancilla_charge.matrix, Eigen::EigenvaluesOnly);
  const double charge_norm = es.eigenvalues().cwiseAbs().maxCoeff();
  const DensityOperator xi_state = pure_state(best.ancilla_vector, cfg);
  const double dlx = mean_stddev(ancilla_charge, xi_state).second;

  BoundReport bound{BoundScenario::SpinEntangled, 2.0 * charge_norm,
                    1.0 / (4.0 + 4.0 * std::pow(2.0 * charge_norm, 2)),
                    1.0 - report.gate_fidelity * report.gate_fidelity, dlx * dlx};
  return OptimizeResult{std::move(best), std::move(report), std::move(bound)};
}

}  // namespace qinstr
