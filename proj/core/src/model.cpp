#include "qinstr/model.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>

namespace qinstr {

MeasurementModel::MeasurementModel(int sys_dim, int anc_dim, DensityOperator sigma,
                                   Matrix u, Observable m, const NumericConfig& cfg)
    : system_dim(sys_dim),
      ancilla_dim(anc_dim),
      ancilla_state(std::move(sigma)),
      unitary(std::move(u)),
      meter(std::move(m)) {
  if (system_dim < 1 || ancilla_dim < 1)
    throw ValidationError("MeasurementModel: dimensions must be positive");
  if (ancilla_state.dim() != ancilla_dim)
    throw DimensionMismatch("MeasurementModel: ancilla state dimension mismatch");
  if (meter.dim() != ancilla_dim)
    throw DimensionMismatch("MeasurementModel: meter dimension mismatch");
  const Eigen::Index n = static_cast<Eigen::Index>(system_dim) * ancilla_dim;
  if (unitary.rows() != n || unitary.cols() != n)
    throw DimensionMismatch("MeasurementModel: unitary dimension mismatch");
  if (!is_unitary(unitary, 100 * cfg.hermiticity_tol))
    throw ValidationError("MeasurementModel: U is not unitary within tolerance");
}

KrausInstrument instrument_from_model(const MeasurementModel& model,
                                      const NumericConfig& cfg) {
  const int d = model.system_dim;
  const int k = model.ancilla_dim;

  // probe eigen-decomposition; zero-weight directions dropped
  Eigen::SelfAdjointEigenSolver<Matrix> es(model.ancilla_state.matrix);
  std::vector<std::pair<double, Vector>> probe;
  for (int l = 0; l < k; ++l) {
    const double s = es.eigenvalues()(l);
    if (s > 1e-14) probe.emplace_back(s, es.eigenvectors().col(l));
  }

  const auto meter_clusters = spectral_clusters(model.meter, cfg);

  std::vector<double> outcomes;
  std::vector<std::vector<Matrix>> sets;
  for (const auto& cluster : meter_clusters) {
    std::vector<Matrix> set;
    for (const auto& [s, sig] : probe) {
      // W = U (I ⊗ |σ_l>), columns indexed by the system basis
      Matrix w(d * k, d);
      for (int col = 0; col < d; ++col) {
        Vector in = Vector::Zero(d * k);
        in.segment(col * k, k) = sig;
        w.col(col) = model.unitary * in;
      }
      for (int j = 0; j < cluster.basis.cols(); ++j) {
        const Vector mj = cluster.basis.col(j);
        Matrix kraus(d, d);
        for (int row = 0; row < d; ++row)
          kraus.row(row) = std::sqrt(s) * (mj.adjoint() * w.middleRows(row * k, k));
        set.push_back(std::move(kraus));
      }
    }
    outcomes.push_back(cluster.eigenvalue);
    sets.push_back(std::move(set));
  }
  return KrausInstrument(std::move(outcomes), std::move(sets), cfg);
}

MeasurementModel dilate_instrument(const KrausInstrument& instr,
                                   const NumericConfig& cfg) {
  const int d = instr.dim();
  int m = 0;
  for (const auto& set : instr.kraus_sets) m += static_cast<int>(set.size());

  // V|i> = Σ_{a,k} K_{a,k}|i> ⊗ |idx(a,k)>
  Matrix fixed(d * m, d);
  {
    int idx = 0;
    fixed.setZero();
    for (const auto& set : instr.kraus_sets) {
      for (const auto& kr : set) {
        for (int row = 0; row < d; ++row)
          for (int col = 0; col < d; ++col) fixed(row * m + idx, col) = kr(row, col);
        ++idx;
      }
    }
  }

  // orthonormal completion; Householder Q's trailing columns are exactly
  // orthogonal to the isometry's column space
  Eigen::HouseholderQR<Matrix> qr(fixed);
  Matrix q = qr.householderQ();

  Matrix u(d * m, d * m);
  for (int i = 0; i < d; ++i) u.col(i * m) = fixed.col(i);
  {
    int next = d;  // next completion column of q
    for (int col = 0; col < d * m; ++col) {
      if (col % m == 0 && col / m < d) continue;  // slot already holds V|i>
      u.col(col) = q.col(next++);
    }
  }

  // meter: label a on the ancilla indices belonging to outcome a
  Matrix meter = Matrix::Zero(m, m);
  {
    int idx = 0;
    for (std::size_t a = 0; a < instr.kraus_sets.size(); ++a)
      for (std::size_t kk = 0; kk < instr.kraus_sets[a].size(); ++kk)
        meter(idx, idx) = instr.outcomes[a], ++idx;
  }

  Matrix sigma = Matrix::Zero(m, m);
  sigma(0, 0) = 1.0;

  return MeasurementModel(d, m, DensityOperator(sigma, cfg), std::move(u),
                          Observable(meter, "meter", cfg), cfg);
}

MeasurementModel dilate_channel(const KrausInstrument& channel, const NumericConfig& cfg) {
  if (channel.n_outcomes() != 1)
    throw ValidationError("dilate_channel: channel must have exactly one outcome");
  return dilate_instrument(channel, cfg);
}

NaimarkExtension naimark_extension(const POVM& povm, const NumericConfig& cfg) {
  const int d = povm.dim();
  const int n = povm.n_outcomes();

  bool projective = true;
  for (const auto& e : povm.effects)
    if (max_norm(e * e - e) > 100 * cfg.hermiticity_tol) {
      projective = false;
      break;
    }
  if (projective) {
    Matrix c = Matrix::Zero(d, d);
    for (int i = 0; i < n; ++i) c += povm.outcomes[i] * povm.effects[i];
    return NaimarkExtension{d, Matrix::Identity(d, d),
                            Observable(0.5 * (c + c.adjoint().eval()), "C", cfg)};
  }

  // block construction: V stacks sqrt(effect_a), C = a on block a
  const int ext = d * n;
  Matrix v(ext, d);
  Matrix c = Matrix::Zero(ext, ext);
  for (int a = 0; a < n; ++a) {
    v.middleRows(a * d, d) = psd_sqrt(povm.effects[static_cast<std::size_t>(a)]);
    c.block(a * d, a * d, d, d) = povm.outcomes[static_cast<std::size_t>(a)] *
                                  Matrix::Identity(d, d);
  }
  return NaimarkExtension{ext, std::move(v), Observable(std::move(c), "C", cfg)};
}

}  // namespace qinstr
