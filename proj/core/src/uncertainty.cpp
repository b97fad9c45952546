#include "qinstr/uncertainty.hpp"

#include <cmath>

namespace qinstr {

namespace {

struct SideTerms {
  double eps;      // rms noise
  double mean;     // n̄
  double spread;   // ΔN
  Matrix noise_op;
};

ChainReport assemble_chain(const SideTerms& ta, const SideTerms& tb, double delta_a,
                           double delta_b, const Matrix& a, const Matrix& b,
                           const DensityOperator& state, const NumericConfig& cfg) {
  const double comm_na_b =
      0.5 * std::abs((commutator(ta.noise_op, b) * state.matrix).trace());
  const double comm_a_nb =
      0.5 * std::abs((commutator(a, tb.noise_op) * state.matrix).trace());
  const double comm_ab = 0.5 * std::abs((commutator(a, b) * state.matrix).trace());

  const double line1 = ta.eps * tb.eps + ta.eps * delta_b + delta_a * tb.eps;
  const double line2 =
      ta.spread * tb.spread + ta.spread * delta_b + delta_a * tb.spread;
  const double line3 = ta.spread * tb.spread + comm_na_b + comm_a_nb;
  const double line4 = comm_ab;

  ChainReport r;
  r.links = {{"first", line1, line2, line1 - line2},
             {"second", line2, line3, line2 - line3},
             {"third", line3, line4, line3 - line4}};
  r.holds = true;
  for (const auto& l : r.links)
    if (l.slack < -cfg.slack_tol) r.holds = false;
  r.terms = {{"eps_A", ta.eps},       {"eps_B", tb.eps},
             {"Delta_A", delta_a},    {"Delta_B", delta_b},
             {"DeltaN_A", ta.spread}, {"DeltaN_B", tb.spread},
             {"mean_n_A", ta.mean},   {"mean_n_B", tb.mean},
             {"comm_nA_B", comm_na_b}, {"comm_A_nB", comm_a_nb},
             {"comm_A_B", comm_ab}};
  return r;
}

SideTerms terms_from_povm(const Observable& x, const POVM& povm,
                          const DensityOperator& state) {
  NoiseAssessment na = assess_noise(x, povm, state);
  return SideTerms{na.rms_noise, na.mean_noise, na.noise_stddev,
                   na.mean_noise_operator.matrix};
}

}  // namespace

ChainReport joint_direct_chain(const Observable& a, const Observable& b,
                               const Observable& c, const Observable& d,
                               const DensityOperator& state, const NumericConfig& cfg) {
  if (a.dim() != b.dim() || a.dim() != c.dim() || a.dim() != d.dim() ||
      a.dim() != state.dim())
    throw DimensionMismatch("joint_direct_chain: dimension mismatch");
  if (max_norm(commutator(c.matrix, d.matrix)) > 100 * cfg.hermiticity_tol)
    throw NonCommutingPair("joint_direct_chain: [C,D] != 0");

  auto side = [&](const Observable& x, const Observable& out) {
    Matrix n = out.matrix - x.matrix;
    const double mean = (n * state.matrix).trace().real();
    const double eps_sq =
        std::max(0.0, (n * n * state.matrix).trace().real());
    return SideTerms{std::sqrt(eps_sq), mean,
                     std::sqrt(std::max(0.0, eps_sq - mean * mean)), n};
  };
  const SideTerms ta = side(a, c);
  const SideTerms tb = side(b, d);
  const double delta_a = mean_stddev(a, state).second;
  const double delta_b = mean_stddev(b, state).second;
  return assemble_chain(ta, tb, delta_a, delta_b, a.matrix, b.matrix, state, cfg);
}

ChainReport joint_povm_chain(const Observable& a, const Observable& b,
                             const JointPOVM& joint, const DensityOperator& state,
                             const NumericConfig& cfg) {
  if (a.dim() != joint.dim() || a.dim() != b.dim() || a.dim() != state.dim())
    throw DimensionMismatch("joint_povm_chain: dimension mismatch");
  auto [pa, pb] = marginals(joint, cfg);
  const SideTerms ta = terms_from_povm(a, pa, state);
  const SideTerms tb = terms_from_povm(b, pb, state);
  const double delta_a = mean_stddev(a, state).second;
  const double delta_b = mean_stddev(b, state).second;
  return assemble_chain(ta, tb, delta_a, delta_b, a.matrix, b.matrix, state, cfg);
}

ChainReport instrument_chain(const Observable& a, const Observable& b,
                             const KrausInstrument& instr, const DensityOperator& state,
                             const NumericConfig& cfg) {
  if (a.dim() != instr.dim() || a.dim() != b.dim() || a.dim() != state.dim())
    throw DimensionMismatch("instrument_chain: dimension mismatch");
  const SideTerms ta = terms_from_povm(a, induced_povm(instr, cfg), state);
  const SideTerms tb = terms_from_povm(b, dual_spectral_povm(instr, b, cfg), state);
  const double delta_a = mean_stddev(a, state).second;
  const double delta_b = mean_stddev(b, state).second;
  ChainReport r =
      assemble_chain(ta, tb, delta_a, delta_b, a.matrix, b.matrix, state, cfg);
  // disturbance-side names
  r.terms["eta_B"] = r.terms["eps_B"];
  r.terms["DeltaD_B"] = r.terms["DeltaN_B"];
  return r;
}

HeisenbergReport heisenberg_check(const Observable& a, const Observable& b,
                                  const KrausInstrument& instr,
                                  const DensityOperator& state,
                                  const NumericConfig& cfg) {
  if (a.dim() != instr.dim() || a.dim() != b.dim() || a.dim() != state.dim())
    throw DimensionMismatch("heisenberg_check: dimension mismatch");
  const POVM pa = induced_povm(instr, cfg);
  const POVM pb = dual_spectral_povm(instr, b, cfg);
  const NoiseAssessment na = assess_noise(a, pa, state);
  const NoiseAssessment db = assess_noise(b, pb, state);

  const Matrix& n_op = na.mean_noise_operator.matrix;
  const Matrix& d_op = db.mean_noise_operator.matrix;
  const bool cond_i = max_norm(commutator(n_op, b.matrix)) <= 1e-10 &&
                      max_norm(commutator(d_op, a.matrix)) <= 1e-10;
  const NoiseClass ca = classify_noise(a, pa, cfg);
  const NoiseClass cb = classify_noise(b, pb, cfg);
  const bool cond_ii = ca.uncorrelated && cb.uncorrelated;
  const bool cond_iii = ca.unbiased && cb.unbiased;

  const double product = na.rms_noise * db.rms_noise;
  const double bound = 0.5 * std::abs(commutator_mean(a, b, state));
  return HeisenbergReport{cond_i,  cond_ii, cond_iii,
                          product >= bound - cfg.slack_tol, product, bound};
}

ChainLink nondisturbing_bound(const Observable& a, const Observable& b,
                              const KrausInstrument& instr, const DensityOperator& state,
                              const NumericConfig& cfg) {
  const DisturbanceAssessment da = assess_disturbance(b, instr, state, cfg);
  if (da.rms_disturbance > cfg.eta_zero_tol)
    throw DisturbanceNotZero("nondisturbing_bound: eta(B) exceeds tolerance");
  const double eps = assess_noise(a, induced_povm(instr, cfg), state).rms_noise;
  const double delta_b = mean_stddev(b, state).second;
  const double rhs = 0.5 * std::abs(commutator_mean(a, b, state));
  const double lhs = eps * delta_b;
  return ChainLink{"nondisturbing", lhs, rhs, lhs - rhs};
}

ChainLink precise_measurement_bound(const Observable& a, const Observable& b,
                                    const KrausInstrument& instr,
                                    const DensityOperator& state,
                                    const NumericConfig& cfg) {
  const double eps = assess_noise(a, induced_povm(instr, cfg), state).rms_noise;
  if (eps > cfg.eps_zero_tol)
    throw NoiseNotZero("precise_measurement_bound: eps(A) exceeds tolerance");
  const double eta = assess_disturbance(b, instr, state, cfg).rms_disturbance;
  const double delta_a = mean_stddev(a, state).second;
  const double rhs = 0.5 * std::abs(commutator_mean(a, b, state));
  const double lhs = delta_a * eta;
  return ChainLink{"precise_measurement", lhs, rhs, lhs - rhs};
}

UncorrelatedProductsReport uncorrelated_products(const Observable& a, const Observable& b,
                                                 const JointPOVM& joint,
                                                 const DensityOperator& state,
                                                 const NumericConfig& cfg) {
  auto [pa, pb] = marginals(joint, cfg);
  if (!classify_noise(a, pa, cfg).uncorrelated || !classify_noise(b, pb, cfg).uncorrelated)
    throw NotUncorrelated("uncorrelated_products: a marginal has correlated noise");

  const NoiseAssessment na = assess_noise(a, pa, state);
  const NoiseAssessment nb = assess_noise(b, pb, state);
  const double comm = 0.5 * std::abs(commutator_mean(a, b, state));
  const double spread_a = povm_mean_stddev(pa, state).second;
  const double spread_b = povm_mean_stddev(pb, state).second;

  const double e1 = na.rms_noise * nb.rms_noise;
  const double e2 = na.noise_stddev * nb.noise_stddev;
  const double e3 = spread_a * spread_b;
  return UncorrelatedProductsReport{
      ChainLink{"eps_product", e1, e2, e1 - e2},
      ChainLink{"deltaN_product", e2, comm, e2 - comm},
      ChainLink{"povm_spread", e3, 2 * comm, e3 - 2 * comm}};
}

}  // namespace qinstr
