#pragma once

#include <map>
#include <string>

#include "qinstr/error_metrics.hpp"

namespace qinstr {

struct ChainLink {
  std::string name;
  double lhs;
  double rhs;
  double slack;  // lhs − rhs
};

/// Per-link slack report for one of the displayed inequality chains.
struct ChainReport {
  std::vector<ChainLink> links;
  bool holds;  // every slack ≥ −tol
  std::map<std::string, double> terms;
};

/// Chain for four observables on one space with [C,D] = 0; noise operators N_A = C−A,
/// N_B = D−B, all statistics in `state`.
ChainReport joint_direct_chain(const Observable& a, const Observable& b,
                               const Observable& c, const Observable& d,
                               const DensityOperator& state,
                               const NumericConfig& cfg = {});

/// Chain for the marginals of a joint POVM.
ChainReport joint_povm_chain(const Observable& a, const Observable& b,
                             const JointPOVM& joint, const DensityOperator& state,
                             const NumericConfig& cfg = {});

/// Universal noise-disturbance chain: ε from the induced POVM, η through the
/// nonselective operation.
ChainReport instrument_chain(const Observable& a, const Observable& b,
                             const KrausInstrument& instr, const DensityOperator& state,
                             const NumericConfig& cfg = {});

struct HeisenbergReport {
  bool condition_i;    // [n_A,B] = 0 and [d_B,A] = 0
  bool condition_ii;   // uncorrelated noise and disturbance
  bool condition_iii;  // unbiased noise and disturbance
  bool heisenberg_holds;
  double product;  // ε(A)·η(B)
  double bound;    // ½|<[A,B]>|
};

HeisenbergReport heisenberg_check(const Observable& a, const Observable& b,
                                  const KrausInstrument& instr,
                                  const DensityOperator& state,
                                  const NumericConfig& cfg = {});

/// ε(A)·ΔB ≥ ½|Tr([A,B]ρ)| for non-disturbing instruments (η(B) = 0).
ChainLink nondisturbing_bound(const Observable& a, const Observable& b,
                              const KrausInstrument& instr, const DensityOperator& state,
                              const NumericConfig& cfg = {});

/// ΔA·η(B) ≥ ½|<[A,B]>| for precise measurements (ε(A) = 0).
ChainLink precise_measurement_bound(const Observable& a, const Observable& b,
                                    const KrausInstrument& instr,
                                    const DensityOperator& state,
                                    const NumericConfig& cfg = {});

/// Product bounds available when both marginals carry uncorrelated noise.
struct UncorrelatedProductsReport {
  ChainLink eps_product_link;   // ε(A)ε(B) ≥ ΔN_AΔN_B
  ChainLink deltaN_link;        // ΔN_AΔN_B ≥ ½|<[A,B]>|
  ChainLink povm_spread_link;   // Δ(Π^A)Δ(Π^B) ≥ |<[A,B]>|
};

UncorrelatedProductsReport uncorrelated_products(const Observable& a, const Observable& b,
                                                 const JointPOVM& joint,
                                                 const DensityOperator& state,
                                                 const NumericConfig& cfg = {});

}  // namespace qinstr
