#pragma once

// One-clean-qubit computation. Subsystems: A is the clean control qubit, B
// the n-qubit register (one subsystem of dimension 2^n), E the purifying
// environment of B.
//
// The post-circuit AB state is built directly rather than gate by gate:
//
//   rho_AB = 1/2^{n+1} [[ I, U^dagger ], [ U, I ]]   (A is the block index)

#include <optional>
#include <vector>

#include "qcorr/measures.hpp"

namespace qcorr {

inline constexpr int kMaxDqc1Qubits = 3;
inline constexpr int kMaxDqc1LedgerQubits = 2;

class Dqc1Instance {
 public:
  /// Standard protocol: uniform weights 1/2^n.
  static Dqc1Instance standard(const UnitaryMatrix& u);
  /// Register prepared in sum_i weights[i] |u_i><u_i| over the eigenbasis of
  /// U (in eigensolver order). Weights must be nonnegative and sum to 1.
  static Dqc1Instance with_weights(const UnitaryMatrix& u, std::vector<double> weights);

  int n() const noexcept { return n_; }
  const UnitaryMatrix& unitary() const noexcept { return unitary_; }
  /// Eigenphases in (-pi, pi].
  const std::vector<double>& eigenphases() const noexcept { return phases_; }
  /// Columns are the eigenvectors |u_i>.
  const CMatrix& eigenvectors() const noexcept { return eigenvectors_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  bool uniform_weights() const;

 private:
  Dqc1Instance(UnitaryMatrix u, int n, std::vector<double> phases, CMatrix vectors,
               std::vector<double> weights);

  UnitaryMatrix unitary_;
  int n_;
  std::vector<double> phases_;
  CMatrix eigenvectors_;
  std::vector<double> weights_;
};

struct Dqc1Ledger {
  int n = 0;
  double e_ab = 0, e_ae = 0, e_be = 0;
  // discord_xy measures y.
  double discord_ab = 0, discord_ba = 0, discord_ae = 0, discord_be = 0;
  double spread_ab = 0, spread_ba = 0, spread_ae = 0, spread_be = 0;
  double e_a_be = 0, e_b_ae = 0, e_e_ab = 0;
  double negativity_ab = 0;
  std::optional<double> concurrence_ab;  // n = 1 only
  cplx trace_estimate;
  cplx exact_trace;
  double r8 = 0;   // E_BE - (E_E(AB) + D_BA - E_A(BE))
  double r9 = 0;   // D_BE - (E_E(AB) - E_A(BE))
  double r10 = 0;  // D_BA - (E_BE - D_BE)
};

/// Post-circuit rho_AB. Requires uniform weights.
DensityMatrix build_dqc1_state(const Dqc1Instance& inst);

/// sum_i 2^{-n/2} (|0> + e^{i theta_i} |1>)/sqrt2 (x) |u_i>_B (x) |e_i>_E.
PureState build_dqc1_purification(const Dqc1Instance& inst);

/// Same with amplitudes sqrt(weights[i]) in place of 2^{-n/2}.
PureState build_nonmaximal_dqc1(const Dqc1Instance& inst);

/// <sigma_x> + i <sigma_y> on the control qubit, i.e. Tr(rho_B U).
cplx normalized_trace_estimate(const DensityMatrix& rho_ab);

/// 2^n * normalized_trace_estimate; equals Tr(U) for the standard protocol.
cplx trace_estimate(const DensityMatrix& rho_ab);

/// Requires n <= 2. For n = 1 the pairwise EOFs use the two-qubit closed
/// form; for n = 2 they go through discord + conditional entropy on the
/// pure ABE state.
Dqc1Ledger dqc1_ledger(const Dqc1Instance& inst, const OptimizerConfig& cfg = {});

}  // namespace qcorr
