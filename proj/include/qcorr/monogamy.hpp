#pragma once

// Tripartite correlation bookkeeping for a state on subsystems (A, B, E):
// the Koashi-Winter identity, the EOF/discord interconversions, the
// conservation law E_AB + E_AE = D_AB + D_AE, and the entanglement-discord
// balance that tightens strong subadditivity.

#include <optional>
#include <string>
#include <vector>

#include "qcorr/measures.hpp"

namespace qcorr {

/// Which subsystem of each pair the discords inside Delta measure.
enum class ArrowConvention {
  kMeasureSecond,  // D<-(A,B) measures B, D<-(A,E) measures E
  kMeasureFirst,   // measure A in both pairs
};

struct CorrelationLedger {
  std::vector<std::string> labels;  // (A, B, E) in that role order

  double s_a = 0, s_b = 0, s_e = 0, s_ab = 0, s_ae = 0, s_be = 0;
  double e_ab = 0, e_ae = 0, e_be = 0;
  double j_ae = 0;
  // discord_xy measures y.
  double discord_ab = 0, discord_ae = 0, discord_ba = 0, discord_be = 0;
  double spread_ab = 0, spread_ae = 0, spread_ba = 0, spread_be = 0;
  // Bipartition EOFs E_{X(YZ)} = S_X for a pure global state.
  double e_a_be = 0, e_b_ae = 0, e_e_ab = 0;

  double r1 = 0;  // E_AB + J_AE - S_A
  double r2 = 0;  // E_AB - D_AE - S_{A|E}
  double r3 = 0;  // D_AB - E_AE + S_{A|B}
  double r4 = 0;  // D_AB - (E_AE - E_{E(AB)} + E_{B(AE)})
  double r5 = 0;  // (E_AB + E_AE) - (D_AB + D_AE)

  double max_abs_residual() const;
};

struct SsaReport {
  double delta = 0;        // E_AB + E_AE - D_AB - D_AE
  double delta_tilde = 0;  // max(0, delta)
  double i1 = 0;           // S_AB + S_AE - S_B - S_E
  double i2 = 0;           // i1 - delta
  bool ss_holds = false;
  bool strengthened_holds = false;
  double e_ab = 0, e_ae = 0, discord_ab = 0, discord_ae = 0;
  double s_ab = 0, s_ae = 0, s_b = 0, s_e = 0;
  double spread_ab = 0, spread_ae = 0;
};

inline constexpr double kEntropyInequalityTol = 1e-9;
inline constexpr double kDiscordSlack = 1e-3;

/// E_ab + J<-(a, e) - S_a for a pure tripartite state; a and b must be qubits.
double koashi_winter_residual(const PureState& psi, const std::string& a, const std::string& b,
                              const std::string& e, const OptimizerConfig& cfg = {});

/// Full ledger for a pure three-qubit state, roles taken from layout order.
CorrelationLedger discord_ledger(const PureState& psi, const OptimizerConfig& cfg = {});

/// (E_fx + E_fy) - (D_fx + D_fy) with the pairs formed between `focus` and
/// the two other subsystems, measuring the non-focus side.
double conservation_residual(const PureState& psi, const std::string& focus,
                             const OptimizerConfig& cfg = {});

/// Delta, I1, I2 for a three-qubit state (pure or mixed).
SsaReport delta_balance(const DensityMatrix& rho, const std::string& a, const std::string& b,
                        const std::string& e, const OptimizerConfig& cfg = {},
                        ArrowConvention arrow = ArrowConvention::kMeasureSecond);

/// (1 - lambda) I/8 + lambda |Psi><Psi| with
/// |Psi> = p (|101> + |011>) + alpha |000>, 2 p^2 + alpha^2 = 1.
DensityMatrix example_family_state(double alpha, double lambda);

/// `steps` uniformly spaced points on [0, 1].
std::vector<double> uniform_grid(int steps);

/// One report per alpha, in grid order. Point k runs with seed cfg.seed + k.
std::vector<SsaReport> ssa_sweep(double lambda, const std::vector<double>& alpha_grid,
                                 const OptimizerConfig& cfg = {},
                                 ArrowConvention arrow = ArrowConvention::kMeasureSecond);

}  // namespace qcorr
