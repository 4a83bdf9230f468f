#include "qcorr/monogamy.hpp"

#include <algorithm>
#include <cmath>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

void require_qubits(const SubsystemLayout& layout, const std::vector<std::string>& labels,
                    const char* where) {
  for (const auto& l : labels) {
    if (layout.dim_of(l) != 2) {
      throw UnsupportedDimensionError(std::string(where) + ": subsystem '" + l + "' is not a qubit");
    }
  }
}

void require_tripartite(const SubsystemLayout& layout, const char* where) {
  if (layout.size() != 3) throw ShapeError(std::string(where) + ": state must be tripartite");
}

void require_distinct(const std::string& a, const std::string& b, const std::string& e) {
  if (a == b || a == e || b == e) throw LabelError("subsystem roles must be distinct labels");
}

}  // namespace

double CorrelationLedger::max_abs_residual() const {
  return std::max({std::abs(r1), std::abs(r2), std::abs(r3), std::abs(r4), std::abs(r5)});
}

double koashi_winter_residual(const PureState& psi, const std::string& a, const std::string& b,
                              const std::string& e, const OptimizerConfig& cfg) {
  require_tripartite(psi.layout(), "koashi_winter_residual");
  require_distinct(a, b, e);
  require_qubits(psi.layout(), {a, b}, "koashi_winter_residual");
  const double e_ab = eof_two_qubit(partial_trace(psi, {a, b}));
  const double j_ae = classical_correlation(partial_trace(psi, {a, e}), a, e, cfg).value;
  return e_ab + j_ae - von_neumann_entropy(psi, {a});
}

CorrelationLedger discord_ledger(const PureState& psi, const OptimizerConfig& cfg) {
  require_tripartite(psi.layout(), "discord_ledger");
  const auto& labels = psi.layout().labels();
  require_qubits(psi.layout(), labels, "discord_ledger");
  const std::string& a = labels[0];
  const std::string& b = labels[1];
  const std::string& e = labels[2];

  CorrelationLedger L;
  L.labels = labels;
  const DensityMatrix rho_ab = partial_trace(psi, {a, b});
  const DensityMatrix rho_ae = partial_trace(psi, {a, e});
  const DensityMatrix rho_be = partial_trace(psi, {b, e});

  L.s_a = von_neumann_entropy(psi, {a});
  L.s_b = von_neumann_entropy(psi, {b});
  L.s_e = von_neumann_entropy(psi, {e});
  L.s_ab = von_neumann_entropy(rho_ab);
  L.s_ae = von_neumann_entropy(rho_ae);
  L.s_be = von_neumann_entropy(rho_be);

  L.e_ab = eof_two_qubit(rho_ab);
  L.e_ae = eof_two_qubit(rho_ae);
  L.e_be = eof_two_qubit(rho_be);

  const MeasureResult d_ab = quantum_discord(rho_ab, a, b, cfg);
  const MeasureResult d_ae = quantum_discord(rho_ae, a, e, cfg);
  const MeasureResult d_ba = quantum_discord(rho_ab, b, a, cfg);
  const MeasureResult d_be = quantum_discord(rho_be, b, e, cfg);
  L.discord_ab = d_ab.value;
  L.discord_ae = d_ae.value;
  L.discord_ba = d_ba.value;
  L.discord_be = d_be.value;
  L.spread_ab = d_ab.spread;
  L.spread_ae = d_ae.spread;
  L.spread_ba = d_ba.spread;
  L.spread_be = d_be.spread;
  // J and D share the optimal measurement, so J = I - D.
  L.j_ae = (L.s_a + L.s_e - L.s_ae) - L.discord_ae;

  L.e_a_be = L.s_a;
  L.e_b_ae = L.s_b;
  L.e_e_ab = L.s_e;

  const double s_a_given_e = L.s_ae - L.s_e;
  const double s_a_given_b = L.s_ab - L.s_b;
  L.r1 = L.e_ab + L.j_ae - L.s_a;
  L.r2 = L.e_ab - L.discord_ae - s_a_given_e;
  L.r3 = L.discord_ab - L.e_ae + s_a_given_b;
  L.r4 = L.discord_ab - (L.e_ae - L.e_e_ab + L.e_b_ae);
  L.r5 = (L.e_ab + L.e_ae) - (L.discord_ab + L.discord_ae);
  return L;
}

double conservation_residual(const PureState& psi, const std::string& focus, const OptimizerConfig& cfg) {
  require_tripartite(psi.layout(), "conservation_residual");
  require_qubits(psi.layout(), psi.layout().labels(), "conservation_residual");
  psi.layout().index_of(focus);
  double eof_sum = 0.0;
  double discord_sum = 0.0;
  for (const auto& other : psi.layout().labels()) {
    if (other == focus) continue;
    const DensityMatrix pair = partial_trace(psi, {focus, other});
    eof_sum += eof_two_qubit(pair);
    discord_sum += quantum_discord(pair, focus, other, cfg).value;
  }
  return eof_sum - discord_sum;
}

SsaReport delta_balance(const DensityMatrix& rho, const std::string& a, const std::string& b,
                        const std::string& e, const OptimizerConfig& cfg, ArrowConvention arrow) {
  require_distinct(a, b, e);
  require_qubits(rho.layout(), {a, b, e}, "delta_balance");
  const DensityMatrix abe = rho.layout().size() == 3 ? rho : partial_trace(rho, {a, b, e});
  const DensityMatrix rho_ab = partial_trace(abe, {a, b});
  const DensityMatrix rho_ae = partial_trace(abe, {a, e});

  SsaReport r;
  r.s_ab = von_neumann_entropy(rho_ab);
  r.s_ae = von_neumann_entropy(rho_ae);
  r.s_b = von_neumann_entropy(abe, {b});
  r.s_e = von_neumann_entropy(abe, {e});
  r.e_ab = eof_two_qubit(rho_ab);
  r.e_ae = eof_two_qubit(rho_ae);

  const bool second = arrow == ArrowConvention::kMeasureSecond;
  const MeasureResult d_ab = second ? quantum_discord(rho_ab, a, b, cfg) : quantum_discord(rho_ab, b, a, cfg);
  const MeasureResult d_ae = second ? quantum_discord(rho_ae, a, e, cfg) : quantum_discord(rho_ae, e, a, cfg);
  r.discord_ab = d_ab.value;
  r.discord_ae = d_ae.value;
  r.spread_ab = d_ab.spread;
  r.spread_ae = d_ae.spread;

  r.delta = r.e_ab + r.e_ae - r.discord_ab - r.discord_ae;
  r.delta_tilde = std::max(0.0, r.delta);
  r.i1 = r.s_ab + r.s_ae - r.s_b - r.s_e;
  r.i2 = r.i1 - r.delta;
  r.ss_holds = r.i1 >= -kEntropyInequalityTol;
  r.strengthened_holds = r.i1 - r.delta_tilde >= -kDiscordSlack;
  return r;
}

DensityMatrix example_family_state(double alpha, double lambda) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvariantError("alpha", "must lie in [0, 1]");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvariantError("lambda", "must lie in [0, 1]");
  const double p = std::sqrt(std::max(0.0, (1.0 - alpha * alpha) / 2.0));
  CVector psi = CVector::Zero(8);
  psi(0b000) = alpha;
  psi(0b101) = p;
  psi(0b011) = p;
  CMatrix rho = (1.0 - lambda) * CMatrix::Identity(8, 8) / 8.0 + lambda * psi * psi.adjoint();
  return {std::move(rho), SubsystemLayout::uniform(2, {"A", "B", "E"})};
}

std::vector<double> uniform_grid(int steps) {
  if (steps < 1) throw InvariantError("alpha_steps", "must be at least 1");
  if (steps == 1) return {0.0};
  std::vector<double> g(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) g[static_cast<std::size_t>(k)] = static_cast<double>(k) / (steps - 1);
  return g;
}

std::vector<SsaReport> ssa_sweep(double lambda, const std::vector<double>& alpha_grid,
                                 const OptimizerConfig& cfg, ArrowConvention arrow) {
  std::vector<SsaReport> out;
  out.reserve(alpha_grid.size());
  for (std::size_t k = 0; k < alpha_grid.size(); ++k) {
    OptimizerConfig child = cfg;
    child.seed = cfg.seed + k;
    out.push_back(delta_balance(example_family_state(alpha_grid[k], lambda), "A", "B", "E", child, arrow));
  }
  return out;
}

}  // namespace qcorr
