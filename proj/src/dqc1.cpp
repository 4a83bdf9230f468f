#include "qcorr/dqc1.hpp"

#include <cmath>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

int qubits_for(std::size_t dim) {
  int n = 0;
  std::size_t d = 1;
  while (d < dim) {
    d *= 2;
    ++n;
  }
  if (d != dim || n < 1) {
    throw UnsupportedDimensionError("register dimension " + std::to_string(dim) +
                                    " is not a power of two >= 2");
  }
  return n;
}

PureState purification_with_amplitudes(const Dqc1Instance& inst, const std::vector<double>& amps) {
  const auto d = static_cast<Eigen::Index>(inst.unitary().dim());
  SubsystemLayout layout({2, static_cast<std::size_t>(d), static_cast<std::size_t>(d)}, {"A", "B", "E"});
  CVector psi = CVector::Zero(2 * d * d);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double c = amps[static_cast<std::size_t>(i)];
    if (c == 0.0) continue;
    const cplx phase = std::polar(1.0, inst.eigenphases()[static_cast<std::size_t>(i)]);
    for (Eigen::Index b = 0; b < d; ++b) {
      const cplx u = inst.eigenvectors()(b, i);
      psi(0 * d * d + b * d + i) += c * inv_sqrt2 * u;
      psi(1 * d * d + b * d + i) += c * inv_sqrt2 * phase * u;
    }
  }
  return {std::move(psi), std::move(layout)};
}

}  // namespace

// ---------------------------------------------------------------------------
// Dqc1Instance

Dqc1Instance::Dqc1Instance(UnitaryMatrix u, int n, std::vector<double> phases, CMatrix vectors,
                           std::vector<double> weights)
    : unitary_(std::move(u)),
      n_(n),
      phases_(std::move(phases)),
      eigenvectors_(std::move(vectors)),
      weights_(std::move(weights)) {}

Dqc1Instance Dqc1Instance::standard(const UnitaryMatrix& u) {
  std::vector<double> w(u.dim(), 1.0 / static_cast<double>(u.dim()));
  return with_weights(u, std::move(w));
}

Dqc1Instance Dqc1Instance::with_weights(const UnitaryMatrix& u, std::vector<double> weights) {
  const int n = qubits_for(u.dim());
  if (n > kMaxDqc1Qubits) {
    throw UnsupportedDimensionError("DQC1 register limited to " + std::to_string(kMaxDqc1Qubits) +
                                    " qubits");
  }
  if (weights.size() != u.dim()) throw InvariantError("weights", "one weight per eigenvector required");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvariantError("weights", "weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw InvariantError("weights", "weights must sum to 1");

  // U is normal, so its complex Schur form is diagonal and Q is a unitary
  // eigenbasis even for degenerate spectra.
  Eigen::ComplexSchur<CMatrix> schur(u.entries());
  const CMatrix& q = schur.matrixU();
  const CMatrix& t = schur.matrixT();
  std::vector<double> phases(u.dim());
  CVector eig(static_cast<Eigen::Index>(u.dim()));
  for (Eigen::Index k = 0; k < t.rows(); ++k) {
    phases[static_cast<std::size_t>(k)] = std::arg(t(k, k));
    eig(k) = std::polar(1.0, phases[static_cast<std::size_t>(k)]);
  }
  const double residual = max_abs_diff(u.entries() * q, q * eig.asDiagonal());
  if (residual > 1e-9) {
    throw InvariantError("eigendecomposition", "U q != q diag(e^{i theta}) (residual " +
                                                   std::to_string(residual) + ")");
  }
  return {u, n, std::move(phases), q, std::move(weights)};
}

bool Dqc1Instance::uniform_weights() const {
  const double w0 = 1.0 / static_cast<double>(weights_.size());
  for (double w : weights_) {
    if (std::abs(w - w0) > 1e-12) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// States

DensityMatrix build_dqc1_state(const Dqc1Instance& inst) {
  if (!inst.uniform_weights()) {
    throw InvariantError("weights", "non-uniform weights: use build_nonmaximal_dqc1");
  }
  const auto d = static_cast<Eigen::Index>(inst.unitary().dim());
  CMatrix rho(2 * d, 2 * d);
  rho.topLeftCorner(d, d) = CMatrix::Identity(d, d);
  rho.bottomRightCorner(d, d) = CMatrix::Identity(d, d);
  rho.topRightCorner(d, d) = inst.unitary().entries().adjoint();
  rho.bottomLeftCorner(d, d) = inst.unitary().entries();
  rho /= static_cast<double>(2 * d);
  return {std::move(rho), SubsystemLayout({2, static_cast<std::size_t>(d)}, {"A", "B"})};
}

PureState build_dqc1_purification(const Dqc1Instance& inst) {
  const std::size_t d = inst.unitary().dim();
  return purification_with_amplitudes(inst, std::vector<double>(d, 1.0 / std::sqrt(static_cast<double>(d))));
}

PureState build_nonmaximal_dqc1(const Dqc1Instance& inst) {
  std::vector<double> amps;
  for (double w : inst.weights()) amps.push_back(std::sqrt(w));
  return purification_with_amplitudes(inst, amps);
}

// ---------------------------------------------------------------------------
// Trace estimation

cplx normalized_trace_estimate(const DensityMatrix& rho_ab) {
  const auto& layout = rho_ab.layout();
  if (layout.size() != 2 || layout.dims()[0] != 2) {
    throw ShapeError("trace_estimate: expected a (control qubit, register) layout");
  }
  qubits_for(layout.dims()[1]);
  const DensityMatrix rho_a = partial_trace(rho_ab, {layout.labels()[0]});
  const double sx = expectation(rho_a, pauli::x()).real();
  const double sy = expectation(rho_a, pauli::y()).real();
  return {sx, sy};
}

cplx trace_estimate(const DensityMatrix& rho_ab) {
  return static_cast<double>(rho_ab.layout().dims()[1]) * normalized_trace_estimate(rho_ab);
}

// ---------------------------------------------------------------------------
// Ledger

Dqc1Ledger dqc1_ledger(const Dqc1Instance& inst, const OptimizerConfig& cfg) {
  if (inst.n() > kMaxDqc1LedgerQubits) {
    throw UnsupportedDimensionError("dqc1_ledger: discord entries need n <= " +
                                    std::to_string(kMaxDqc1LedgerQubits));
  }
  const PureState psi = build_nonmaximal_dqc1(inst);
  const DensityMatrix rho_ab = partial_trace(psi, {"A", "B"});
  const DensityMatrix rho_ae = partial_trace(psi, {"A", "E"});
  const DensityMatrix rho_be = partial_trace(psi, {"B", "E"});

  Dqc1Ledger L;
  L.n = inst.n();
  L.e_a_be = von_neumann_entropy(psi, {"A"});
  L.e_b_ae = von_neumann_entropy(psi, {"B"});
  L.e_e_ab = von_neumann_entropy(psi, {"E"});

  const MeasureResult d_ab = quantum_discord(rho_ab, "A", "B", cfg);
  const MeasureResult d_ba = quantum_discord(rho_ab, "B", "A", cfg);
  const MeasureResult d_ae = quantum_discord(rho_ae, "A", "E", cfg);
  const MeasureResult d_be = quantum_discord(rho_be, "B", "E", cfg);
  L.discord_ab = d_ab.value;
  L.discord_ba = d_ba.value;
  L.discord_ae = d_ae.value;
  L.discord_be = d_be.value;
  L.spread_ab = d_ab.spread;
  L.spread_ba = d_ba.spread;
  L.spread_ae = d_ae.spread;
  L.spread_be = d_be.spread;

  if (inst.n() == 1) {
    L.e_ab = eof_two_qubit(rho_ab);
    L.e_ae = eof_two_qubit(rho_ae);
    L.e_be = eof_two_qubit(rho_be);
    L.concurrence_ab = concurrence(rho_ab);
  } else {
    // E_XY = D<-(X,Z) + S(X|Z) on the pure ABE state, Z the third party.
    L.e_ab = std::max(0.0, L.discord_ae + (von_neumann_entropy(rho_ae) - L.e_e_ab));
    L.e_ae = std::max(0.0, L.discord_ab + (von_neumann_entropy(rho_ab) - L.e_b_ae));
    L.e_be = eof_via_koashi_winter(psi, "E", "B", cfg).value;
  }

  L.negativity_ab = negativity(rho_ab, "A");
  L.trace_estimate = trace_estimate(rho_ab);
  L.exact_trace = inst.unitary().entries().trace();

  L.r8 = L.e_be - (L.e_e_ab + L.discord_ba - L.e_a_be);
  L.r9 = L.discord_be - (L.e_e_ab - L.e_a_be);
  L.r10 = L.discord_ba - (L.e_be - L.discord_be);
  return L;
}

}  // namespace qcorr
