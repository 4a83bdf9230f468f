#pragma once

// Entropic and correlation measures. All values are in bits.
//
// Arrow convention: J<-(X,Y) and discord<-(X,Y) measure the second-named
// subsystem Y and leave X unmeasured.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcorr/state.hpp"

namespace qcorr {

/// Largest measured-subsystem dimension the optimizer accepts.
inline constexpr std::size_t kMaxMeasuredDim = 8;
/// Negative measure values down to this floor are reported as 0.
inline constexpr double kMeasureFloor = 1e-9;

struct OptimizerConfig {
  /// Unset: 20, 50 or 80 restarts for measured dimension 2, 4 or 8.
  std::optional<int> restarts;
  double tol = 1e-8;
  int max_iters = 2000;
  std::uint64_t seed = 42;

  /// Throws InvariantError if restarts < 1, tol is not in (0, 1e-4] or
  /// max_iters < 1.
  void validate() const;
  int restarts_for(std::size_t measured_dim) const;
};

/// Rank-1 projective measurement on one subsystem. The measurement basis is
/// the columns of V = G_1 G_2 ... G_m, a fixed ordered product of two-level
/// rotations over all pairs (i < j), each carrying an angle and a phase.
class Measurement {
 public:
  static Measurement from_angles(std::string sub, std::size_t dim, std::vector<double> params);
  /// Computational basis.
  static Measurement computational(std::string sub, std::size_t dim);

  static std::size_t parameter_count(std::size_t dim) { return dim * (dim - 1); }
  static CMatrix basis_unitary(std::size_t dim, std::span<const double> params);

  const std::string& sub() const noexcept { return sub_; }
  const std::vector<CMatrix>& projectors() const noexcept { return projectors_; }
  const std::vector<double>& params() const noexcept { return params_; }
  /// Columns are the measurement vectors.
  const CMatrix& basis() const noexcept { return basis_; }

 private:
  Measurement(std::string sub, CMatrix basis, std::vector<double> params);

  std::string sub_;
  CMatrix basis_;
  std::vector<CMatrix> projectors_;
  std::vector<double> params_;
};

struct MeasureResult {
  double value = 0.0;
  std::optional<Measurement> optimal_measurement;
  bool converged = true;
  /// max - min of the per-restart optima.
  double spread = 0.0;
  /// A small negative raw value was reported as 0.
  bool clamped = false;
};

double binary_entropy(double p);
double shannon_entropy(std::span<const double> probs);
/// -sum w log2 w over eigenvalues above the rank cutoff.
double entropy_bits(const CMatrix& rho);

double von_neumann_entropy(const DensityMatrix& rho);
/// Entropy of the marginal on `side`.
double von_neumann_entropy(const DensityMatrix& rho, const std::vector<std::string>& side);
double von_neumann_entropy(const PureState& psi, const std::vector<std::string>& side);

/// S(rho) - S(rho_given). May be negative.
double conditional_entropy(const DensityMatrix& rho, const std::string& given);

/// S_x + S_y - S_xy on the (x, y) marginal.
double mutual_information(const DensityMatrix& rho, const std::pair<std::string, std::string>& pair);

/// sum_k p_k S(rho_unmeasured^k) after measuring `m` on the (unmeasured, m.sub())
/// marginal of rho.
double measured_conditional_entropy(const DensityMatrix& rho, const std::string& unmeasured,
                                    const Measurement& m);

MeasureResult classical_correlation(const DensityMatrix& rho, const std::string& unmeasured,
                                    const std::string& measured, const OptimizerConfig& cfg = {});

MeasureResult quantum_discord(const DensityMatrix& rho, const std::string& unmeasured,
                              const std::string& measured, const OptimizerConfig& cfg = {});

/// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix& rho);
/// Wootters closed form. Layout must be exactly [2, 2].
double eof_two_qubit(const DensityMatrix& rho);

/// Entropy of entanglement across `side` versus the rest.
double eof_pure_bipartite(const PureState& psi, const std::vector<std::string>& side);

/// E(a, b) of a pure tripartite state as discord<-(a, e) + S(a|e), where e is
/// the third subsystem. Under-optimization only raises the returned value.
MeasureResult eof_via_koashi_winter(const PureState& psi, const std::string& a,
                                    const std::string& b, const OptimizerConfig& cfg = {});

/// (||rho^{T_sub}||_1 - 1) / 2.
double negativity(const DensityMatrix& rho, const std::string& sub);

}  // namespace qcorr
