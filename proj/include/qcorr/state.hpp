#pragma once

// Dense small-dimension states.
//
// Index convention: a basis index of a composite system is row-major in the
// layout order, i.e. the leftmost label is the most significant digit. For a
// layout [A,B,E] of qubits, index 5 = 0b101 is |A=1, B=0, E=1>.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "qcorr/linalg.hpp"

namespace qcorr {

/// Largest total dimension of a DensityMatrix.
inline constexpr std::size_t kMaxDensityDim = 64;
/// Largest total dimension of a PureState. Pure states are never expanded to
/// a full density matrix, so they may carry one more qubit (the n = 3 DQC1
/// purification is 2 * 8 * 8 = 128).
inline constexpr std::size_t kMaxPureDim = 128;

inline constexpr double kStateTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kRankCutoff = 1e-12;

class SubsystemLayout {
 public:
  SubsystemLayout(std::vector<std::size_t> dims, std::vector<std::string> labels);

  /// Layout of `n` subsystems with the given common dimension, labelled by
  /// the given names.
  static SubsystemLayout uniform(std::size_t dim, std::vector<std::string> labels);

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return dims_.size(); }
  std::size_t total_dim() const noexcept { return total_; }

  /// Position of `label`; throws LabelError if absent.
  std::size_t index_of(const std::string& label) const;
  bool contains(const std::string& label) const;
  std::size_t dim_of(const std::string& label) const { return dims_[index_of(label)]; }

  /// Sub-layout with the given labels, in this layout's order.
  SubsystemLayout restrict_to(const std::vector<std::string>& keep) const;
  /// Labels not in `keep`, in layout order.
  std::vector<std::string> complement(const std::vector<std::string>& keep) const;

  SubsystemLayout concat(const SubsystemLayout& other) const;

  bool operator==(const SubsystemLayout&) const = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::string> labels_;
  std::size_t total_ = 1;
};

class PureState {
 public:
  PureState(CVector amplitudes, SubsystemLayout layout);

  const CVector& amplitudes() const noexcept { return amplitudes_; }
  const SubsystemLayout& layout() const noexcept { return layout_; }
  std::size_t dim() const noexcept { return layout_.total_dim(); }

  /// Computational basis state; `digits` gives one index per subsystem.
  static PureState basis(SubsystemLayout layout, const std::vector<std::size_t>& digits);

 private:
  CVector amplitudes_;
  SubsystemLayout layout_;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and positive semidefiniteness.
  DensityMatrix(CMatrix entries, SubsystemLayout layout);

  /// |psi><psi|. Requires psi.dim() <= kMaxDensityDim.
  explicit DensityMatrix(const PureState& psi);

  const CMatrix& entries() const noexcept { return entries_; }
  const SubsystemLayout& layout() const noexcept { return layout_; }
  std::size_t dim() const noexcept { return layout_.total_dim(); }

  static DensityMatrix maximally_mixed(SubsystemLayout layout);

 private:
  CMatrix entries_;
  SubsystemLayout layout_;
};

class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(CMatrix entries);

  const CMatrix& entries() const noexcept { return entries_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }

 private:
  CMatrix entries_;
};

using QuantumState = std::variant<PureState, DensityMatrix>;

PureState tensor(const PureState& a, const PureState& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
/// Throws KindMismatchError when the operands are of different kinds.
QuantumState tensor(const QuantumState& a, const QuantumState& b);

/// Reduced state on `keep`. The result carries the kept labels in the
/// original layout order regardless of the order given.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);
DensityMatrix partial_trace(const PureState& psi, const std::vector<std::string>& keep);

/// Transpose of the `sub` factor only. Not a state in general.
CMatrix partial_transpose(const DensityMatrix& rho, const std::string& sub);
CMatrix partial_transpose(const CMatrix& m, const SubsystemLayout& layout, const std::string& sub);

/// Same state with subsystems rearranged into `order` (a permutation of the
/// layout labels).
DensityMatrix permute(const DensityMatrix& rho, const std::vector<std::string>& order);
PureState permute(const PureState& psi, const std::vector<std::string>& order);

/// Pure state on layout + ancilla whose marginal is rho. The ancilla
/// dimension is the rank of rho (eigenvalues above kRankCutoff), clamped to a
/// minimum of 2.
PureState purify(const DensityMatrix& rho, const std::string& ancilla_label);

/// Expectation value Tr(rho O) of an operator on the full space.
cplx expectation(const DensityMatrix& rho, const CMatrix& op);

}  // namespace qcorr
