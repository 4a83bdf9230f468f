#include "qcorr/state.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * dims[k];
  return s;
}

// Full-space offsets of every multi-index over `positions`, enumerated
// row-major in the order given (first position most significant).
std::vector<std::size_t> offsets(const std::vector<std::size_t>& dims,
                                 const std::vector<std::size_t>& positions) {
  const auto strides = strides_of(dims);
  std::vector<std::size_t> out{0};
  for (std::size_t p : positions) {
    std::vector<std::size_t> next;
    next.reserve(out.size() * dims[p]);
    for (std::size_t base : out) {
      for (std::size_t d = 0; d < dims[p]; ++d) next.push_back(base + d * strides[p]);
    }
    out = std::move(next);
  }
  return out;
}

std::vector<std::size_t> positions_of(const SubsystemLayout& layout,
                                      const std::vector<std::string>& labels) {
  std::vector<std::size_t> pos;
  pos.reserve(labels.size());
  for (const auto& l : labels) pos.push_back(layout.index_of(l));
  return pos;
}

std::vector<std::size_t> sorted_keep_positions(const SubsystemLayout& layout,
                                               const std::vector<std::string>& keep) {
  if (keep.empty()) throw LabelError("partial_trace: keep set is empty");
  std::set<std::size_t> unique;
  for (const auto& l : keep) unique.insert(layout.index_of(l));
  if (unique.size() != keep.size()) throw LabelError("partial_trace: duplicate label in keep set");
  return {unique.begin(), unique.end()};
}

std::vector<std::size_t> complement_positions(std::size_t n, const std::vector<std::size_t>& keep) {
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < n; ++k) {
    if (std::find(keep.begin(), keep.end(), k) == keep.end()) rest.push_back(k);
  }
  return rest;
}

std::vector<std::string> labels_at(const SubsystemLayout& layout, const std::vector<std::size_t>& pos) {
  std::vector<std::string> out;
  for (std::size_t p : pos) out.push_back(layout.labels()[p]);
  return out;
}

std::vector<std::size_t> dims_at(const SubsystemLayout& layout, const std::vector<std::size_t>& pos) {
  std::vector<std::size_t> out;
  for (std::size_t p : pos) out.push_back(layout.dims()[p]);
  return out;
}

void check_permutation(const SubsystemLayout& layout, const std::vector<std::string>& order) {
  if (order.size() != layout.size()) {
    throw LabelError("permute: order must list every label exactly once");
  }
  std::set<std::string> seen(order.begin(), order.end());
  if (seen.size() != order.size()) throw LabelError("permute: duplicate label");
  for (const auto& l : order) layout.index_of(l);
}

}  // namespace

// ---------------------------------------------------------------------------
// SubsystemLayout

SubsystemLayout::SubsystemLayout(std::vector<std::size_t> dims, std::vector<std::string> labels)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
  if (dims_.empty()) throw InvariantError("dims", "layout needs at least one subsystem");
  if (dims_.size() != labels_.size()) {
    throw InvariantError("labels", "dims and labels differ in length");
  }
  std::set<std::string> seen;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (dims_[k] < 2) {
      throw InvariantError("dims", "subsystem '" + labels_[k] + "' has dimension < 2");
    }
    if (labels_[k].empty()) throw InvariantError("labels", "empty label");
    if (!seen.insert(labels_[k]).second) {
      throw InvariantError("labels", "duplicate label '" + labels_[k] + "'");
    }
    total_ *= dims_[k];
    if (total_ > kMaxPureDim) {
      throw UnsupportedDimensionError("total dimension exceeds " + std::to_string(kMaxPureDim));
    }
  }
}

SubsystemLayout SubsystemLayout::uniform(std::size_t dim, std::vector<std::string> labels) {
  std::vector<std::size_t> dims(labels.size(), dim);
  return {std::move(dims), std::move(labels)};
}

std::size_t SubsystemLayout::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw LabelError("unknown subsystem label '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

bool SubsystemLayout::contains(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

SubsystemLayout SubsystemLayout::restrict_to(const std::vector<std::string>& keep) const {
  const auto pos = sorted_keep_positions(*this, keep);
  return {dims_at(*this, pos), labels_at(*this, pos)};
}

std::vector<std::string> SubsystemLayout::complement(const std::vector<std::string>& keep) const {
  std::vector<std::string> out;
  for (const auto& l : labels_) {
    if (std::find(keep.begin(), keep.end(), l) == keep.end()) out.push_back(l);
  }
  return out;
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout& other) const {
  auto dims = dims_;
  auto labels = labels_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  labels.insert(labels.end(), other.labels_.begin(), other.labels_.end());
  try {
    return {std::move(dims), std::move(labels)};
  } catch (const InvariantError& e) {
    if (e.invariant() == "labels") throw LabelError(std::string("tensor: ") + e.what());
    throw;
  }
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(CVector amplitudes, SubsystemLayout layout)
    : amplitudes_(std::move(amplitudes)), layout_(std::move(layout)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != layout_.total_dim()) {
    throw InvariantError("dims", "amplitude count " + std::to_string(amplitudes_.size()) +
                                     " does not match layout dimension " +
                                     std::to_string(layout_.total_dim()));
  }
  const double norm = amplitudes_.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kStateTol) {
    std::ostringstream os;
    os << "state norm is " << norm;
    throw InvariantError("norm", os.str());
  }
}

PureState PureState::basis(SubsystemLayout layout, const std::vector<std::size_t>& digits) {
  if (digits.size() != layout.size()) throw ShapeError("basis: one digit per subsystem required");
  std::size_t index = 0;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (digits[k] >= layout.dims()[k]) throw ShapeError("basis: digit out of range");
    index = index * layout.dims()[k] + digits[k];
  }
  CVector v = CVector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return {std::move(v), std::move(layout)};
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(CMatrix entries, SubsystemLayout layout)
    : entries_(std::move(entries)), layout_(std::move(layout)) {
  const auto n = static_cast<Eigen::Index>(layout_.total_dim());
  if (layout_.total_dim() > kMaxDensityDim) {
    throw UnsupportedDimensionError("density matrix dimension exceeds " +
                                    std::to_string(kMaxDensityDim));
  }
  if (entries_.rows() != n || entries_.cols() != n) {
    throw InvariantError("dims", "matrix is " + std::to_string(entries_.rows()) + "x" +
                                     std::to_string(entries_.cols()) + ", layout dimension is " +
                                     std::to_string(n));
  }
  if (!entries_.allFinite()) throw InvariantError("entries", "non-finite entry");
  const double herm = hermitian_deviation(entries_);
  if (herm > kStateTol) {
    std::ostringstream os;
    os << "max deviation from Hermitian is " << herm;
    throw InvariantError("hermitian", os.str());
  }
  entries_ = 0.5 * (entries_ + entries_.adjoint()).eval();
  const double tr = entries_.trace().real();
  if (std::abs(tr - 1.0) > kStateTol) {
    std::ostringstream os;
    os << "trace is " << tr;
    throw InvariantError("trace", os.str());
  }
  const double min_eig = eigvalsh(entries_).minCoeff();
  if (min_eig < -kPsdTol) {
    std::ostringstream os;
    os << "minimum eigenvalue is " << min_eig;
    throw InvariantError("positive_semidefinite", os.str());
  }
}

DensityMatrix::DensityMatrix(const PureState& psi)
    : DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint(), psi.layout()) {}

DensityMatrix DensityMatrix::maximally_mixed(SubsystemLayout layout) {
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  CMatrix m = CMatrix::Identity(n, n) / static_cast<double>(n);
  return {std::move(m), std::move(layout)};
}

// ---------------------------------------------------------------------------
// UnitaryMatrix

UnitaryMatrix::UnitaryMatrix(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw InvariantError("dims", "unitary must be square and non-empty");
  }
  if (!entries_.allFinite()) throw InvariantError("entries", "non-finite entry");
  const auto n = entries_.rows();
  const double dev = max_abs_diff(entries_ * entries_.adjoint(), CMatrix::Identity(n, n));
  if (dev > kStateTol) {
    std::ostringstream os;
    os << "max deviation of U U^dagger from identity is " << dev;
    throw InvariantError("unitarity", os.str());
  }
}

// ---------------------------------------------------------------------------
// Operations

PureState tensor(const PureState& a, const PureState& b) {
  auto layout = a.layout().concat(b.layout());
  CVector v(static_cast<Eigen::Index>(layout.total_dim()));
  const auto nb = b.amplitudes().size();
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
    v.segment(i * nb, nb) = a.amplitudes()(i) * b.amplitudes();
  }
  return {std::move(v), std::move(layout)};
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  auto layout = a.layout().concat(b.layout());
  return {kron(a.entries(), b.entries()), std::move(layout)};
}

QuantumState tensor(const QuantumState& a, const QuantumState& b) {
  if (a.index() != b.index()) {
    throw KindMismatchError("tensor: operands must both be pure states or both density matrices");
  }
  if (const auto* pa = std::get_if<PureState>(&a)) return tensor(*pa, std::get<PureState>(b));
  return tensor(std::get<DensityMatrix>(a), std::get<DensityMatrix>(b));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
  const auto& layout = rho.layout();
  const auto kept = sorted_keep_positions(layout, keep);
  const auto traced = complement_positions(layout.size(), kept);
  const auto ko = offsets(layout.dims(), kept);
  const auto to = offsets(layout.dims(), traced);
  const auto& m = rho.entries();
  const auto dk = static_cast<Eigen::Index>(ko.size());
  CMatrix red = CMatrix::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i) {
    for (Eigen::Index j = 0; j < dk; ++j) {
      cplx acc = 0.0;
      for (std::size_t t : to) {
        acc += m(static_cast<Eigen::Index>(ko[i] + t), static_cast<Eigen::Index>(ko[j] + t));
      }
      red(i, j) = acc;
    }
  }
  return {std::move(red), SubsystemLayout(dims_at(layout, kept), labels_at(layout, kept))};
}

DensityMatrix partial_trace(const PureState& psi, const std::vector<std::string>& keep) {
  const auto& layout = psi.layout();
  const auto kept = sorted_keep_positions(layout, keep);
  const auto traced = complement_positions(layout.size(), kept);
  const auto ko = offsets(layout.dims(), kept);
  const auto to = offsets(layout.dims(), traced);
  CMatrix m(static_cast<Eigen::Index>(ko.size()), static_cast<Eigen::Index>(to.size()));
  for (std::size_t i = 0; i < ko.size(); ++i) {
    for (std::size_t t = 0; t < to.size(); ++t) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t)) =
          psi.amplitudes()(static_cast<Eigen::Index>(ko[i] + to[t]));
    }
  }
  CMatrix red = m * m.adjoint();
  return {std::move(red), SubsystemLayout(dims_at(layout, kept), labels_at(layout, kept))};
}

CMatrix partial_transpose(const CMatrix& m, const SubsystemLayout& layout, const std::string& sub) {
  const std::size_t p = layout.index_of(sub);
  const std::size_t stride = strides_of(layout.dims())[p];
  const std::size_t d = layout.dims()[p];
  const auto n = m.rows();
  CMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::size_t di = (static_cast<std::size_t>(i) / stride) % d;
    for (Eigen::Index j = 0; j < n; ++j) {
      const std::size_t dj = (static_cast<std::size_t>(j) / stride) % d;
      const auto ii = static_cast<Eigen::Index>(i - di * stride + dj * stride);
      const auto jj = static_cast<Eigen::Index>(j - dj * stride + di * stride);
      out(ii, jj) = m(i, j);
    }
  }
  return out;
}

CMatrix partial_transpose(const DensityMatrix& rho, const std::string& sub) {
  return partial_transpose(rho.entries(), rho.layout(), sub);
}

DensityMatrix permute(const DensityMatrix& rho, const std::vector<std::string>& order) {
  check_permutation(rho.layout(), order);
  const auto pos = positions_of(rho.layout(), order);
  const auto map = offsets(rho.layout().dims(), pos);
  const auto n = static_cast<Eigen::Index>(map.size());
  CMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(i, j) = rho.entries()(static_cast<Eigen::Index>(map[i]), static_cast<Eigen::Index>(map[j]));
    }
  }
  return {std::move(out), SubsystemLayout(dims_at(rho.layout(), pos), order)};
}

PureState permute(const PureState& psi, const std::vector<std::string>& order) {
  check_permutation(psi.layout(), order);
  const auto pos = positions_of(psi.layout(), order);
  const auto map = offsets(psi.layout().dims(), pos);
  CVector out(static_cast<Eigen::Index>(map.size()));
  for (std::size_t i = 0; i < map.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = psi.amplitudes()(static_cast<Eigen::Index>(map[i]));
  }
  return {std::move(out), SubsystemLayout(dims_at(psi.layout(), pos), order)};
}

PureState purify(const DensityMatrix& rho, const std::string& ancilla_label) {
  const auto [w, v] = eigh(rho.entries());
  std::vector<Eigen::Index> support;
  for (Eigen::Index k = w.size(); k-- > 0;) {
    if (w(k) > kRankCutoff) support.push_back(k);
  }
  const std::size_t anc_dim = std::max<std::size_t>(support.size(), 2);
  auto layout = rho.layout().concat(SubsystemLayout({anc_dim}, {ancilla_label}));
  const auto n = static_cast<Eigen::Index>(rho.dim());
  CVector psi = CVector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  for (std::size_t a = 0; a < support.size(); ++a) {
    const double amp = std::sqrt(w(support[a]));
    for (Eigen::Index x = 0; x < n; ++x) {
      psi(x * static_cast<Eigen::Index>(anc_dim) + static_cast<Eigen::Index>(a)) =
          amp * v(x, support[a]);
    }
  }
  psi.normalize();
  return {std::move(psi), std::move(layout)};
}

cplx expectation(const DensityMatrix& rho, const CMatrix& op) {
  if (op.rows() != rho.entries().rows() || op.cols() != rho.entries().cols()) {
    throw ShapeError("expectation: operator shape does not match state");
  }
  return (rho.entries() * op).trace();
}

}  // namespace qcorr
