#include "qcorr/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "qcorr/errors.hpp"
#include "qcorr/simplex.hpp"

namespace qcorr {

namespace {

constexpr double kTwoPi = 6.283185307179586;

// -lambda log2 lambda summed over the spectrum of a (possibly unnormalized)
// Hermitian matrix.
double neg_xlogx_sum(const CMatrix& h) {
  auto term = [](double w) { return w > kRankCutoff ? -w * std::log2(w) : 0.0; };
  if (h.rows() == 1) return term(h(0, 0).real());
  if (h.rows() == 2) {
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(h(0, 1)));
    const double mid = 0.5 * (a + d);
    return term(mid + half_gap) + term(mid - half_gap);
  }
  const RVector w = eigvalsh(h);
  double s = 0.0;
  for (Eigen::Index k = 0; k < w.size(); ++k) s += term(w(k));
  return s;
}

// Marginal on (unmeasured, measured) in that order.
DensityMatrix ordered_pair(const DensityMatrix& rho, const std::string& first, const std::string& second) {
  if (first == second) throw LabelError("measured and unmeasured subsystems must differ");
  return permute(partial_trace(rho, {first, second}), {first, second});
}

// Sum over outcomes of p_k S(rho_x^k) for a two-party matrix with index
// x * dy + y and measurement basis `v` (columns) on y.
double conditional_entropy_after(const CMatrix& rho_xy, Eigen::Index dx, Eigen::Index dy,
                                 const CMatrix& v) {
  std::vector<CMatrix> cond(static_cast<std::size_t>(dy), CMatrix(dx, dx));
  for (Eigen::Index x = 0; x < dx; ++x) {
    for (Eigen::Index xp = x; xp < dx; ++xp) {
      const CMatrix proj = v.adjoint() * rho_xy.block(x * dy, xp * dy, dy, dy) * v;
      for (Eigen::Index k = 0; k < dy; ++k) {
        cond[static_cast<std::size_t>(k)](x, xp) = proj(k, k);
        cond[static_cast<std::size_t>(k)](xp, x) = std::conj(proj(k, k));
      }
    }
  }
  double total = 0.0;
  for (const auto& sigma : cond) {
    const double p = sigma.trace().real();
    if (p < kRankCutoff) continue;
    // p S(sigma / p) = -sum w log w + p log p over the unnormalized spectrum.
    total += neg_xlogx_sum(sigma) + p * std::log2(p);
  }
  return total;
}

double floor_measure(double v, bool& clamped, const char* what) {
  if (std::abs(v) < kMeasureFloor) {
    if (v < 0.0) clamped = true;
    return 0.0;
  }
  if (v < 0.0) {
    std::ostringstream os;
    os << what << " is " << v << ", below the numerical floor -" << kMeasureFloor;
    throw InternalConsistencyError(os.str());
  }
  return v;
}

struct Optimum {
  Measurement measurement;
  double cond_entropy;
  bool converged;
  double spread;
};

Optimum minimize_conditional_entropy(const DensityMatrix& pair, const OptimizerConfig& cfg) {
  cfg.validate();
  const auto dx = static_cast<Eigen::Index>(pair.layout().dims()[0]);
  const std::size_t dy_sz = pair.layout().dims()[1];
  const auto dy = static_cast<Eigen::Index>(dy_sz);
  if (dy_sz > kMaxMeasuredDim) {
    throw UnsupportedDimensionError("measured subsystem dimension " + std::to_string(dy_sz) +
                                    " exceeds " + std::to_string(kMaxMeasuredDim));
  }
  const CMatrix& rho = pair.entries();
  auto objective = [&](std::span<const double> p) {
    return conditional_entropy_after(rho, dx, dy, Measurement::basis_unitary(dy_sz, p));
  };

  const std::size_t np = Measurement::parameter_count(dy_sz);
  const int restarts = cfg.restarts_for(dy_sz);
  SimplexOptions opts;
  opts.ftol = cfg.tol;
  opts.max_iters = cfg.max_iters;

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  SimplexResult best;
  best.f = std::numeric_limits<double>::infinity();
  double worst = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    std::vector<double> x0(np);
    for (auto& a : x0) a = angle(rng);
    SimplexResult res = nelder_mead(objective, std::move(x0), opts);
    worst = std::max(worst, res.f);
    // Strict comparison keeps the earliest restart on ties.
    if (res.f < best.f) best = std::move(res);
  }
  const std::string& sub = pair.layout().labels()[1];
  return {Measurement::from_angles(sub, dy_sz, best.x), best.f, best.converged, worst - best.f};
}

struct CorrelationParts {
  MeasureResult j;
  double mutual_info;
};

CorrelationParts correlation_parts(const DensityMatrix& rho, const std::string& unmeasured,
                                   const std::string& measured, const OptimizerConfig& cfg) {
  const DensityMatrix pair = ordered_pair(rho, unmeasured, measured);
  const double s_x = von_neumann_entropy(pair, {unmeasured});
  const double s_y = von_neumann_entropy(pair, {measured});
  const double s_xy = von_neumann_entropy(pair);
  Optimum opt = minimize_conditional_entropy(pair, cfg);

  MeasureResult j;
  const double upper = std::min(s_x, s_y) + kMeasureFloor;
  j.value = std::min(floor_measure(s_x - opt.cond_entropy, j.clamped, "classical correlation"), upper);
  j.optimal_measurement = std::move(opt.measurement);
  j.converged = opt.converged;
  j.spread = opt.spread;
  return {std::move(j), s_x + s_y - s_xy};
}

}  // namespace

// ---------------------------------------------------------------------------
// OptimizerConfig

void OptimizerConfig::validate() const {
  if (restarts && *restarts < 1) throw InvariantError("restarts", "must be at least 1");
  if (!(tol > 0.0) || tol > 1e-4) throw InvariantError("tol", "must lie in (0, 1e-4]");
  if (max_iters < 1) throw InvariantError("max_iters", "must be at least 1");
}

int OptimizerConfig::restarts_for(std::size_t measured_dim) const {
  if (restarts) return *restarts;
  if (measured_dim <= 2) return 20;
  if (measured_dim <= 4) return 50;
  return 80;
}

// ---------------------------------------------------------------------------
// Measurement

CMatrix Measurement::basis_unitary(std::size_t dim, std::span<const double> params) {
  if (params.size() != parameter_count(dim)) {
    throw ShapeError("measurement: expected " + std::to_string(parameter_count(dim)) +
                     " parameters, got " + std::to_string(params.size()));
  }
  const auto n = static_cast<Eigen::Index>(dim);
  CMatrix v = CMatrix::Identity(n, n);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double c = std::cos(params[k]);
      const double s = std::sin(params[k]);
      const cplx ph = std::polar(1.0, params[k + 1]);
      k += 2;
      // v <- v * G, G acting on the (i, j) plane.
      const CVector ci = v.col(i);
      const CVector cj = v.col(j);
      v.col(i) = c * ci + ph * s * cj;
      v.col(j) = -std::conj(ph) * s * ci + c * cj;
    }
  }
  return v;
}

Measurement::Measurement(std::string sub, CMatrix basis, std::vector<double> params)
    : sub_(std::move(sub)), basis_(std::move(basis)), params_(std::move(params)) {
  const auto n = basis_.rows();
  CMatrix sum = CMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    CMatrix p = basis_.col(k) * basis_.col(k).adjoint();
    if (max_abs_diff(p * p, p) > kStateTol || std::abs(p.trace() - 1.0) > kStateTol) {
      throw InvariantError("projector", "projector " + std::to_string(k) + " is not rank-1 idempotent");
    }
    sum += p;
    projectors_.push_back(std::move(p));
  }
  if (max_abs_diff(sum, CMatrix::Identity(n, n)) > kStateTol) {
    throw InvariantError("completeness", "projectors do not sum to the identity");
  }
}

Measurement Measurement::from_angles(std::string sub, std::size_t dim, std::vector<double> params) {
  CMatrix v = basis_unitary(dim, params);
  return {std::move(sub), std::move(v), std::move(params)};
}

Measurement Measurement::computational(std::string sub, std::size_t dim) {
  return from_angles(std::move(sub), dim, std::vector<double>(parameter_count(dim), 0.0));
}

// ---------------------------------------------------------------------------
// Entropies

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double shannon_entropy(std::span<const double> probs) {
  double s = 0.0;
  for (double p : probs) {
    if (p > kRankCutoff) s -= p * std::log2(p);
  }
  return s;
}

double entropy_bits(const CMatrix& rho) { return std::max(0.0, neg_xlogx_sum(rho)); }

double von_neumann_entropy(const DensityMatrix& rho) { return entropy_bits(rho.entries()); }

double von_neumann_entropy(const DensityMatrix& rho, const std::vector<std::string>& side) {
  return von_neumann_entropy(partial_trace(rho, side));
}

double von_neumann_entropy(const PureState& psi, const std::vector<std::string>& side) {
  return von_neumann_entropy(partial_trace(psi, side));
}

double conditional_entropy(const DensityMatrix& rho, const std::string& given) {
  if (rho.layout().size() < 2) throw LabelError("conditional_entropy: need at least two subsystems");
  return von_neumann_entropy(rho) - von_neumann_entropy(rho, {given});
}

double mutual_information(const DensityMatrix& rho, const std::pair<std::string, std::string>& pair) {
  const auto& [x, y] = pair;
  if (x == y) throw LabelError("mutual_information: labels must differ");
  const DensityMatrix xy = partial_trace(rho, {x, y});
  const double i = von_neumann_entropy(xy, {x}) + von_neumann_entropy(xy, {y}) - von_neumann_entropy(xy);
  return std::max(i, 0.0);
}

double measured_conditional_entropy(const DensityMatrix& rho, const std::string& unmeasured,
                                    const Measurement& m) {
  const DensityMatrix pair = ordered_pair(rho, unmeasured, m.sub());
  const auto dx = static_cast<Eigen::Index>(pair.layout().dims()[0]);
  const auto dy = static_cast<Eigen::Index>(pair.layout().dims()[1]);
  if (m.basis().rows() != dy) throw ShapeError("measurement dimension does not match subsystem");
  return conditional_entropy_after(pair.entries(), dx, dy, m.basis());
}

// ---------------------------------------------------------------------------
// Classical correlation and discord

MeasureResult classical_correlation(const DensityMatrix& rho, const std::string& unmeasured,
                                    const std::string& measured, const OptimizerConfig& cfg) {
  return correlation_parts(rho, unmeasured, measured, cfg).j;
}

MeasureResult quantum_discord(const DensityMatrix& rho, const std::string& unmeasured,
                              const std::string& measured, const OptimizerConfig& cfg) {
  auto [j, mi] = correlation_parts(rho, unmeasured, measured, cfg);
  MeasureResult d = std::move(j);
  d.value = floor_measure(mi - d.value, d.clamped, "quantum discord");
  return d;
}

// ---------------------------------------------------------------------------
// Entanglement

double concurrence(const DensityMatrix& rho) {
  const auto& dims = rho.layout().dims();
  if (dims.size() != 2 || dims[0] != 2 || dims[1] != 2) {
    throw UnsupportedDimensionError("two-qubit closed form needs layout [2, 2]");
  }
  const CMatrix yy = kron(pauli::y(), pauli::y());
  const CMatrix tilde = yy * rho.entries().conjugate() * yy;
  const CMatrix root = psd_sqrt(rho.entries());
  const RVector w = eigvalsh(root * tilde * root);  // ascending
  double l[4];
  for (int k = 0; k < 4; ++k) l[k] = std::sqrt(std::max(0.0, w(3 - k)));
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double eof_two_qubit(const DensityMatrix& rho) {
  const double c = std::min(1.0, concurrence(rho));
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

double eof_pure_bipartite(const PureState& psi, const std::vector<std::string>& side) {
  if (side.empty() || side.size() >= psi.layout().size()) {
    throw LabelError("eof_pure_bipartite: side must be a nonempty proper subset of the labels");
  }
  return von_neumann_entropy(psi, side);
}

MeasureResult eof_via_koashi_winter(const PureState& psi, const std::string& a, const std::string& b,
                                    const OptimizerConfig& cfg) {
  const auto& labels = psi.layout().labels();
  if (labels.size() != 3) throw ShapeError("eof_via_koashi_winter: state must be tripartite");
  if (a == b) throw LabelError("eof_via_koashi_winter: labels must differ");
  psi.layout().index_of(a);
  psi.layout().index_of(b);
  std::string env;
  for (const auto& l : labels) {
    if (l != a && l != b) env = l;
  }
  const DensityMatrix rho_ae = partial_trace(psi, {a, env});
  MeasureResult d = quantum_discord(rho_ae, a, env, cfg);
  const double s_a_given_e = conditional_entropy(rho_ae, env);
  d.value = floor_measure(d.value + s_a_given_e, d.clamped, "entanglement of formation");
  return d;
}

double negativity(const DensityMatrix& rho, const std::string& sub) {
  const CMatrix pt = partial_transpose(rho, sub);
  const RVector w = eigvalsh(pt);
  const double n = 0.5 * (w.cwiseAbs().sum() - 1.0);
  return std::abs(n) < 1e-10 ? 0.0 : n;
}

}  // namespace qcorr
