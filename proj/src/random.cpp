#include "qcorr/random.hpp"

#include <cmath>
#include <random>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

CMatrix ginibre(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  // Column-major fill order is part of the seed contract.
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx(re, im);
    }
  }
  return g;
}

}  // namespace

PureState random_pure_state(const SubsystemLayout& layout, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CVector v = ginibre(static_cast<Eigen::Index>(layout.total_dim()), 1, rng).col(0);
  v.normalize();
  return {std::move(v), layout};
}

UnitaryMatrix random_unitary(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw ShapeError("random_unitary: dimension must be positive");
  std::mt19937_64 rng(seed);
  const auto n = static_cast<Eigen::Index>(dim);
  const CMatrix g = ginibre(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    const cplx phase = mag > 0.0 ? r(k, k) / mag : cplx(1.0);
    q.col(k) *= phase;
  }
  return UnitaryMatrix(std::move(q));
}

DensityMatrix random_density_matrix(const SubsystemLayout& layout, std::uint64_t seed,
                                    std::size_t rank) {
  std::mt19937_64 rng(seed);
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  const auto r = rank == 0 ? n : static_cast<Eigen::Index>(rank);
  const CMatrix g = ginibre(n, r, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return {std::move(rho), layout};
}

CMatrix random_hermitian(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto n = static_cast<Eigen::Index>(dim);
  const CMatrix g = ginibre(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

}  // namespace qcorr
