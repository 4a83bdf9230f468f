#include "qcorr/linalg.hpp"

#include <string>

#include "qcorr/errors.hpp"

namespace qcorr {

double hermitian_deviation(const CMatrix& h) {
  if (h.size() == 0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

EigenDecomposition eigh(const CMatrix& h, double hermitian_tol) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw ShapeError("eigh: matrix must be square and non-empty, got " +
                     std::to_string(h.rows()) + "x" + std::to_string(h.cols()));
  }
  const double dev = hermitian_deviation(h);
  if (dev > hermitian_tol) {
    throw ShapeError("eigh: matrix is not Hermitian (deviation " +
                     std::to_string(dev) + ")");
  }
  // Symmetrize so the solver sees an exactly Hermitian input.
  const CMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RVector eigvalsh(const CMatrix& h) {
  const CMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix psd_sqrt(const CMatrix& h) {
  const auto [w, v] = eigh(h);
  RVector root = w.cwiseMax(0.0).cwiseSqrt();
  return v * root.cast<cplx>().asDiagonal() * v.adjoint();
}

namespace pauli {

CMatrix x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix y() {
  CMatrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

CMatrix z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace pauli

}  // namespace qcorr
