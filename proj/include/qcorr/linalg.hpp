#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qcorr {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Eigenvalues ascending, eigenvectors as columns.
struct EigenDecomposition {
  RVector values;
  CMatrix vectors;
};

/// Hermitian eigendecomposition. Throws ShapeError if `h` is not square or
/// deviates from Hermitian by more than `hermitian_tol` in any element.
EigenDecomposition eigh(const CMatrix& h, double hermitian_tol = 1e-8);

/// Eigenvalues only, ascending.
RVector eigvalsh(const CMatrix& h);

/// Largest element-wise modulus of h - h^dagger.
double hermitian_deviation(const CMatrix& h);

/// Largest element-wise modulus of a - b.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Positive square root of a positive semidefinite matrix; negative
/// eigenvalues from rounding are clipped to zero.
CMatrix psd_sqrt(const CMatrix& h);

namespace pauli {
CMatrix x();
CMatrix y();
CMatrix z();
}  // namespace pauli

}  // namespace qcorr
