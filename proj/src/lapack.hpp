#pragma once

#include <Eigen/Dense>

#include <complex>

namespace hqed::lapack {

// Lowest `count` eigenpairs of a symmetric (Hermitian) matrix via ?syevr/?heevr, range 'I'.
// `a` is overwritten. `z` is resized to n x count when vectors are requested.
// Returns the LAPACK info code; `found` receives the number of eigenvalues computed.
int dsyevr(Eigen::MatrixXd& a, int count, bool want_vectors, Eigen::VectorXd& w, Eigen::MatrixXd& z, int& found);
int zheevr(Eigen::MatrixXcd& a, int count, Eigen::VectorXd& w, Eigen::MatrixXcd& z, int& found);

// Lowest `count` eigenvalues of a symmetric band matrix via dsbevx, range 'I'. `ab` holds the upper
// band in LAPACK layout, (kd + 1) x n with ab(kd + i - j, j) = a(i, j); it is overwritten.
int dsbevx(Eigen::MatrixXd& ab, int kd, int count, Eigen::VectorXd& w, int& found);

// Name of the shared object that supplied the routines, for diagnostics.
const char* backend_name();

}  // namespace hqed::lapack
