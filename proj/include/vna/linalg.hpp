#pragma once

#include <complex>
#include <random>

#include <Eigen/Dense>

// Dense complex matrix kernels shared by all modules. Everything here is
// desk-scale (blocks of dimension <= 16), so full decompositions are used
// unconditionally.

namespace vna {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;
using Rng = std::mt19937_64;

struct Eigh {
  RealVec values; // ascending
  Mat vectors;    // unitary, columns are eigenvectors
};

// Hermitian eigendecomposition (input symmetrized first).
Eigh eigh(const Mat& a);

// PSD square root via eigendecomposition, negative eigenvalues clamped to 0.
Mat sqrt_psd(const Mat& a);

// largest singular value
double op_norm(const Mat& a);

// sum of singular values
double nuclear_norm(const Mat& a);

// sum of |eigenvalue| for Hermitian input
double trace_norm_hermitian(const Mat& a);

bool is_hermitian(const Mat& a, double tol);

// smallest eigenvalue of the Hermitian part
double min_eigenvalue(const Mat& a);

// entrywise i.i.d. standard complex Gaussian
Mat gaussian_matrix(int rows, int cols, Rng& rng);

// Haar-distributed unitary (QR of a Ginibre matrix, phases fixed)
Mat haar_unitary(int n, Rng& rng);

// random Hermitian matrix with Gaussian entries
Mat gaussian_hermitian(int n, Rng& rng);

} // namespace vna
