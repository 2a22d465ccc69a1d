#include "vna/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace vna {

Eigh eigh(const Mat& a) {
  Mat sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> solver(sym);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Mat sqrt_psd(const Mat& a) {
  Eigh e = eigh(a);
  RealVec roots = e.values.cwiseMax(0.0).cwiseSqrt();
  return e.vectors * roots.asDiagonal() * e.vectors.adjoint();
}

double op_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

double nuclear_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues().sum();
}

double trace_norm_hermitian(const Mat& a) {
  return eigh(a).values.cwiseAbs().sum();
}

bool is_hermitian(const Mat& a, double tol) {
  return op_norm(a - a.adjoint()) <= tol;
}

double min_eigenvalue(const Mat& a) {
  return eigh(a).values.minCoeff();
}

Mat gaussian_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      double re = gauss(rng);
      double im = gauss(rng);
      g(i, j) = cplx(re, im);
    }
  return g;
}

Mat haar_unitary(int n, Rng& rng) {
  Mat g = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // normalize column phases so the distribution is Haar
  for (int j = 0; j < n; ++j) {
    cplx d = r(j, j);
    double m = std::abs(d);
    q.col(j) *= (m > 0.0) ? d / m : cplx(1.0, 0.0);
  }
  return q;
}

Mat gaussian_hermitian(int n, Rng& rng) {
  Mat g = gaussian_matrix(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

} // namespace vna
