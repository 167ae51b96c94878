#include "faf/covariance.hpp"

#include <stdexcept>

namespace faf {

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd m, double antisym_tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 2 || m_.rows() % 2 != 0)
    throw std::invalid_argument("CovarianceMatrix: dimension must be even and positive");
  double res = (m_ + m_.transpose()).cwiseAbs().maxCoeff();
  if (res > antisym_tol)
    throw std::invalid_argument("CovarianceMatrix: input is not antisymmetric");
  // Scrub the residue so downstream spectral code sees an exact antisymmetric matrix.
  m_ = 0.5 * (m_ - m_.transpose().eval());
}

CovarianceMatrix CovarianceMatrix::vacuum(int n_sites) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n_sites, 2 * n_sites);
  for (int k = 0; k < n_sites; ++k) {
    m(2 * k, 2 * k + 1) = 1.0;
    m(2 * k + 1, 2 * k) = -1.0;
  }
  return CovarianceMatrix(std::move(m));
}

CovarianceMatrix CovarianceMatrix::zero(int n_sites) {
  return CovarianceMatrix(Eigen::MatrixXd::Zero(2 * n_sites, 2 * n_sites));
}

}  // namespace faf
