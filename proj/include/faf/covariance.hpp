#pragma once
#include <Eigen/Dense>

namespace faf {

/// Real antisymmetric 2N x 2N matrix of two-point Majorana correlators,
/// M_mn = -(i/2) <[gamma_m, gamma_n]>. Antisymmetry is validated on
/// construction; physical-purity bounds (singular values <= 1) are checked
/// only by the operations that require them.
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(Eigen::MatrixXd m, double antisym_tol = 1e-10);

  static CovarianceMatrix vacuum(int n_sites);
  static CovarianceMatrix zero(int n_sites);

  int n_modes() const { return static_cast<int>(m_.rows()); }
  int n_sites() const { return n_modes() / 2; }
  const Eigen::MatrixXd& matrix() const { return m_; }

 private:
  Eigen::MatrixXd m_;
};

}  // namespace faf
