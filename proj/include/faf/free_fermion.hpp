#pragma once
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "faf/covariance.hpp"

namespace faf {

enum class Boundary { open, periodic };

/// H_+ = (i/4) sum_{mn} h_mn gamma_m gamma_n with h real antisymmetric.
struct QuadraticHamiltonian {
  Eigen::MatrixXd h;

  explicit QuadraticHamiltonian(Eigen::MatrixXd h_in);
  int n_modes() const { return static_cast<int>(h.rows()); }
  int n_sites() const { return n_modes() / 2; }
};

/// V_mn(theta) = exp[theta gamma_m gamma_n / 2]; 1 <= m < n <= 2N.
struct PlaneRotation {
  int m, n;
  double theta;
};

/// gamma_axis -> -gamma_axis, everything else fixed.
struct Reflection {
  int axis;
};

using MatchgateElement = std::variant<PlaneRotation, Reflection>;

/// h = G^T blockdiag([[0,eps_m],[-eps_m,0]]) G with eps sorted descending.
struct CanonicalForm {
  Eigen::MatrixXd g;    // orthogonal
  Eigen::VectorXd eps;  // >= 0, descending
};

CanonicalForm canonical_form(const QuadraticHamiltonian& h);

struct GaussianGroundState {
  CovarianceMatrix cov;
  double energy;
  Eigen::VectorXd eps;
  Eigen::MatrixXd g;
  bool parity_adjusted;  // lowest mode occupation flipped to stay in the even sector
  bool degenerate;       // some eps below 1e-10; the ground state is not unique
};

/// Even-parity-sector ground state of H_+ as a covariance matrix.
GaussianGroundState ground_covariance(const QuadraticHamiltonian& h);

/// Product of the Givens rotations / axis reflections of the circuit, in the
/// convention U^dag gamma_a U = sum_b G_ab gamma_b (later gates multiply from
/// the left).
Eigen::MatrixXd matchgate_to_orthogonal(const std::vector<MatchgateElement>& circuit);

/// TFIM in the even-parity sector (J = 1); PBC adds the -g gamma_1 gamma_2N
/// corner term with g = 1.
QuadraticHamiltonian tfim_hamiltonian(int n_sites, double hz, Boundary bc);

/// |<gamma_i gamma_{i+2r}>| in the critical Ising ground state with PBC:
/// 0 for integer r, [N sin(pi r / N)]^{-1} for half-integer r.
double ising_critical_correlator(int n_sites, double r, bool periodic = true);

struct PeschelEmery {
  double h_pe;
  double cos_theta;
  CovarianceMatrix cov;  // ANNNI-basis ground-state covariance (PBC)
};

/// Closed-form ground-state covariance on the Peschel-Emery line
/// h_z = 1/(4 lambda) - lambda, 0 < lambda < 1/2.
PeschelEmery pe_covariance(int n_sites, double lambda);

}  // namespace faf
