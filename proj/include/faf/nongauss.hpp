#pragma once
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "faf/covariance.hpp"
#include "faf/state_vector.hpp"

namespace faf {

/// Fermionic antiflatness F_k = N - (1/2) tr[(M^T M)^k], evaluated through the
/// singular values of M so large k does not amplify antisymmetry loss.
double antiflatness(const CovarianceMatrix& m, int k);

/// Williamson eigenvalues: the N per-block singular values of M, descending.
/// The paired SVD spectrum is validated with a relative gap of 1e-6.
std::vector<double> williamson_eigenvalues(const CovarianceMatrix& m);

/// NGE_inf = -sum_i log2[((1+l_i)/2)^2 + ((1-l_i)/2)^2]. Rejects l_i > 1+1e-8.
double nge_infinity(const CovarianceMatrix& m);

/// NGE_q = -log2 tr[(box^q rho)^2] via the dense fermionic beam splitter on
/// two copies; the workspace doubles the qubit count, so N is capped at 6.
double nge_finite_q(const StateVector& psi, int q);

/// Closed-form Haar average of F_k for k in {1,2}, exact rational arithmetic.
double typical_faf(int n_qubits, int k, Sector sector);

/// Leading-order N - C_k 2^k N^{k+1} / d^k, valid for every k >= 1.
double leading_typical_faf(int n_qubits, int k, Sector sector = Sector::generic);

struct TypicalFafEntry {
  int n;
  int k;
  Sector sector;
  double value;
};

std::vector<TypicalFafEntry> typical_faf_table(const std::vector<int>& n_list,
                                               const std::vector<int>& k_list, Sector sector);

/// Gaussian antisymmetric ensemble: i.i.d. N(0, sigma2) above the diagonal.
/// Not constrained to physical purity.
CovarianceMatrix random_covariance(int n_qubits, double sigma2, std::uint64_t seed);

/// k=1 FAF straight from a table of correlators <i gamma_m gamma_n> (modes
/// 1-based, m != n). Entries present for both orders must be antisymmetric.
double faf_from_correlators(int n_modes, const std::map<std::pair<int, int>, double>& correlators);

}  // namespace faf
