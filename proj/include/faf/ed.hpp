#pragma once
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "faf/free_fermion.hpp"
#include "faf/pauli.hpp"
#include "faf/state_vector.hpp"

namespace faf {

enum class SpinModel { tfim, impurity, annni };

struct SpinModelSpec {
  SpinModel model = SpinModel::tfim;
  int n = 4;
  double hz = 1.0;
  double lambda = 0.0;
  Boundary bc = Boundary::open;
  int impurity_site = 0;  // 0 = N/2
};

/// Even-parity-sector sparse Hamiltonian. Basis states are the computational
/// states with an even number of down spins (P = prod Z = +1), indexed by a
/// rank table over the full 2^N range.
struct SpinHamiltonian {
  SpinModelSpec spec;
  std::vector<std::pair<double, PauliOperator>> terms;
  std::vector<std::uint32_t> basis;
  std::vector<std::int32_t> index_of;
  Eigen::SparseMatrix<double, Eigen::RowMajor> mat;

  int sector_dim() const { return static_cast<int>(basis.size()); }
};

SpinHamiltonian build_hamiltonian(const SpinModelSpec& spec);

StateVector embed_sector(const SpinHamiltonian& h, const Eigen::VectorXcd& v);
StateVector embed_sector(const SpinHamiltonian& h, const Eigen::VectorXd& v);

struct GroundResult {
  double energy = 0;
  Eigen::VectorXd vec;
  double residual = 0;
  int restarts = 0;
};

/// Lanczos with full reorthogonalization and Ritz restarts.
GroundResult ground_state(const SpinHamiltonian& h, double tol = 1e-9, int krylov = 250,
                          int max_restarts = 12, std::uint64_t seed = 12345);

struct EigenRecord {
  double energy;
  double f1, f2;
  double s_ent;
  double parity;
};

/// Dense diagonalization of the sector matrix with per-eigenstate FAF,
/// half-cut entanglement and parity. Capped at sector dimension 4096.
std::vector<EigenRecord> full_spectrum_scan(const SpinHamiltonian& h);

/// B = 1 - <Mx^4> / (3 <Mx^2>^2) with Mx = sum_m X_m.
double binder_cumulant(const StateVector& psi);

struct DkFk {
  double d_k, f_k;
};

DkFk dk_fk_from_values(double f_n1, double f_n2, int n1, int n2);
/// Ground-state FAF at two close sizes (N2 - N1 <= N1/8).
DkFk dk_fk_extract(const SpinModelSpec& base, int k, int n1, int n2);

/// Central difference of the ground-state FAF over h_z.
double faf_derivative(const SpinModelSpec& base, int k, double dh = 1e-3);

struct SpectralBounds {
  double emin, emax;
};

SpectralBounds estimate_bounds(const SpinHamiltonian& h, std::uint64_t seed = 99);

/// Chebyshev expansion of exp(-iHt) acting on a sector vector; the expansion
/// is stepped so each step stays within a fixed polynomial order.
Eigen::VectorXcd chebyshev_evolve(const SpinHamiltonian& h, Eigen::VectorXcd psi, double t,
                                  double tol = 1e-10, const SpectralBounds* bounds = nullptr);

double sector_energy(const SpinHamiltonian& h, const Eigen::VectorXcd& v);

struct DynamicsConfig {
  std::vector<double> grid;          // observation times, increasing
  double window_lo = 1000;           // late-time window for F_inf
  double window_hi = 2000;
  int window_samples = 24;
  double tol = 1e-9;
  int k = 1;
};

struct FafSeries {
  std::vector<double> t;
  std::vector<double> f;
  double f_inf = 0;
  double energy_drift = 0;  // max |<H>(t) - <H>(0)| over the grid
};

/// F_k(t) from a random even computational basis state under H.
FafSeries dynamics_faf(const SpinModelSpec& spec, const DynamicsConfig& cfg, std::uint64_t seed);

struct SaturationResult {
  double t_sat = -1;
  double gamma = 0;
  bool censored = true;
  double fit_rms = 0;
  int fit_points = 0;
};

/// First crossing of dF = F_inf - F(t) below eps plus the log-log decay slope.
/// The fit window defaults to dF/F_inf in [0.004, 0.4]; pass explicit time
/// bounds to override.
SaturationResult saturation_analysis(const FafSeries& series, double eps, double fit_t_lo = 0,
                                     double fit_t_hi = 0);

}  // namespace faf
