#pragma once
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>

#include <Eigen/Dense>

#include "faf/covariance.hpp"
#include "faf/pauli.hpp"

namespace faf {

enum class Sector { generic, even_parity };

/// Dense complex amplitude vector for exact small-N work. Basis convention:
/// |x_1 x_2 ... x_N> maps to the integer with qubit 1 as the most significant
/// bit. The engine refuses to allocate above a configurable qubit limit
/// (default 14).
class StateVector {
 public:
  StateVector(int n_qubits, Eigen::VectorXcd amplitudes, bool check_norm = true);

  static StateVector vacuum(int n_qubits);
  static StateVector basis_state(int n_qubits, std::uint64_t bits);

  int n_qubits() const { return n_; }
  std::uint64_t dim() const { return std::uint64_t(1) << n_; }
  const Eigen::VectorXcd& amplitudes() const { return amp_; }
  Eigen::VectorXcd& amplitudes() { return amp_; }
  double norm() const { return amp_.norm(); }

  static void set_qubit_limit(int n);
  static int qubit_limit();

 private:
  int n_;
  Eigen::VectorXcd amp_;
};

// In-place |psi> <- P |psi| (exact phase bookkeeping via the Pauli's i-power).
void apply_pauli(StateVector& psi, const PauliOperator& p);

std::complex<double> expectation(const StateVector& psi, const PauliOperator& op);

// M_mn = Re<-i gamma_m gamma_n>; an imaginary residue above `imag_tol`
// indicates a sign bug upstream and raises a diagnostic.
CovarianceMatrix covariance_matrix(const StateVector& psi, double imag_tol = 1e-10);

// Dense unitary on the listed qubits (1-based, qubits[0] is the most
// significant gate index). Rejects non-unitary input.
StateVector apply_unitary(const StateVector& psi, const Eigen::MatrixXcd& u,
                          std::span<const int> qubits);

StateVector haar_state(int n_qubits, Sector sector, std::uint64_t seed);

// von Neumann entropy in bits across the cut after the first `cut` qubits.
double entanglement_entropy(const StateVector& psi, int cut);

// Named states from the product-state catalogue.
StateVector prepare_psi_theta(double theta);                       // 4 qubits
StateVector prepare_psi_theta_product(double theta, int n_qubits); // N = 0 mod 4
StateVector prepare_t_product(double theta, double phi, int n_qubits);
StateVector prepare_pe_ground(double theta, int n_qubits);

StateVector tensor(const StateVector& a, const StateVector& b);

// V_mn(theta) = exp(theta gamma_m gamma_n / 2) applied to the state.
void apply_majorana_rotation(StateVector& psi, int m, int n, double theta);
// gamma_axis -> -gamma_axis, all other modes fixed.
void apply_mode_reflection(StateVector& psi, int axis);

// Binary round trip: 8-byte header (u32 qubit count, u32 endianness tag),
// then 2^N complex doubles.
void dump_state(const StateVector& psi, std::ostream& out);
StateVector load_state(std::istream& in);

}  // namespace faf
