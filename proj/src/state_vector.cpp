#include "faf/state_vector.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

#include "faf/rng.hpp"

namespace faf {

namespace {

std::atomic<int> g_qubit_limit{14};

constexpr std::complex<double> kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

// Bit of qubit `site` (1-based) inside a basis index.
inline std::uint64_t site_basis_mask(int n, int site) {
  return std::uint64_t(1) << (n - site);
}

// Translate the Pauli's site masks into basis-index masks (qubit 1 = MSB).
struct BasisMasks {
  std::uint64_t x = 0, z = 0;
  std::complex<double> phase;
};

BasisMasks basis_masks(const PauliOperator& p, int n) {
  BasisMasks m;
  for (int s = 1; s <= n; ++s) {
    if (p.x_bit(s)) m.x |= site_basis_mask(n, s);
    if (p.z_bit(s)) m.z |= site_basis_mask(n, s);
  }
  m.phase = kIPow[p.phase_power()];
  return m;
}

}  // namespace

StateVector::StateVector(int n_qubits, Eigen::VectorXcd amplitudes, bool check_norm)
    : n_(n_qubits), amp_(std::move(amplitudes)) {
  if (n_qubits < 1) throw std::invalid_argument("StateVector: n_qubits must be >= 1");
  if (n_qubits > qubit_limit())
    throw std::length_error("StateVector: qubit count exceeds the dense-engine limit");
  if (amp_.size() != Eigen::Index(std::uint64_t(1) << n_qubits))
    throw std::invalid_argument("StateVector: amplitude count is not 2^N");
  if (check_norm && std::abs(amp_.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("StateVector: state is not normalized");
}

StateVector StateVector::vacuum(int n_qubits) { return basis_state(n_qubits, 0); }

StateVector StateVector::basis_state(int n_qubits, std::uint64_t bits) {
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(Eigen::Index(std::uint64_t(1) << n_qubits));
  amp(Eigen::Index(bits)) = 1.0;
  return StateVector(n_qubits, std::move(amp), false);
}

void StateVector::set_qubit_limit(int n) { g_qubit_limit.store(n); }
int StateVector::qubit_limit() { return g_qubit_limit.load(); }

void apply_pauli(StateVector& psi, const PauliOperator& p) {
  if (p.n_qubits() != psi.n_qubits())
    throw std::invalid_argument("apply_pauli: qubit count mismatch");
  const int n = psi.n_qubits();
  BasisMasks m = basis_masks(p, n);
  Eigen::VectorXcd& a = psi.amplitudes();
  const std::uint64_t dim = psi.dim();
  if (m.x == 0) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      double sgn = (std::popcount(b & m.z) & 1) ? -1.0 : 1.0;
      a(Eigen::Index(b)) *= m.phase * sgn;
    }
    return;
  }
  Eigen::VectorXcd out(a.size());
  for (std::uint64_t b = 0; b < dim; ++b) {
    double sgn = (std::popcount(b & m.z) & 1) ? -1.0 : 1.0;
    out(Eigen::Index(b ^ m.x)) = m.phase * sgn * a(Eigen::Index(b));
  }
  psi.amplitudes() = std::move(out);
}

std::complex<double> expectation(const StateVector& psi, const PauliOperator& op) {
  if (op.n_qubits() != psi.n_qubits())
    throw std::invalid_argument("expectation: qubit count mismatch");
  const int n = psi.n_qubits();
  BasisMasks m = basis_masks(op, n);
  const Eigen::VectorXcd& a = psi.amplitudes();
  const std::uint64_t dim = psi.dim();
  std::complex<double> acc = 0;
  for (std::uint64_t b = 0; b < dim; ++b) {
    double sgn = (std::popcount(b & m.z) & 1) ? -1.0 : 1.0;
    acc += std::conj(a(Eigen::Index(b ^ m.x))) * sgn * a(Eigen::Index(b));
  }
  return m.phase * acc;
}

CovarianceMatrix covariance_matrix(const StateVector& psi, double imag_tol) {
  const int n = psi.n_qubits();
  const int modes = 2 * n;
  // Phi_m = gamma_m |psi>, then <gamma_m gamma_n> = <Phi_m | Phi_n>.
  std::vector<Eigen::VectorXcd> phi(modes);
  for (int m = 1; m <= modes; ++m) {
    StateVector tmp = psi;
    apply_pauli(tmp, jordan_wigner(m, n));
    phi[m - 1] = std::move(tmp.amplitudes());
  }
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(modes, modes);
  for (int m = 0; m < modes; ++m) {
    for (int k = m + 1; k < modes; ++k) {
      std::complex<double> e = phi[m].dot(phi[k]);  // <gamma_m gamma_n>
      if (std::abs(e.real()) > imag_tol)
        throw std::runtime_error("covariance_matrix: correlator has a real residue; "
                                 "Jordan-Wigner phases are inconsistent");
      cov(m, k) = e.imag();  // Re<-i gamma_m gamma_n>
      cov(k, m) = -e.imag();
    }
  }
  return CovarianceMatrix(std::move(cov));
}

StateVector apply_unitary(const StateVector& psi, const Eigen::MatrixXcd& u,
                          std::span<const int> qubits) {
  const int n = psi.n_qubits();
  const int k = static_cast<int>(qubits.size());
  const Eigen::Index gate_dim = Eigen::Index(1) << k;
  if (u.rows() != gate_dim || u.cols() != gate_dim)
    throw std::invalid_argument("apply_unitary: matrix does not match qubit count");
  for (int q : qubits)
    if (q < 1 || q > n) throw std::out_of_range("apply_unitary: qubit out of range");
  if ((u.adjoint() * u - Eigen::MatrixXcd::Identity(gate_dim, gate_dim)).cwiseAbs().maxCoeff() >
      1e-10)
    throw std::invalid_argument("apply_unitary: matrix is not unitary");

  std::vector<std::uint64_t> qmask(k);
  std::uint64_t gate_bits = 0;
  for (int i = 0; i < k; ++i) {
    qmask[i] = site_basis_mask(n, qubits[i]);
    gate_bits |= qmask[i];
  }
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.amplitudes().size());
  const Eigen::VectorXcd& a = psi.amplitudes();
  const std::uint64_t dim = psi.dim();
  std::vector<std::uint64_t> sub(gate_dim);
  for (std::uint64_t base = 0; base < dim; ++base) {
    if (base & gate_bits) continue;  // enumerate configurations of the other qubits
    for (Eigen::Index g = 0; g < gate_dim; ++g) {
      std::uint64_t idx = base;
      for (int i = 0; i < k; ++i)
        if ((g >> (k - 1 - i)) & 1) idx |= qmask[i];
      sub[g] = idx;
    }
    for (Eigen::Index r = 0; r < gate_dim; ++r) {
      std::complex<double> acc = 0;
      for (Eigen::Index c = 0; c < gate_dim; ++c) acc += u(r, c) * a(Eigen::Index(sub[c]));
      out(Eigen::Index(sub[r])) = acc;
    }
  }
  return StateVector(n, std::move(out), false);
}

StateVector haar_state(int n_qubits, Sector sector, std::uint64_t seed) {
  auto rng = make_rng(seed);
  std::normal_distribution<double> gauss;
  const std::uint64_t dim = std::uint64_t(1) << n_qubits;
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(Eigen::Index(dim));
  for (std::uint64_t b = 0; b < dim; ++b) {
    if (sector == Sector::even_parity && (std::popcount(b) & 1)) continue;
    amp(Eigen::Index(b)) = std::complex<double>(gauss(rng), gauss(rng));
  }
  amp /= amp.norm();
  return StateVector(n_qubits, std::move(amp), false);
}

double entanglement_entropy(const StateVector& psi, int cut) {
  const int n = psi.n_qubits();
  if (cut < 1 || cut >= n) throw std::out_of_range("entanglement_entropy: invalid cut");
  const Eigen::Index rows = Eigen::Index(1) << cut;
  const Eigen::Index cols = Eigen::Index(1) << (n - cut);
  // Qubit 1 is the MSB, so amplitudes are already row-major in the A index.
  Eigen::MatrixXcd a = Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic,
                                                      Eigen::Dynamic, Eigen::RowMajor>>(
      psi.amplitudes().data(), rows, cols);
  Eigen::VectorXd sv = a.jacobiSvd().singularValues();
  double s = 0;
  for (double v : sv) {
    double p = v * v;
    if (p > 1e-15) s -= p * std::log2(p);
  }
  return s;
}

StateVector prepare_psi_theta(double theta) {
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(16);
  amp(0b0000) = 0.5;
  amp(0b0011) = 0.5;
  amp(0b1100) = 0.5;
  amp(0b1111) = 0.5 * std::exp(std::complex<double>(0, theta));
  return StateVector(4, std::move(amp), false);
}

StateVector prepare_psi_theta_product(double theta, int n_qubits) {
  if (n_qubits % 4 != 0)
    throw std::invalid_argument("prepare_psi_theta_product: N must be a multiple of 4");
  StateVector block = prepare_psi_theta(theta);
  StateVector out = block;
  for (int i = 4; i < n_qubits; i += 4) out = tensor(out, block);
  return out;
}

StateVector prepare_t_product(double theta, double phi, int n_qubits) {
  Eigen::Vector2cd q;
  q << std::cos(theta / 2),
      std::sin(theta / 2) * std::exp(std::complex<double>(0, phi));
  const std::uint64_t dim = std::uint64_t(1) << n_qubits;
  Eigen::VectorXcd amp{Eigen::Index(dim)};
  for (std::uint64_t b = 0; b < dim; ++b) {
    std::complex<double> v = 1.0;
    for (int s = 0; s < n_qubits; ++s) v *= q((b >> (n_qubits - 1 - s)) & 1);
    amp(Eigen::Index(b)) = v;
  }
  return StateVector(n_qubits, std::move(amp), false);
}

StateVector prepare_pe_ground(double theta, int n_qubits) {
  Eigen::Vector2cd plus, minus;
  plus << std::cos(theta / 2), -std::sin(theta / 2);
  minus << std::cos(theta / 2), std::sin(theta / 2);
  const std::uint64_t dim = std::uint64_t(1) << n_qubits;
  const double a_n = 1.0 / (1.0 + std::pow(std::cos(theta), n_qubits));
  const double pref = std::sqrt(a_n / 2.0);
  Eigen::VectorXcd amp{Eigen::Index(dim)};
  for (std::uint64_t b = 0; b < dim; ++b) {
    std::complex<double> vp = 1.0, vm = 1.0;
    for (int s = 0; s < n_qubits; ++s) {
      int bit = (b >> (n_qubits - 1 - s)) & 1;
      vp *= plus(bit);
      vm *= minus(bit);
    }
    amp(Eigen::Index(b)) = pref * (vp + vm);
  }
  return StateVector(n_qubits, std::move(amp));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  const int n = a.n_qubits() + b.n_qubits();
  Eigen::VectorXcd amp{Eigen::Index(std::uint64_t(1) << n)};
  const Eigen::Index db = Eigen::Index(b.dim());
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i)
    for (Eigen::Index j = 0; j < db; ++j)
      amp(i * db + j) = a.amplitudes()(i) * b.amplitudes()(j);
  return StateVector(n, std::move(amp), false);
}

void apply_majorana_rotation(StateVector& psi, int m, int n, double theta) {
  const int nq = psi.n_qubits();
  // (gamma_m gamma_n)^2 = -1, so exp(theta gamma_m gamma_n / 2) truncates.
  PauliOperator gmn = jordan_wigner(m, nq) * jordan_wigner(n, nq);
  StateVector rotated = psi;
  apply_pauli(rotated, gmn);
  psi.amplitudes() =
      std::cos(theta / 2) * psi.amplitudes() + std::sin(theta / 2) * rotated.amplitudes();
}

void apply_mode_reflection(StateVector& psi, int axis) {
  // Conjugation by P*gamma_axis flips gamma_axis only.
  apply_pauli(psi, parity_operator(psi.n_qubits()) * jordan_wigner(axis, psi.n_qubits()));
}

void dump_state(const StateVector& psi, std::ostream& out) {
  std::uint32_t n = static_cast<std::uint32_t>(psi.n_qubits());
  std::uint32_t tag = 0x01020304u;
  out.write(reinterpret_cast<const char*>(&n), 4);
  out.write(reinterpret_cast<const char*>(&tag), 4);
  out.write(reinterpret_cast<const char*>(psi.amplitudes().data()),
            static_cast<std::streamsize>(psi.dim() * sizeof(std::complex<double>)));
}

StateVector load_state(std::istream& in) {
  std::uint32_t n = 0, tag = 0;
  in.read(reinterpret_cast<char*>(&n), 4);
  in.read(reinterpret_cast<char*>(&tag), 4);
  if (!in || tag != 0x01020304u)
    throw std::runtime_error("load_state: bad header or byte order mismatch");
  Eigen::VectorXcd amp{Eigen::Index(std::uint64_t(1) << n)};
  in.read(reinterpret_cast<char*>(amp.data()),
          static_cast<std::streamsize>(amp.size() * Eigen::Index(sizeof(std::complex<double>))));
  if (!in) throw std::runtime_error("load_state: truncated payload");
  return StateVector(static_cast<int>(n), std::move(amp));
}

}  // namespace faf
