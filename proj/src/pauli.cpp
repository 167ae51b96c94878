#include "faf/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace faf {

namespace {
std::size_t word_count(int n) { return (static_cast<std::size_t>(n) + 63) / 64; }
}  // namespace

PauliOperator::PauliOperator(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("PauliOperator: n_qubits must be >= 1");
  x_.assign(word_count(n_qubits), 0);
  z_.assign(word_count(n_qubits), 0);
}

PauliOperator PauliOperator::single(int n_qubits, int site, char axis) {
  if (site < 1 || site > n_qubits) throw std::out_of_range("PauliOperator: site out of range");
  PauliOperator p(n_qubits);
  switch (axis) {
    case 'X':
      p.set_x_bit(site, true);
      break;
    case 'Z':
      p.set_z_bit(site, true);
      break;
    case 'Y':  // Y = i X Z
      p.set_x_bit(site, true);
      p.set_z_bit(site, true);
      p.phase_ = 1;
      break;
    default:
      throw std::invalid_argument("PauliOperator: axis must be X, Y or Z");
  }
  return p;
}

bool PauliOperator::is_identity() const {
  if (phase_ != 0) return false;
  for (std::size_t i = 0; i < x_.size(); ++i)
    if (x_[i] | z_[i]) return false;
  return true;
}

bool PauliOperator::is_hermitian() const {
  int xz = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) xz += std::popcount(x_[i] & z_[i]);
  return ((phase_ ^ xz) & 1) == 0;
}

int PauliOperator::weight() const {
  int w = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) w += std::popcount(x_[i] | z_[i]);
  return w;
}

PauliOperator& PauliOperator::operator*=(const PauliOperator& rhs) {
  if (n_ != rhs.n_) throw std::invalid_argument("PauliOperator: size mismatch");
  // Z^{z1} X^{x2} = (-1)^{|z1 & x2|} X^{x2} Z^{z1}
  int swaps = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) swaps += std::popcount(z_[i] & rhs.x_[i]);
  phase_ = (phase_ + rhs.phase_ + 2 * swaps) & 3;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    x_[i] ^= rhs.x_[i];
    z_[i] ^= rhs.z_[i];
  }
  return *this;
}

bool PauliOperator::operator==(const PauliOperator& rhs) const {
  return n_ == rhs.n_ && phase_ == rhs.phase_ && x_ == rhs.x_ && z_ == rhs.z_;
}

bool PauliOperator::same_masks(const PauliOperator& rhs) const {
  return n_ == rhs.n_ && x_ == rhs.x_ && z_ == rhs.z_;
}

bool PauliOperator::commutes_with(const PauliOperator& rhs) const {
  if (n_ != rhs.n_) throw std::invalid_argument("PauliOperator: size mismatch");
  int s = 0;
  for (std::size_t i = 0; i < x_.size(); ++i)
    s += std::popcount(x_[i] & rhs.z_[i]) + std::popcount(z_[i] & rhs.x_[i]);
  return (s & 1) == 0;
}

std::string PauliOperator::to_string() const {
  static const char* kPhase[4] = {"+", "+i ", "-", "-i "};
  std::string out = kPhase[phase_];
  bool any = false;
  for (int site = 1; site <= n_; ++site) {
    if (x_bit(site)) {
      if (any) out += ' ';
      out += "X_" + std::to_string(site);
      any = true;
    }
    if (z_bit(site)) {
      if (any) out += ' ';
      out += "Z_" + std::to_string(site);
      any = true;
    }
  }
  if (!any) out += "1";
  return out;
}

MajoranaIndexSet::MajoranaIndexSet(int n_modes_, std::vector<int> indices_)
    : n_modes(n_modes_), indices(std::move(indices_)) {
  if (n_modes < 2 || n_modes % 2 != 0)
    throw std::invalid_argument("MajoranaIndexSet: n_modes must be a positive even number");
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 1 || indices[i] > n_modes)
      throw std::out_of_range("MajoranaIndexSet: index out of range");
    if (i > 0 && indices[i] <= indices[i - 1])
      throw std::invalid_argument("MajoranaIndexSet: indices must be strictly increasing");
  }
}

PauliOperator jordan_wigner(int mode, int n_qubits) {
  if (mode < 1 || mode > 2 * n_qubits) throw std::out_of_range("jordan_wigner: mode out of range");
  int site = (mode + 1) / 2;
  PauliOperator p(n_qubits);
  for (int m = 1; m < site; ++m) p.set_z_bit(m, true);
  p.set_x_bit(site, true);
  if (mode % 2 == 0) {  // gamma_{2k}: Y at site k
    p.set_z_bit(site, true);
    p.set_phase_power(1);
  }
  return p;
}

PauliOperator majorana_string(const MajoranaIndexSet& s, int n_qubits) {
  if (s.n_modes != 2 * n_qubits)
    throw std::invalid_argument("majorana_string: index set does not match qubit count");
  PauliOperator p(n_qubits);
  for (int m : s.indices) p *= jordan_wigner(m, n_qubits);
  return p;
}

PauliOperator parity_operator(int n_qubits) {
  PauliOperator p(n_qubits);
  for (int m = 1; m <= n_qubits; ++m) p.set_z_bit(m, true);
  return p;
}

}  // namespace faf
