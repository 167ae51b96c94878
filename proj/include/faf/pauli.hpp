#pragma once
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace faf {

/// Signed Pauli string on N qubits, stored as i^phase * prod_k X_k^{x_k} Z_k^{z_k}
/// in site order (qubit 1 is leftmost). The phase is an exact power of i mod 4,
/// so products never accumulate floating-point error.
class PauliOperator {
 public:
  using Word = std::uint64_t;

  PauliOperator() = default;
  explicit PauliOperator(int n_qubits);  // identity

  static PauliOperator identity(int n_qubits) { return PauliOperator(n_qubits); }
  // axis in {'X','Y','Z'}, site in [1, N]
  static PauliOperator single(int n_qubits, int site, char axis);

  int n_qubits() const { return n_; }
  int phase_power() const { return phase_; }
  bool x_bit(int site) const { return get_bit(x_, site - 1); }
  bool z_bit(int site) const { return get_bit(z_, site - 1); }

  bool is_identity() const;
  // i^phase * X^x Z^z is Hermitian iff phase == |x & z| (mod 2)
  bool is_hermitian() const;
  int weight() const;  // number of non-identity sites

  PauliOperator& operator*=(const PauliOperator& rhs);
  friend PauliOperator operator*(PauliOperator lhs, const PauliOperator& rhs) {
    lhs *= rhs;
    return lhs;
  }

  bool operator==(const PauliOperator& rhs) const;
  bool same_masks(const PauliOperator& rhs) const;
  bool commutes_with(const PauliOperator& rhs) const;

  // "+X_1 Z_3", "-i X_2", "+1" for the identity
  std::string to_string() const;

  std::span<const Word> x_words() const { return x_; }
  std::span<const Word> z_words() const { return z_; }
  void set_x_bit(int site, bool v) { set_bit(x_, site - 1, v); }
  void set_z_bit(int site, bool v) { set_bit(z_, site - 1, v); }
  void set_phase_power(int p) { phase_ = ((p % 4) + 4) % 4; }

 private:
  static bool get_bit(const std::vector<Word>& w, int i) {
    return (w[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1;
  }
  static void set_bit(std::vector<Word>& w, int i, bool v) {
    Word mask = Word(1) << (i & 63);
    if (v)
      w[static_cast<std::size_t>(i) >> 6] |= mask;
    else
      w[static_cast<std::size_t>(i) >> 6] &= ~mask;
  }

  int n_ = 0;
  int phase_ = 0;  // power of i, mod 4
  std::vector<Word> x_, z_;
};

/// Strictly increasing Majorana mode indices in [1, 2N]; empty set = identity.
struct MajoranaIndexSet {
  int n_modes = 0;  // 2N
  std::vector<int> indices;

  MajoranaIndexSet(int n_modes, std::vector<int> indices);
  int size() const { return static_cast<int>(indices.size()); }
};

// gamma_{2k-1} = Z_1...Z_{k-1} X_k,  gamma_{2k} = Z_1...Z_{k-1} Y_k
PauliOperator jordan_wigner(int mode, int n_qubits);

// Ordered product gamma_{m_1} ... gamma_{m_|S|} as a signed Pauli.
PauliOperator majorana_string(const MajoranaIndexSet& s, int n_qubits);

// P = prod_k Z_k
PauliOperator parity_operator(int n_qubits);

}  // namespace faf
