#pragma once
#include <cstdint>
#include <vector>

#include "faf/covariance.hpp"
#include "faf/pauli.hpp"

namespace faf {

/// Packed bit vector; the tableau stores per-qubit columns over generator rows.
class BitVec {
 public:
  using Word = std::uint64_t;

  BitVec() = default;
  explicit BitVec(int nbits) : n_(nbits), w_((static_cast<std::size_t>(nbits) + 63) / 64, 0) {}

  int size() const { return n_; }
  bool get(int i) const { return (w_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1; }
  void set(int i, bool v) {
    Word m = Word(1) << (i & 63);
    if (v)
      w_[static_cast<std::size_t>(i) >> 6] |= m;
    else
      w_[static_cast<std::size_t>(i) >> 6] &= ~m;
  }
  void clear() { std::fill(w_.begin(), w_.end(), Word(0)); }

  BitVec& operator^=(const BitVec& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
  }
  bool any() const {
    for (Word w : w_)
      if (w) return true;
    return false;
  }
  int popcount() const;
  int popcount_and(const BitVec& o) const;  // |this & o|
  std::uint64_t hash() const;
  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

  std::vector<Word>& words() { return w_; }
  const std::vector<Word>& words() const { return w_; }

 private:
  int n_ = 0;
  std::vector<Word> w_;
};

struct Clifford2;

/// Aaronson-Gottesman tableau in column-major layout: per qubit, x/z columns
/// split into destabilizer and stabilizer halves so gates are word-parallel
/// across rows and Majorana syndromes come out as N-bit vectors.
class StabilizerTableau {
 public:
  explicit StabilizerTableau(int n_qubits);  // |0...0>

  int n_qubits() const { return n_; }

  // qubits are 1-based, matching the Pauli layer
  void h(int q);
  void s_gate(int q);
  void cx(int control, int target);
  void apply_clifford(const Clifford2& gate, int q1, int q2);

  /// 0 when op anticommutes with some stabilizer, else +-1 by synthesis over
  /// the generators. Rejects non-Hermitian input.
  int pauli_expectation(const PauliOperator& op) const;

  /// Signed covariance matrix, entries in {-1, 0, +1}.
  CovarianceMatrix covariance() const;
  /// Sparse form of the same thing: (m, n, value) with m < n, 1-based modes.
  std::vector<std::array<int, 3>> covariance_entries() const;

  /// F_1 = N - (number of paired Majorana modes); sign synthesis skipped.
  double faf1() const;

  /// Debug-mode validation of the symplectic row structure.
  bool check_valid() const;

 private:
  struct Half {  // one of destabilizer / stabilizer row blocks
    std::vector<BitVec> x, z;  // per qubit, n bits over rows
    BitVec sign;
  };

  void majorana_syndromes(const Half& half, std::vector<BitVec>& out) const;
  struct RowSnapshot;
  int pair_sign(const RowSnapshot& rows, const BitVec& destab_syndrome,
                const PauliOperator& target) const;

  int n_;
  Half destab_, stab_;
};

}  // namespace faf
