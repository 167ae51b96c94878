#pragma once
#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace faf {

/// One two-qubit Clifford element, identified by the conjugation images of
/// X1, Z1, X2, Z2 and realized as a word over {H1, H2, S1, S2, CX12, CX21}.
struct Clifford2 {
  // bit layout per image: x1 | z1<<1 | x2<<2 | z2<<3
  std::array<std::uint8_t, 4> img{};
  std::array<std::uint8_t, 4> sign{};
  std::vector<std::uint8_t> word;
};

/// Canonical enumeration of the 11520-element two-qubit Clifford group (phases
/// modded out) plus the sublist commuting with Z (x) Z. Built once, sampled by
/// index for exact uniformity.
class Clifford2Group {
 public:
  static const Clifford2Group& instance();

  std::size_t size() const { return elems_.size(); }
  std::size_t z2_size() const { return z2_members_.size(); }
  const Clifford2& element(std::size_t i) const { return elems_[i]; }
  const Clifford2& z2_element(std::size_t i) const { return elems_[z2_members_[i]]; }

  std::size_t sample_index(std::mt19937_64& rng, bool z2_symmetric) const;
  const Clifford2& sample(std::mt19937_64& rng, bool z2_symmetric) const {
    return elems_[sample_index(rng, z2_symmetric)];
  }

  /// Dense 4x4 matrix of the element (basis |q1 q2>, qubit 1 = MSB).
  Eigen::Matrix4cd unitary(const Clifford2& g) const;

 private:
  Clifford2Group();
  std::vector<Clifford2> elems_;
  std::vector<std::uint32_t> z2_members_;
};

}  // namespace faf
