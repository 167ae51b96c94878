#include "faf/clifford2.hpp"

#include <complex>
#include <stdexcept>
#include <unordered_map>

namespace faf {

namespace {

// Hermitian 2-qubit Pauli as (x1, z1, x2, z2, sign) with the standard CHP
// update rules for the six generators.
struct Pauli4 {
  unsigned x1, z1, x2, z2, r;
};

Pauli4 unpack(std::uint8_t img, std::uint8_t sign) {
  return {static_cast<unsigned>(img & 1), static_cast<unsigned>((img >> 1) & 1),
          static_cast<unsigned>((img >> 2) & 1), static_cast<unsigned>((img >> 3) & 1),
          static_cast<unsigned>(sign & 1)};
}

std::uint8_t pack_img(const Pauli4& p) {
  return static_cast<std::uint8_t>(p.x1 | (p.z1 << 1) | (p.x2 << 2) | (p.z2 << 3));
}

enum Gen : std::uint8_t { H1, H2, S1, S2, CX12, CX21 };

Pauli4 conj_by_gen(Pauli4 p, std::uint8_t gen) {
  switch (gen) {
    case H1:
      p.r ^= p.x1 & p.z1;
      std::swap(p.x1, p.z1);
      break;
    case H2:
      p.r ^= p.x2 & p.z2;
      std::swap(p.x2, p.z2);
      break;
    case S1:
      p.r ^= p.x1 & p.z1;
      p.z1 ^= p.x1;
      break;
    case S2:
      p.r ^= p.x2 & p.z2;
      p.z2 ^= p.x2;
      break;
    case CX12:
      p.r ^= p.x1 & p.z2 & (p.x2 ^ p.z1 ^ 1);
      p.x2 ^= p.x1;
      p.z1 ^= p.z2;
      break;
    case CX21:
      p.r ^= p.x2 & p.z1 & (p.x1 ^ p.z2 ^ 1);
      p.x1 ^= p.x2;
      p.z2 ^= p.z1;
      break;
    default:
      throw std::logic_error("conj_by_gen: unknown generator");
  }
  return p;
}

std::uint32_t key_of(const Clifford2& g) {
  std::uint32_t key = 0;
  for (int j = 0; j < 4; ++j)
    key |= (std::uint32_t(g.img[j]) | (std::uint32_t(g.sign[j]) << 4)) << (5 * j);
  return key;
}

// Pauli product phase bookkeeping (power of i mod 4) for the Z2 filter.
struct ExactPauli4 {
  unsigned x1, z1, x2, z2;
  int p;  // i-power mod 4
};

ExactPauli4 exact_of(const Pauli4& h) {
  int xz = static_cast<int>(h.x1 & h.z1) + static_cast<int>(h.x2 & h.z2);
  return {h.x1, h.z1, h.x2, h.z2, (2 * static_cast<int>(h.r) + xz) & 3};
}

ExactPauli4 multiply(const ExactPauli4& a, const ExactPauli4& b) {
  int swaps = static_cast<int>(a.z1 & b.x1) + static_cast<int>(a.z2 & b.x2);
  return {a.x1 ^ b.x1, a.z1 ^ b.z1, a.x2 ^ b.x2, a.z2 ^ b.z2, (a.p + b.p + 2 * swaps) & 3};
}

}  // namespace

Clifford2Group::Clifford2Group() {
  Clifford2 identity;
  identity.img = {0b0001, 0b0010, 0b0100, 0b1000};  // X1, Z1, X2, Z2
  identity.sign = {0, 0, 0, 0};

  std::unordered_map<std::uint32_t, std::uint32_t> seen;
  elems_.push_back(identity);
  seen.emplace(key_of(identity), 0);
  for (std::size_t head = 0; head < elems_.size(); ++head) {
    Clifford2 cur = elems_[head];  // copy: elems_ may reallocate
    for (std::uint8_t gen = 0; gen < 6; ++gen) {
      Clifford2 next;
      for (int j = 0; j < 4; ++j) {
        Pauli4 p = conj_by_gen(unpack(cur.img[j], cur.sign[j]), gen);
        next.img[j] = pack_img(p);
        next.sign[j] = static_cast<std::uint8_t>(p.r);
      }
      std::uint32_t key = key_of(next);
      if (seen.count(key)) continue;
      next.word = cur.word;
      next.word.push_back(gen);
      seen.emplace(key, static_cast<std::uint32_t>(elems_.size()));
      elems_.push_back(std::move(next));
    }
  }
  if (elems_.size() != 11520)
    throw std::logic_error("Clifford2Group: enumeration did not reach 11520 elements");

  for (std::uint32_t i = 0; i < elems_.size(); ++i) {
    const Clifford2& g = elems_[i];
    // image of Z (x) Z = Z1 * Z2 must be exactly +Z1 Z2
    ExactPauli4 zz = multiply(exact_of(unpack(g.img[1], g.sign[1])),
                              exact_of(unpack(g.img[3], g.sign[3])));
    if (zz.x1 == 0 && zz.x2 == 0 && zz.z1 == 1 && zz.z2 == 1 && zz.p == 0)
      z2_members_.push_back(i);
  }
}

const Clifford2Group& Clifford2Group::instance() {
  static Clifford2Group group;
  return group;
}

std::size_t Clifford2Group::sample_index(std::mt19937_64& rng, bool z2_symmetric) const {
  if (z2_symmetric) {
    std::uniform_int_distribution<std::size_t> dist(0, z2_members_.size() - 1);
    return z2_members_[dist(rng)];
  }
  std::uniform_int_distribution<std::size_t> dist(0, elems_.size() - 1);
  return dist(rng);
}

Eigen::Matrix4cd Clifford2Group::unitary(const Clifford2& g) const {
  using C = std::complex<double>;
  const double isq = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd h2, s2, id2;
  h2 << isq, isq, isq, -isq;
  s2 << C(1, 0), C(0, 0), C(0, 0), C(0, 1);
  id2 = Eigen::Matrix2cd::Identity();

  auto kron = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
  };
  Eigen::Matrix4cd cx12 = Eigen::Matrix4cd::Zero();  // control = qubit 1 (MSB)
  cx12(0, 0) = cx12(1, 1) = cx12(3, 2) = cx12(2, 3) = 1;
  Eigen::Matrix4cd cx21 = Eigen::Matrix4cd::Zero();
  cx21(0, 0) = cx21(2, 2) = cx21(3, 1) = cx21(1, 3) = 1;

  Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
  for (std::uint8_t gen : g.word) {
    Eigen::Matrix4cd m;
    switch (gen) {
      case H1: m = kron(h2, id2); break;
      case H2: m = kron(id2, h2); break;
      case S1: m = kron(s2, id2); break;
      case S2: m = kron(id2, s2); break;
      case CX12: m = cx12; break;
      case CX21: m = cx21; break;
      default: throw std::logic_error("unitary: unknown generator");
    }
    u = m * u;  // word order = circuit order
  }
  return u;
}

}  // namespace faf
