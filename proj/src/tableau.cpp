#include "faf/tableau.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "faf/clifford2.hpp"

namespace faf {

int BitVec::popcount() const {
  int c = 0;
  for (Word w : w_) c += std::popcount(w);
  return c;
}

int BitVec::popcount_and(const BitVec& o) const {
  int c = 0;
  for (std::size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] & o.w_[i]);
  return c;
}

std::uint64_t BitVec::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (Word w : w_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

void xor_sign_and(BitVec& sign, const BitVec& a, const BitVec& b) {
  auto& s = sign.words();
  const auto& aw = a.words();
  const auto& bw = b.words();
  for (std::size_t i = 0; i < s.size(); ++i) s[i] ^= aw[i] & bw[i];
}

}  // namespace

StabilizerTableau::StabilizerTableau(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("StabilizerTableau: n_qubits must be >= 1");
  for (Half* half : {&destab_, &stab_}) {
    half->x.assign(n_, BitVec(n_));
    half->z.assign(n_, BitVec(n_));
    half->sign = BitVec(n_);
  }
  for (int i = 0; i < n_; ++i) {
    destab_.x[i].set(i, true);  // destabilizer i = X_{i+1}
    stab_.z[i].set(i, true);    // stabilizer i = Z_{i+1}
  }
}

void StabilizerTableau::h(int q) {
  const int c = q - 1;
  for (Half* half : {&destab_, &stab_}) {
    xor_sign_and(half->sign, half->x[c], half->z[c]);
    std::swap(half->x[c], half->z[c]);
  }
}

void StabilizerTableau::s_gate(int q) {
  const int c = q - 1;
  for (Half* half : {&destab_, &stab_}) {
    xor_sign_and(half->sign, half->x[c], half->z[c]);
    half->z[c] ^= half->x[c];
  }
}

void StabilizerTableau::cx(int control, int target) {
  const int c = control - 1, t = target - 1;
  for (Half* half : {&destab_, &stab_}) {
    auto& s = half->sign.words();
    const auto& xc = half->x[c].words();
    const auto& zt = half->z[t].words();
    const auto& xt = half->x[t].words();
    const auto& zc = half->z[c].words();
    for (std::size_t i = 0; i < s.size(); ++i) s[i] ^= xc[i] & zt[i] & ~(xt[i] ^ zc[i]);
    half->x[t] ^= half->x[c];
    half->z[c] ^= half->z[t];
  }
}

void StabilizerTableau::apply_clifford(const Clifford2& gate, int q1, int q2) {
  if (q1 == q2 || q1 < 1 || q2 < 1 || q1 > n_ || q2 > n_)
    throw std::out_of_range("apply_clifford: bad qubit pair");
  for (std::uint8_t gen : gate.word) {
    switch (gen) {
      case 0: h(q1); break;
      case 1: h(q2); break;
      case 2: s_gate(q1); break;
      case 3: s_gate(q2); break;
      case 4: cx(q1, q2); break;
      case 5: cx(q2, q1); break;
      default: throw std::logic_error("apply_clifford: unknown generator");
    }
  }
}

namespace {

// Synthesis accumulator in the exact i^p X^x Z^z convention.
struct ExactRow {
  BitVec x, z;
  int phase = 0;

  explicit ExactRow(int n) : x(n), z(n) {}

  void multiply(const BitVec& rx, const BitVec& rz, int rphase) {
    phase = (phase + rphase + 2 * z.popcount_and(rx)) & 3;
    x ^= rx;
    z ^= rz;
  }
};

}  // namespace

struct StabilizerTableau::RowSnapshot {
  std::vector<BitVec> x, z;
  std::vector<int> phase;
};

int StabilizerTableau::pauli_expectation(const PauliOperator& op) const {
  if (op.n_qubits() != n_) throw std::invalid_argument("pauli_expectation: size mismatch");
  if (!op.is_hermitian())
    throw std::invalid_argument("pauli_expectation: operator must be Hermitian");

  BitVec stab_syn(n_), destab_syn(n_);
  for (int q = 1; q <= n_; ++q) {
    if (op.x_bit(q)) {
      stab_syn ^= stab_.z[q - 1];
      destab_syn ^= destab_.z[q - 1];
    }
    if (op.z_bit(q)) {
      stab_syn ^= stab_.x[q - 1];
      destab_syn ^= destab_.x[q - 1];
    }
  }
  if (stab_syn.any()) return 0;

  ExactRow acc(n_);
  for (int i = 0; i < n_; ++i) {
    if (!destab_syn.get(i)) continue;
    BitVec rx(n_), rz(n_);
    for (int q = 0; q < n_; ++q) {
      if (stab_.x[q].get(i)) rx.set(q, true);
      if (stab_.z[q].get(i)) rz.set(q, true);
    }
    int p = (2 * static_cast<int>(stab_.sign.get(i)) + rx.popcount_and(rz)) & 3;
    acc.multiply(rx, rz, p);
  }
  for (int q = 1; q <= n_; ++q)
    if (acc.x.get(q - 1) != op.x_bit(q) || acc.z.get(q - 1) != op.z_bit(q))
      throw std::runtime_error("pauli_expectation: synthesis mask mismatch");
  int diff = (op.phase_power() - acc.phase + 4) & 3;
  if (diff == 0) return 1;
  if (diff == 2) return -1;
  throw std::runtime_error("pauli_expectation: synthesis produced an anti-Hermitian phase");
}

void StabilizerTableau::majorana_syndromes(const Half& half, std::vector<BitVec>& out) const {
  out.assign(2 * n_, BitVec(n_));
  BitVec prefix(n_);
  for (int k = 0; k < n_; ++k) {
    out[2 * k] = prefix;
    out[2 * k] ^= half.z[k];  // X at site k
    out[2 * k + 1] = out[2 * k];
    out[2 * k + 1] ^= half.x[k];  // Y at site k
    prefix ^= half.x[k];          // Jordan-Wigner Z tail
  }
}

int StabilizerTableau::pair_sign(const RowSnapshot& rows, const BitVec& destab_syndrome,
                                 const PauliOperator& target) const {
  ExactRow acc(n_);
  const auto& words = destab_syndrome.words();
  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    BitVec::Word w = words[wi];
    while (w) {
      int i = static_cast<int>(wi * 64) + std::countr_zero(w);
      w &= w - 1;
      acc.multiply(rows.x[i], rows.z[i], rows.phase[i]);
    }
  }
  const auto& tx = target.x_words();
  const auto& tz = target.z_words();
  for (std::size_t i = 0; i < acc.x.words().size(); ++i)
    if (acc.x.words()[i] != tx[i] || acc.z.words()[i] != tz[i])
      throw std::runtime_error("covariance: synthesis mask mismatch");
  int diff = (target.phase_power() - acc.phase + 4) & 3;
  if (diff == 0) return 1;
  if (diff == 2) return -1;
  throw std::runtime_error("covariance: synthesis produced an anti-Hermitian phase");
}

std::vector<std::array<int, 3>> StabilizerTableau::covariance_entries() const {
  std::vector<BitVec> stab_syn, destab_syn;
  majorana_syndromes(stab_, stab_syn);
  majorana_syndromes(destab_, destab_syn);

  // Modes with equal stabilizer syndromes pair up; purity allows at most one
  // partner per mode.
  std::vector<std::pair<std::uint64_t, int>> order(2 * n_);
  for (int m = 0; m < 2 * n_; ++m) order[m] = {stab_syn[m].hash(), m};
  std::sort(order.begin(), order.end());

  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && order[j].first == order[i].first) ++j;
    for (std::size_t a = i; a < j; ++a) {
      for (std::size_t b = a + 1; b < j; ++b) {
        if (stab_syn[order[a].second] == stab_syn[order[b].second]) {
          pairs.emplace_back(std::min(order[a].second, order[b].second),
                             std::max(order[a].second, order[b].second));
        }
      }
    }
    i = j;
  }
  std::vector<char> used(2 * n_, 0);
  for (auto [m, k] : pairs) {
    if (used[m] || used[k])
      throw std::runtime_error("covariance: a Majorana mode has more than one partner");
    used[m] = used[k] = 1;
  }

  // Row-major snapshot of the stabilizer half for phase synthesis.
  RowSnapshot rows;
  rows.x.assign(n_, BitVec(n_));
  rows.z.assign(n_, BitVec(n_));
  rows.phase.assign(n_, 0);
  for (int q = 0; q < n_; ++q) {
    const auto& xw = stab_.x[q].words();
    const auto& zw = stab_.z[q].words();
    for (std::size_t wi = 0; wi < xw.size(); ++wi) {
      BitVec::Word w = xw[wi];
      while (w) {
        int i = static_cast<int>(wi * 64) + std::countr_zero(w);
        w &= w - 1;
        rows.x[i].set(q, true);
      }
      w = zw[wi];
      while (w) {
        int i = static_cast<int>(wi * 64) + std::countr_zero(w);
        w &= w - 1;
        rows.z[i].set(q, true);
      }
    }
  }
  for (int i = 0; i < n_; ++i)
    rows.phase[i] =
        (2 * static_cast<int>(stab_.sign.get(i)) + rows.x[i].popcount_and(rows.z[i])) & 3;

  std::vector<std::array<int, 3>> entries;
  entries.reserve(pairs.size());
  for (auto [m, k] : pairs) {
    // target = -i gamma_m gamma_k, whose expectation is M_mk directly
    PauliOperator target = jordan_wigner(m + 1, n_) * jordan_wigner(k + 1, n_);
    target.set_phase_power(target.phase_power() + 3);
    BitVec syn = destab_syn[m];
    syn ^= destab_syn[k];
    int value = pair_sign(rows, syn, target);
    entries.push_back({m + 1, k + 1, value});
  }
  return entries;
}

CovarianceMatrix StabilizerTableau::covariance() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n_, 2 * n_);
  for (const auto& e : covariance_entries()) {
    m(e[0] - 1, e[1] - 1) = e[2];
    m(e[1] - 1, e[0] - 1) = -e[2];
  }
  return CovarianceMatrix(std::move(m), 1e-30);
}

double StabilizerTableau::faf1() const {
  std::vector<BitVec> stab_syn;
  majorana_syndromes(stab_, stab_syn);
  std::vector<std::pair<std::uint64_t, int>> order(2 * n_);
  for (int m = 0; m < 2 * n_; ++m) order[m] = {stab_syn[m].hash(), m};
  std::sort(order.begin(), order.end());
  int pairs = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && order[j].first == order[i].first) ++j;
    int run = 0;
    for (std::size_t a = i; a < j; ++a)
      for (std::size_t b = a + 1; b < j; ++b)
        if (stab_syn[order[a].second] == stab_syn[order[b].second]) ++run;
    if (run > static_cast<int>(j - i) / 2)
      throw std::runtime_error("faf1: a Majorana mode has more than one partner");
    pairs += run;
    i = j;
  }
  return n_ - pairs;
}

bool StabilizerTableau::check_valid() const {
  std::vector<PauliOperator> rows;
  for (const Half* half : {&destab_, &stab_}) {
    for (int i = 0; i < n_; ++i) {
      PauliOperator p(n_);
      int xz = 0;
      for (int q = 1; q <= n_; ++q) {
        bool xb = half->x[q - 1].get(i), zb = half->z[q - 1].get(i);
        p.set_x_bit(q, xb);
        p.set_z_bit(q, zb);
        xz += xb && zb;
      }
      p.set_phase_power(2 * static_cast<int>(half->sign.get(i)) + xz);
      rows.push_back(std::move(p));
    }
  }
  for (int i = 0; i < 2 * n_; ++i) {
    for (int j = i + 1; j < 2 * n_; ++j) {
      bool should_anticommute = (j == i + n_);
      if (rows[i].commutes_with(rows[j]) == should_anticommute) return false;
    }
  }
  return true;
}

}  // namespace faf
