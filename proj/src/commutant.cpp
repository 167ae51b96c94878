#include "faf/commutant.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include <Eigen/Dense>

#include "faf/rng.hpp"

namespace faf {

namespace {

using Cplx = std::complex<double>;
using Mask = std::uint64_t;

int inversions(const std::vector<int>& a, const std::vector<int>& b) {
  int inv = 0;
  for (int x : a)
    for (int y : b)
      if (x > y) ++inv;
  return inv;
}

// Vacuum Wick value: <gamma_U> = i^{|U|/2} when U is a union of (2m-1, 2m)
// pairs, zero otherwise.
Cplx vacuum_expectation(Mask u) {
  int total = std::popcount(u);
  if (total & 1) return 0.0;
  for (int bit = 0; bit < 64; bit += 2) {
    Mask pair = (Mask(1) << bit) | (Mask(2) << bit);
    Mask sel = u & pair;
    if (sel != 0 && sel != pair) return 0.0;
  }
  static const Cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kIPow[(total / 2) & 3];
}

struct ZetaEvaluator {
  int n_modes;
  std::vector<int> r;
  std::function<Cplx(Mask)> expect;  // <gamma_U> for a sorted union mask
  std::unordered_map<Mask, Cplx> cache;

  Cplx union_expectation(Mask u) {
    auto it = cache.find(u);
    if (it != cache.end()) return it->second;
    Cplx v = expect(u);
    cache.emplace(u, v);
    return v;
  }

  Cplx pair_value(const std::vector<int>& a, const std::vector<int>& b, Mask ua, Mask ub) {
    Cplx v = union_expectation(ua | ub);
    if (v == 0.0) return 0.0;
    return (inversions(a, b) & 1) ? -v : v;
  }

  Cplx total = 0.0;
  std::vector<std::vector<int>> chosen;
  std::vector<Mask> masks;

  void recurse(int depth, Mask used, Cplx partial) {
    const int k = static_cast<int>(r.size());
    if (depth == k) {
      Cplx closing = pair_value(chosen[k - 1], chosen[0], masks[k - 1], masks[0]);
      total += partial * closing;
      return;
    }
    std::vector<int> subset(r[depth]);
    enumerate_subsets(depth, used, partial, subset, 0, 1);
  }

  void enumerate_subsets(int depth, Mask used, Cplx partial, std::vector<int>& subset, int pos,
                         int next) {
    if (pos == static_cast<int>(subset.size())) {
      Mask m = 0;
      for (int idx : subset) m |= Mask(1) << (idx - 1);
      chosen[depth] = subset;
      masks[depth] = m;
      Cplx p = partial;
      if (depth > 0) {
        Cplx pv = pair_value(chosen[depth - 1], chosen[depth], masks[depth - 1], masks[depth]);
        if (std::abs(pv) < 1e-14) return;  // prune dead branches
        p *= pv;
      }
      recurse(depth + 1, used | m, p);
      return;
    }
    for (int idx = next; idx <= n_modes; ++idx) {
      if (used & (Mask(1) << (idx - 1))) continue;
      subset[pos] = idx;
      enumerate_subsets(depth, used, partial, subset, pos + 1, idx + 1);
    }
  }

  double run() {
    chosen.assign(r.size(), {});
    masks.assign(r.size(), 0);
    total = 0.0;
    recurse(0, 0, 1.0);
    if (std::abs(total.imag()) > 1e-9 * std::max(1.0, std::abs(total.real())))
      throw std::runtime_error("zeta_overlap: contraction has an imaginary residue");
    return total.real();
  }
};

void check_budget(int n_sites, const ReplicaSpec& spec) {
  if (spec.total() > 2 * n_sites)
    throw std::invalid_argument("ReplicaSpec: sum of r exceeds 2N");
  if (spec.total() > 6 && n_sites > 6)
    throw std::runtime_error("zeta_overlap: combinatorial budget exceeded (sum r <= 6 or N <= 6)");
  if (n_sites > 32)
    throw std::length_error("zeta_overlap: mode masks are limited to 2N <= 64");
}

Eigen::MatrixXcd dense_pauli(const PauliOperator& p) {
  static const Cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int n = p.n_qubits();
  const Eigen::Index dim = Eigen::Index(1) << n;
  std::uint64_t x = 0, z = 0;
  for (int s = 1; s <= n; ++s) {
    if (p.x_bit(s)) x |= std::uint64_t(1) << (n - s);
    if (p.z_bit(s)) z |= std::uint64_t(1) << (n - s);
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    double sgn = (std::popcount(std::uint64_t(b) & z) & 1) ? -1.0 : 1.0;
    m(Eigen::Index(std::uint64_t(b) ^ x), b) = kIPow[p.phase_power()] * sgn;
  }
  return m;
}

Eigen::VectorXcd vec(const Eigen::MatrixXcd& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

// |Y^(2)_{r1,r2}>> as a dense vector on (C^{d^2})^{x2}.
Eigen::VectorXcd upsilon2_vector(int n_sites, int r1, int r2) {
  const int modes = 2 * n_sites;
  const Eigen::Index d = Eigen::Index(1) << n_sites;
  const Eigen::Index d2 = d * d;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(d2 * d2);

  std::vector<int> all(modes);
  std::iota(all.begin(), all.end(), 1);
  std::vector<int> a(r1), b(r2);
  std::function<void(int, int, std::vector<int>&, const std::function<void()>&)> comb =
      [&](int pos, int next, std::vector<int>& target, const std::function<void()>& done) {
        if (pos == static_cast<int>(target.size())) {
          done();
          return;
        }
        for (int idx = next; idx <= modes; ++idx) {
          target[pos] = idx;
          comb(pos + 1, idx + 1, target, done);
        }
      };

  comb(0, 1, a, [&]() {
    Mask ma = 0;
    for (int idx : a) ma |= Mask(1) << (idx - 1);
    comb(0, 1, b, [&]() {
      for (int idx : b)
        if (ma & (Mask(1) << (idx - 1))) return;
      PauliOperator ga = majorana_string(MajoranaIndexSet(modes, a), n_sites);
      PauliOperator gb = majorana_string(MajoranaIndexSet(modes, b), n_sites);
      Eigen::VectorXcd vab = vec(dense_pauli(ga * gb));
      Eigen::VectorXcd vba = vec(dense_pauli(gb * ga));
      for (Eigen::Index i = 0; i < d2; ++i)
        if (vab(i) != 0.0) out.segment(i * d2, d2) += vab(i) * vba;
    });
  });
  return out;
}

}  // namespace

ReplicaSpec::ReplicaSpec(std::vector<int> r_in) : r(std::move(r_in)) {
  if (r.size() < 2) throw std::invalid_argument("ReplicaSpec: need k >= 2 replicas");
  int sum = 0;
  for (int v : r) {
    if (v < 0) throw std::invalid_argument("ReplicaSpec: r_j must be non-negative");
    sum += v;
  }
  if (sum == 0) throw std::invalid_argument("ReplicaSpec: sum of r must be positive");
}

int ReplicaSpec::total() const { return std::accumulate(r.begin(), r.end(), 0); }

double zeta_overlap(const StateVector& psi, const ReplicaSpec& spec) {
  const int n = psi.n_qubits();
  check_budget(n, spec);
  ZetaEvaluator ev;
  ev.n_modes = 2 * n;
  ev.r = spec.r;
  ev.expect = [&psi, n](Mask u) -> Cplx {
    std::vector<int> idx;
    for (int i = 0; i < 2 * n; ++i)
      if (u & (Mask(1) << i)) idx.push_back(i + 1);
    return expectation(psi, majorana_string(MajoranaIndexSet(2 * n, idx), n));
  };
  return ev.run();
}

double normalization(int n_sites, const ReplicaSpec& spec) {
  check_budget(n_sites, spec);
  ZetaEvaluator ev;
  ev.n_modes = 2 * n_sites;
  ev.r = spec.r;
  ev.expect = [](Mask u) { return vacuum_expectation(u); };
  return ev.run();
}

double phi_measure(const StateVector& psi, const ReplicaSpec& spec) {
  return normalization(psi.n_qubits(), spec) - zeta_overlap(psi, spec);
}

double invariance_check(const ReplicaSpec& spec, int n_sites, int trials, std::uint64_t seed) {
  double max_dev = 0;
  for (int t = 0; t < trials; ++t) {
    auto rng = make_rng(seed, static_cast<std::uint64_t>(t));
    StateVector psi = haar_state(n_sites, Sector::generic, stream_seed(seed, 1000003 + t));
    double before = zeta_overlap(psi, spec);

    std::uniform_int_distribution<int> mode(1, 2 * n_sites);
    std::uniform_real_distribution<double> angle(0, 2 * M_PI);
    std::uniform_real_distribution<double> coin(0, 1);
    for (int g = 0; g < 3 * n_sites; ++g) {
      if (coin(rng) < 0.1) {
        apply_mode_reflection(psi, mode(rng));
      } else {
        int m = mode(rng), n2 = mode(rng);
        while (n2 == m) n2 = mode(rng);
        apply_majorana_rotation(psi, std::min(m, n2), std::max(m, n2), angle(rng));
      }
    }
    double after = zeta_overlap(psi, spec);
    max_dev = std::max(max_dev, std::abs(after - before));
  }
  return max_dev;
}

bool comm2_collapse_check(int n_sites, int m, int r) {
  if (n_sites > 3)
    throw std::runtime_error("comm2_collapse_check: dense replica budget is N <= 3");
  if (r < 0 || r > m || m > 2 * n_sites)
    throw std::invalid_argument("comm2_collapse_check: need 0 <= r <= m <= 2N");
  Eigen::VectorXcd u = upsilon2_vector(n_sites, r, m - r);
  Eigen::VectorXcd v = upsilon2_vector(n_sites, m, 0);
  double nu = u.norm(), nv = v.norm();
  if (nu < 1e-12 || nv < 1e-12) return false;
  Cplx overlap = v.dot(u) / (nu * nv);
  if (std::abs(std::abs(overlap) - 1.0) > 1e-10) return false;  // not proportional
  double expected_sign = (static_cast<long long>(r) * (m - r)) % 2 == 0 ? 1.0 : -1.0;
  return std::abs(overlap.real() - expected_sign) < 1e-10 &&
         std::abs(overlap.imag()) < 1e-10;
}

int comm2_independent_count(int n_sites) {
  if (n_sites > 3)
    throw std::runtime_error("comm2_independent_count: dense replica budget is N <= 3");
  const int modes = 2 * n_sites;
  std::vector<Eigen::VectorXcd> vecs;
  for (int r1 = 0; r1 <= modes; ++r1)
    for (int r2 = 0; r1 + r2 <= modes; ++r2) vecs.push_back(upsilon2_vector(n_sites, r1, r2));
  Eigen::MatrixXcd stack(vecs.size(), vecs[0].size());
  for (std::size_t i = 0; i < vecs.size(); ++i) stack.row(i) = vecs[i].transpose();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(stack);
  qr.setThreshold(1e-8);
  return static_cast<int>(qr.rank());
}

}  // namespace faf
