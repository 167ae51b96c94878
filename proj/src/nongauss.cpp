#include "faf/nongauss.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "faf/rng.hpp"

namespace faf {

namespace {

Eigen::VectorXd singular_values(const CovarianceMatrix& m) {
  return Eigen::BDCSVD<Eigen::MatrixXd>(m.matrix()).singularValues();
}

double catalan(int k) {
  double c = 1.0;
  for (int i = 0; i < k; ++i) c *= 2.0 * (2 * i + 1) / (i + 2);
  return c;
}

}  // namespace

double antiflatness(const CovarianceMatrix& m, int k) {
  if (k < 1) throw std::invalid_argument("faf: k must be >= 1");
  Eigen::VectorXd sv = singular_values(m);
  double tr = 0;
  for (double s : sv) tr += std::pow(s * s, k);
  return m.n_sites() - 0.5 * tr;
}

std::vector<double> williamson_eigenvalues(const CovarianceMatrix& m) {
  Eigen::VectorXd sv = singular_values(m);  // descending
  const int n = m.n_sites();
  std::vector<double> lambda(n);
  const double scale = std::max(sv.size() ? sv(0) : 0.0, 1e-9);
  for (int i = 0; i < n; ++i) {
    double a = sv(2 * i), b = sv(2 * i + 1);
    if (a - b > 1e-6 * std::max(a, 1e-3 * scale))
      throw std::runtime_error(
          "williamson_eigenvalues: singular values do not pair (non-antisymmetric input?)");
    lambda[i] = 0.5 * (a + b);
  }
  return lambda;
}

double nge_infinity(const CovarianceMatrix& m) {
  double out = 0;
  for (double l : williamson_eigenvalues(m)) {
    if (l > 1.0 + 1e-8)
      throw std::invalid_argument("nge_infinity: Williamson eigenvalue above 1 (unphysical state)");
    l = std::min(l, 1.0);
    double hi = 0.5 * (1.0 + l), lo = 0.5 * (1.0 - l);
    out -= std::log2(hi * hi + lo * lo);
  }
  return out;
}

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

struct DensePauliAction {
  std::uint64_t x = 0, z = 0;
  std::complex<double> phase;
};

DensePauliAction dense_action(const PauliOperator& p) {
  static const std::complex<double> kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  DensePauliAction a;
  const int n = p.n_qubits();
  for (int s = 1; s <= n; ++s) {
    if (p.x_bit(s)) a.x |= std::uint64_t(1) << (n - s);
    if (p.z_bit(s)) a.z |= std::uint64_t(1) << (n - s);
  }
  a.phase = kIPow[p.phase_power()];
  return a;
}

// rho <- (a + b P) rho (a + b P) with P Hermitian.
void conjugate_by_factor(Eigen::MatrixXcd& rho, double a, double b, const DensePauliAction& p) {
  const Eigen::Index dim = rho.rows();
  Eigen::MatrixXcd left(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    std::uint64_t src = std::uint64_t(r) ^ p.x;
    double sgn = (std::popcount(src & p.z) & 1) ? -1.0 : 1.0;
    left.row(r) = a * rho.row(r) + (b * sgn) * p.phase * rho.row(Eigen::Index(src));
  }
  for (Eigen::Index c = 0; c < dim; ++c) {
    std::uint64_t src = std::uint64_t(c) ^ p.x;
    double sgn = (std::popcount(std::uint64_t(c) & p.z) & 1) ? -1.0 : 1.0;
    rho.col(c) = a * left.col(c) + (b * sgn) * p.phase * left.col(Eigen::Index(src));
  }
}

Eigen::MatrixXcd trace_out_second_copy(const Eigen::MatrixXcd& sigma, int n) {
  const Eigen::Index d = Eigen::Index(1) << n;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index b = 0; b < d; ++b) out(i, j) += sigma(i * d + b, j * d + b);
  return out;
}

}  // namespace

double nge_finite_q(const StateVector& psi, int q) {
  if (q < 0) throw std::invalid_argument("nge_finite_q: q must be >= 0");
  const int n = psi.n_qubits();
  if (n > 6)
    throw std::length_error("nge_finite_q: N too large for the doubled dense workspace");
  const Eigen::Index d = Eigen::Index(psi.dim());
  Eigen::MatrixXcd rho = psi.amplitudes() * psi.amplitudes().adjoint();

  // Beam splitter on two copies: W = prod_j exp[(pi/8) gamma_j gamma_{2N+j}],
  // with the Jordan-Wigner chain of the second copy continuing from qubit 1.
  const int big = 2 * n;
  std::vector<DensePauliAction> factors;
  factors.reserve(2 * n);
  for (int j = 1; j <= 2 * n; ++j)
    factors.push_back(dense_action(jordan_wigner(j, big) * jordan_wigner(2 * n + j, big)));
  const double c = std::cos(M_PI / 8), s = std::sin(M_PI / 8);

  for (int step = 0; step < q; ++step) {
    Eigen::MatrixXcd sigma = Eigen::MatrixXcd::Zero(d * d, d * d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        sigma.block(i * d, j * d, d, d) = rho(i, j) * rho;
    for (const auto& f : factors) conjugate_by_factor(sigma, c, s, f);
    rho = trace_out_second_copy(sigma, n);
  }
  double purity = rho.cwiseAbs2().sum();
  return -std::log2(purity);
}

double typical_faf(int n_qubits, int k, Sector sector) {
  if (n_qubits < 1) throw std::invalid_argument("typical_faf: N must be >= 1");
  if (k != 1 && k != 2)
    throw std::invalid_argument("typical_faf: only k in {1,2}; use leading_typical_faf");
  if (n_qubits == 1) return 0.0;
  if (sector == Sector::even_parity && n_qubits <= 3) return 0.0;

  const cpp_int n = n_qubits;
  const cpp_int d = cpp_int(1) << (sector == Sector::generic ? n_qubits : n_qubits - 1);
  cpp_rational f;
  if (k == 1) {
    f = cpp_rational(n) - cpp_rational(n * (2 * n - 1), d + 1);
  } else {
    cpp_int num = n * (2 * n - 1) * (-8 * n * n + 4 * n * (d + 7) - d - 14);
    cpp_int den = (d + 1) * (d + 2) * (d + 3);
    f = cpp_rational(n) - cpp_rational(num, den);
  }
  return f.convert_to<double>();
}

double leading_typical_faf(int n_qubits, int k, Sector sector) {
  if (n_qubits < 1 || k < 1) throw std::invalid_argument("leading_typical_faf: bad arguments");
  const int n_eff = sector == Sector::generic ? n_qubits : n_qubits - 1;
  double log2_term =
      std::log2(catalan(k)) + k + (k + 1) * std::log2(double(n_qubits)) - double(k) * n_eff;
  return n_qubits - std::exp2(log2_term);
}

std::vector<TypicalFafEntry> typical_faf_table(const std::vector<int>& n_list,
                                               const std::vector<int>& k_list, Sector sector) {
  std::vector<TypicalFafEntry> out;
  for (int n : n_list)
    for (int k : k_list)
      out.push_back({n, k, sector,
                     (k <= 2) ? typical_faf(n, k, sector) : leading_typical_faf(n, k, sector)});
  return out;
}

CovarianceMatrix random_covariance(int n_qubits, double sigma2, std::uint64_t seed) {
  if (sigma2 < 0) throw std::invalid_argument("random_covariance: sigma2 must be >= 0");
  const int modes = 2 * n_qubits;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(modes, modes);
  if (sigma2 > 0) {
    auto rng = make_rng(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(sigma2));
    for (int i = 0; i < modes; ++i)
      for (int j = i + 1; j < modes; ++j) {
        m(i, j) = gauss(rng);
        m(j, i) = -m(i, j);
      }
  }
  return CovarianceMatrix(std::move(m), 1e-30);
}

double faf_from_correlators(int n_modes,
                            const std::map<std::pair<int, int>, double>& correlators) {
  if (n_modes < 2 || n_modes % 2 != 0)
    throw std::invalid_argument("faf_from_correlators: n_modes must be even");
  double sum = 0;
  for (const auto& [mn, v] : correlators) {
    auto [m, n] = mn;
    if (m < 1 || m > n_modes || n < 1 || n > n_modes || m == n)
      throw std::invalid_argument("faf_from_correlators: bad mode pair");
    auto rev = correlators.find({n, m});
    if (rev != correlators.end()) {
      if (std::abs(rev->second + v) > 1e-10)
        throw std::invalid_argument("faf_from_correlators: inconsistent antisymmetry");
      sum += v * v;
    } else {
      sum += 2 * v * v;  // the mirrored entry is implied
    }
  }
  return n_modes / 2 - 0.5 * sum;
}

}  // namespace faf
