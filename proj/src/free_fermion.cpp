#include "faf/free_fermion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace faf {

QuadraticHamiltonian::QuadraticHamiltonian(Eigen::MatrixXd h_in) : h(std::move(h_in)) {
  if (h.rows() != h.cols() || h.rows() < 2 || h.rows() % 2 != 0)
    throw std::invalid_argument("QuadraticHamiltonian: dimension must be even");
  if ((h + h.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("QuadraticHamiltonian: matrix is not antisymmetric");
}

CanonicalForm canonical_form(const QuadraticHamiltonian& ham) {
  const int modes = ham.n_modes();
  const int n = modes / 2;
  Eigen::RealSchur<Eigen::MatrixXd> schur(ham.h);
  Eigen::MatrixXd u = schur.matrixU();
  const Eigen::MatrixXd& t = schur.matrixT();

  // Antisymmetry forces T block-diagonal: 2x2 blocks [[0,b],[-b,0]] plus 1x1
  // zeros for null modes. Collect blocks, pair up stray zero columns.
  struct Block {
    int c0, c1;
    double eps;
  };
  std::vector<Block> blocks;
  std::vector<int> singles;
  const double tol = 1e-10 * std::max(1.0, ham.h.cwiseAbs().maxCoeff());
  for (int i = 0; i < modes;) {
    if (i + 1 < modes && std::abs(t(i + 1, i)) > tol) {
      double b = t(i, i + 1);
      if (b >= 0)
        blocks.push_back({i, i + 1, b});
      else
        blocks.push_back({i + 1, i, -b});  // swapping the basis pair flips the sign
      i += 2;
    } else {
      singles.push_back(i);
      i += 1;
    }
  }
  for (std::size_t s = 0; s + 1 < singles.size(); s += 2)
    blocks.push_back({singles[s], singles[s + 1], 0.0});
  if (static_cast<int>(blocks.size()) != n)
    throw std::runtime_error("canonical_form: Schur form is not block-diagonal");

  std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
    return a.eps > b.eps;
  });

  Eigen::MatrixXd q(modes, modes);
  Eigen::VectorXd eps(n);
  for (int m = 0; m < n; ++m) {
    q.col(2 * m) = u.col(blocks[m].c0);
    q.col(2 * m + 1) = u.col(blocks[m].c1);
    eps(m) = blocks[m].eps;
  }
  // h = q D q^T, so G = q^T satisfies h = G^T D G.
  CanonicalForm out{q.transpose(), std::move(eps)};

  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(modes, modes);
  for (int m = 0; m < n; ++m) {
    d(2 * m, 2 * m + 1) = out.eps(m);
    d(2 * m + 1, 2 * m) = -out.eps(m);
  }
  double resid = (out.g.transpose() * d * out.g - ham.h).cwiseAbs().maxCoeff();
  if (resid > 1e-8 * std::max(1.0, ham.h.cwiseAbs().maxCoeff()))
    throw std::runtime_error("canonical_form: reconstruction residual too large");
  return out;
}

GaussianGroundState ground_covariance(const QuadraticHamiltonian& ham) {
  CanonicalForm cf = canonical_form(ham);
  const int n = ham.n_sites();

  // All modes empty gives energy -sum eps/2 and parity det(G); if det(G) = -1
  // that state lives in the odd sector, so the weakest mode is flipped.
  double energy = -cf.eps.sum() / 2;
  std::vector<double> block_sign(n, 1.0);
  bool parity_adjusted = false;
  if (cf.g.determinant() < 0) {
    block_sign[n - 1] = -1.0;  // eps is descending
    energy += cf.eps(n - 1);
    parity_adjusted = true;
  }
  Eigen::MatrixXd m0 = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int m = 0; m < n; ++m) {
    m0(2 * m, 2 * m + 1) = block_sign[m];
    m0(2 * m + 1, 2 * m) = -block_sign[m];
  }
  bool degenerate = cf.eps.size() && cf.eps(n - 1) < 1e-10;
  Eigen::MatrixXd m = cf.g.transpose() * m0 * cf.g;
  return {CovarianceMatrix(std::move(m), 1e-8), energy, cf.eps, cf.g, parity_adjusted, degenerate};
}

Eigen::MatrixXd matchgate_to_orthogonal(const std::vector<MatchgateElement>& circuit) {
  int modes = 0;
  for (const auto& e : circuit) {
    if (const auto* r = std::get_if<PlaneRotation>(&e))
      modes = std::max(modes, r->n);
    else
      modes = std::max(modes, std::get<Reflection>(e).axis);
  }
  modes = std::max(modes, 2);
  if (modes % 2) ++modes;
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(modes, modes);
  for (const auto& e : circuit) {
    if (const auto* r = std::get_if<PlaneRotation>(&e)) {
      if (r->m < 1 || r->n <= r->m) throw std::invalid_argument("PlaneRotation: need 1 <= m < n");
      Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(modes, modes);
      const int a = r->m - 1, b = r->n - 1;
      rot(a, a) = std::cos(r->theta);
      rot(a, b) = std::sin(r->theta);
      rot(b, a) = -std::sin(r->theta);
      rot(b, b) = std::cos(r->theta);
      g = rot * g;  // later gates act from the left
    } else {
      const int axis = std::get<Reflection>(e).axis;
      if (axis < 1) throw std::invalid_argument("Reflection: axis must be >= 1");
      g.row(axis - 1) *= -1.0;
    }
  }
  return g;
}

QuadraticHamiltonian tfim_hamiltonian(int n_sites, double hz, Boundary bc) {
  if (n_sites < 2) throw std::invalid_argument("tfim_hamiltonian: N must be >= 2");
  const int modes = 2 * n_sites;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(modes, modes);
  auto add = [&](int a, int b, double c) {  // c * i gamma_a gamma_b, 1-based a < b
    h(a - 1, b - 1) += 2 * c;
    h(b - 1, a - 1) -= 2 * c;
  };
  for (int m = 1; m <= n_sites; ++m) add(2 * m - 1, 2 * m, hz);
  for (int m = 1; m < n_sites; ++m) add(2 * m, 2 * m + 1, 1.0);
  // even-sector corner bond: -X_N X_1 = +i gamma_1 gamma_2N when P = +1
  if (bc == Boundary::periodic) add(1, modes, 1.0);
  return QuadraticHamiltonian(std::move(h));
}

double ising_critical_correlator(int n_sites, double r, bool periodic) {
  if (!periodic)
    throw std::invalid_argument("ising_critical_correlator: closed form is for PBC only");
  if (r <= 0 || r >= n_sites)
    throw std::out_of_range("ising_critical_correlator: need 0 < r < N");
  double twice = 2 * r;
  if (std::abs(twice - std::round(twice)) > 1e-9)
    throw std::invalid_argument("ising_critical_correlator: r must be integer or half-integer");
  bool integer_r = std::abs(r - std::round(r)) < 1e-9;
  if (integer_r) return 0.0;
  return 1.0 / (n_sites * std::sin(M_PI * r / n_sites));
}

namespace {
double ipow(double x, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= x;
  return out;
}
}  // namespace

PeschelEmery pe_covariance(int n_sites, double lambda) {
  if (!(lambda > 0 && lambda < 0.5))
    throw std::out_of_range("pe_covariance: lambda must lie in (0, 1/2)");
  const int n = n_sites;
  const int modes = 2 * n;
  const double h_pe = 1.0 / (4 * lambda) - lambda;
  const double ct = -1.0 / (2 * (h_pe + lambda));  // = -2 lambda
  const double st2 = 1.0 - ct * ct;
  const double a_n = 1.0 / (1.0 + ipow(ct, n));

  // Dual-frame correlators of the product-cat ground state. Same-parity mode
  // pairs vanish (the state is real); the three mixed families below are the
  // M entries for mode order a < b, sites p <= q, separation k = q - p.
  Eigen::MatrixXd mdual = Eigen::MatrixXd::Zero(modes, modes);
  auto set = [&](int a, int b, double v) {  // M_ab = <-i gamma_a gamma_b>, 1-based
    mdual(a - 1, b - 1) = v;
    mdual(b - 1, a - 1) = -v;
  };
  const double onsite = a_n * (ct + ipow(ct, n - 1));
  for (int p = 1; p <= n; ++p) set(2 * p - 1, 2 * p, onsite);
  for (int p = 1; p <= n; ++p) {
    for (int q = p + 1; q <= n; ++q) {
      const int k = q - p;
      set(2 * p - 1, 2 * q, a_n * st2 * ipow(ct, n - k - 1));  // odd(p) - even(q)
      set(2 * p, 2 * q - 1, a_n * st2 * ipow(ct, k - 1));      // even(p) - odd(q)
    }
  }

  // Undo the duality gamma_m -> gamma_{m-1} (cyclic): the ANNNI-frame matrix is
  // the dual one with both indices shifted down by one.
  Eigen::MatrixXd m(modes, modes);
  for (int a = 0; a < modes; ++a)
    for (int b = 0; b < modes; ++b)
      m(a, b) = mdual((a + modes - 1) % modes, (b + modes - 1) % modes);

  return {h_pe, ct, CovarianceMatrix(std::move(m), 1e-9)};
}

}  // namespace faf
