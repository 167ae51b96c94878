#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "faf/free_fermion.hpp"
#include "faf/nongauss.hpp"
#include "faf/rng.hpp"
#include "oracle.hpp"

using namespace faf;

namespace {

// Dense even-sector spin TFIM built from first principles (J = 1).
struct DenseTfim {
  Eigen::MatrixXcd full;
  std::vector<int> even_idx;
  Eigen::MatrixXcd sector;
};

DenseTfim dense_tfim(int n, double hz, bool pbc) {
  const int dim = 1 << n;
  auto site_op = [&](int s, char axis) {
    oracle::Mat out = oracle::Mat::Identity(1, 1);
    for (int q = 1; q <= n; ++q)
      out = oracle::kron(out, q == s ? oracle::pauli2(axis) : oracle::pauli2('I'));
    return out;
  };
  auto xx = [&](int a, int b) {
    oracle::Mat out = oracle::Mat::Identity(1, 1);
    for (int q = 1; q <= n; ++q)
      out = oracle::kron(out, (q == a || q == b) ? oracle::pauli2('X') : oracle::pauli2('I'));
    return out;
  };
  DenseTfim out;
  out.full = oracle::Mat::Zero(dim, dim);
  for (int m = 1; m <= n; ++m) out.full -= hz * site_op(m, 'Z');
  for (int m = 1; m < n; ++m) out.full -= xx(m, m + 1);
  if (pbc) out.full -= xx(n, 1);
  for (int b = 0; b < dim; ++b)
    if (__builtin_popcount(b) % 2 == 0) out.even_idx.push_back(b);
  const int sd = static_cast<int>(out.even_idx.size());
  out.sector.resize(sd, sd);
  for (int i = 0; i < sd; ++i)
    for (int j = 0; j < sd; ++j) out.sector(i, j) = out.full(out.even_idx[i], out.even_idx[j]);
  return out;
}

Eigen::MatrixXd random_antisymmetric(int modes, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(modes, modes);
  for (int i = 0; i < modes; ++i)
    for (int j = i + 1; j < modes; ++j) {
      h(i, j) = g(rng);
      h(j, i) = -h(i, j);
    }
  return h;
}

}  // namespace

TEST_CASE("canonical form") {
  Eigen::MatrixXd single(2, 2);
  single << 0, 1.7, -1.7, 0;
  CanonicalForm cf = canonical_form(QuadraticHamiltonian(single));
  CHECK(cf.eps(0) == doctest::Approx(1.7).epsilon(1e-12));

  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    QuadraticHamiltonian h(random_antisymmetric(12, rng));
    CanonicalForm c = canonical_form(h);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(12, 12);
    for (int m = 0; m < 6; ++m) {
      d(2 * m, 2 * m + 1) = c.eps(m);
      d(2 * m + 1, 2 * m) = -c.eps(m);
      CHECK(c.eps(m) >= 0);
      if (m > 0) CHECK(c.eps(m) <= c.eps(m - 1));
    }
    CHECK((c.g.transpose() * d * c.g - h.h).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((c.g * c.g.transpose() - Eigen::MatrixXd::Identity(12, 12)).cwiseAbs().maxCoeff() <
          1e-8);
  }
}

TEST_CASE("TFIM ground energy against dense even-sector diagonalization") {
  for (bool pbc : {false, true}) {
    const int n = 6;
    GaussianGroundState gs =
        ground_covariance(tfim_hamiltonian(n, 0.8, pbc ? Boundary::periodic : Boundary::open));
    DenseTfim dense = dense_tfim(n, 0.8, pbc);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense.sector);
    CHECK(gs.energy == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-8));
  }
}

TEST_CASE("TFIM matches the spin Hamiltonian on the even sector") {
  const int n = 5;
  const double hz = 1.3;
  QuadraticHamiltonian q = tfim_hamiltonian(n, hz, Boundary::periodic);
  const int dim = 1 << n;
  oracle::Mat majo = oracle::Mat::Zero(dim, dim);
  for (int a = 0; a < 2 * n; ++a)
    for (int b = 0; b < 2 * n; ++b)
      if (q.h(a, b) != 0)
        majo += oracle::Cplx(0, 0.25) * q.h(a, b) *
                (oracle::dense_majorana(a + 1, n) * oracle::dense_majorana(b + 1, n));
  DenseTfim dense = dense_tfim(n, hz, true);
  for (std::size_t i = 0; i < dense.even_idx.size(); ++i)
    for (std::size_t j = 0; j < dense.even_idx.size(); ++j)
      CHECK(std::abs(majo(dense.even_idx[i], dense.even_idx[j]) - dense.sector(i, j)) < 1e-10);
}

TEST_CASE("even-sector spectrum from single-particle energies") {
  const int n = 4;
  QuadraticHamiltonian q = tfim_hamiltonian(n, 0.6, Boundary::periodic);
  GaussianGroundState gs = ground_covariance(q);
  // flip an even number of occupations relative to the sector ground state
  std::vector<double> energies;
  for (int pattern = 0; pattern < (1 << n); ++pattern) {
    if (__builtin_popcount(pattern) % 2 != 0) continue;
    double e = gs.energy;
    for (int m = 0; m < n; ++m)
      if (pattern & (1 << m)) e += gs.eps(m) * (gs.parity_adjusted && m == n - 1 ? -1 : 1);
    energies.push_back(e);
  }
  std::sort(energies.begin(), energies.end());
  DenseTfim dense = dense_tfim(n, 0.6, true);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense.sector);
  REQUIRE(static_cast<int>(energies.size()) == es.eigenvalues().size());
  for (std::size_t i = 0; i < energies.size(); ++i)
    CHECK(energies[i] == doctest::Approx(es.eigenvalues()(static_cast<int>(i))).epsilon(1e-9));
}

TEST_CASE("ground covariance") {
  // deep paramagnet: covariance approaches the vacuum block form
  GaussianGroundState para = ground_covariance(tfim_hamiltonian(6, 1e6, Boundary::periodic));
  CHECK((para.cov.matrix() - CovarianceMatrix::vacuum(6).matrix()).cwiseAbs().maxCoeff() < 1e-5);

  GaussianGroundState gs = ground_covariance(tfim_hamiltonian(8, 0.5, Boundary::periodic));
  for (double l : williamson_eigenvalues(gs.cov)) CHECK(l == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(antiflatness(gs.cov, 1) < 1e-9);
  CHECK(antiflatness(gs.cov, 2) < 1e-9);

  // <Z_1> = M_12 against the dense even-sector ground state
  DenseTfim dense = dense_tfim(8, 0.5, true);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense.sector);
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(1 << 8);
  for (std::size_t i = 0; i < dense.even_idx.size(); ++i)
    full(dense.even_idx[i]) = es.eigenvectors().col(0)(static_cast<int>(i));
  StateVector psi(8, full);
  double z1 = expectation(psi, PauliOperator::single(8, 1, 'Z')).real();
  CHECK(gs.cov.matrix()(0, 1) == doctest::Approx(z1).epsilon(1e-8));

  // h = 0 with OBC leaves unpaired edge modes: degenerate ground state
  CHECK(ground_covariance(tfim_hamiltonian(4, 0.0, Boundary::open)).degenerate);
}

TEST_CASE("matchgate circuit compilation to O(2N)") {
  CHECK((matchgate_to_orthogonal({}) - Eigen::MatrixXd::Identity(2, 2)).norm() == 0.0);

  Eigen::MatrixXd g = matchgate_to_orthogonal({PlaneRotation{1, 2, 0.7}});
  CHECK(g(0, 0) == doctest::Approx(std::cos(0.7)));
  CHECK(g(0, 1) == doctest::Approx(std::sin(0.7)));
  CHECK(std::abs(g.determinant() - 1.0) < 1e-12);

  // cross-engine: dense evolution against G M G^T at N = 5
  const int n = 5;
  std::mt19937_64 rng(40);
  std::uniform_int_distribution<int> mode(1, 2 * n);
  std::uniform_real_distribution<double> angle(0, 2 * M_PI);
  std::uniform_real_distribution<double> coin(0, 1);
  for (int trial = 0; trial < 8; ++trial) {
    StateVector psi = haar_state(n, Sector::generic, 700 + trial);
    CovarianceMatrix before = covariance_matrix(psi);
    std::vector<MatchgateElement> circuit;
    for (int gate = 0; gate < 20; ++gate) {
      if (coin(rng) < 0.15) {
        circuit.push_back(Reflection{mode(rng)});
      } else {
        int a = mode(rng), b = mode(rng);
        if (a == b) continue;
        circuit.push_back(PlaneRotation{std::min(a, b), std::max(a, b), angle(rng)});
      }
    }
    StateVector evolved = psi;
    for (const auto& e : circuit) {
      if (const auto* r = std::get_if<PlaneRotation>(&e))
        apply_majorana_rotation(evolved, r->m, r->n, r->theta);
      else
        apply_mode_reflection(evolved, std::get<Reflection>(e).axis);
    }
    Eigen::MatrixXd g2 = matchgate_to_orthogonal(circuit);
    Eigen::MatrixXd expected = g2 * before.matrix() * g2.transpose();
    CHECK((covariance_matrix(evolved).matrix() - expected).cwiseAbs().maxCoeff() < 1e-9);
    // FAF is untouched by the circuit
    CHECK(antiflatness(covariance_matrix(evolved), 2) == doctest::Approx(antiflatness(before, 2)).epsilon(1e-9));
  }
}

TEST_CASE("critical Ising correlator") {
  CHECK(ising_critical_correlator(8, 1.0) == doctest::Approx(0.0));
  CHECK(ising_critical_correlator(8, 0.5) ==
        doctest::Approx(1.0 / (8 * std::sin(M_PI / 16))).epsilon(1e-12));
  CHECK(ising_critical_correlator(4096, 2.5) ==
        doctest::Approx(1.0 / (M_PI * 2.5)).epsilon(1e-4));
  CHECK_THROWS_AS(ising_critical_correlator(8, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(ising_critical_correlator(8, 9.0), std::out_of_range);

  // the covariance of the critical PBC ground state reproduces the closed form
  const int n = 8;
  GaussianGroundState gs = ground_covariance(tfim_hamiltonian(n, 1.0, Boundary::periodic));
  for (int twice_r = 1; twice_r < 8; ++twice_r) {
    double r = 0.5 * twice_r;
    double expected = ising_critical_correlator(n, r);
    CHECK(std::abs(gs.cov.matrix()(0, twice_r)) == doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("Peschel-Emery closed forms") {
  PeschelEmery pe = pe_covariance(4, 0.3);
  CHECK(pe.h_pe == doctest::Approx(1.0 / 1.2 - 0.3).epsilon(1e-12));
  CHECK(pe.cos_theta == doctest::Approx(-0.6).epsilon(1e-12));
  // the closed-form onsite correlator of the dual-frame cat state sits at the
  // shifted mode pair (2,3) in the ANNNI frame
  double a4 = 1.0 / (1.0 + std::pow(-0.6, 4));
  CHECK(pe.cov.matrix()(1, 2) ==
        doctest::Approx(a4 * (-0.6 + std::pow(-0.6, 3))).epsilon(1e-10));
  CHECK(antiflatness(pe.cov, 1) < 1e-9);
  CHECK(antiflatness(pe.cov, 2) < 1e-9);

  // dual frame against the dense product-cat state
  const int n = 6;
  PeschelEmery pe6 = pe_covariance(n, 0.3);
  StateVector cat = prepare_pe_ground(std::acos(pe6.cos_theta), n);
  CovarianceMatrix dual = covariance_matrix(cat);
  const int modes = 2 * n;
  for (int a = 0; a < modes; ++a)
    for (int b = 0; b < modes; ++b)
      CHECK(pe6.cov.matrix()(a, b) ==
            doctest::Approx(dual.matrix()((a + modes - 1) % modes, (b + modes - 1) % modes))
                .epsilon(1e-9));

  CHECK_THROWS_AS(pe_covariance(4, 0.7), std::out_of_range);
}
