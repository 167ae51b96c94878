#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "faf/nongauss.hpp"
#include "faf/rng.hpp"
#include "faf/state_vector.hpp"
#include "oracle.hpp"

using namespace faf;

namespace {

PauliOperator i_gamma_gamma(int m, int n, int nq) {
  PauliOperator p = jordan_wigner(m, nq) * jordan_wigner(n, nq);
  p.set_phase_power(p.phase_power() + 1);
  return p;
}

StateVector random_state(int n, std::uint64_t seed) {
  return haar_state(n, Sector::generic, seed);
}

}  // namespace

TEST_CASE("expectation golden values") {
  StateVector vac = StateVector::vacuum(3);
  CHECK(expectation(vac, PauliOperator::single(3, 1, 'Z')).real() == doctest::Approx(1.0));

  for (double theta : {0.3, 1.1, 2.5}) {
    StateVector psi = prepare_psi_theta(theta);
    CHECK(expectation(psi, i_gamma_gamma(1, 3, 4)).real() ==
          doctest::Approx(std::sin(theta) / 2).epsilon(1e-12));
    CHECK(expectation(psi, i_gamma_gamma(1, 4, 4)).real() ==
          doctest::Approx(-std::pow(std::cos(theta / 2), 2)).epsilon(1e-12));
  }
}

TEST_CASE("expectation matches the dense oracle") {
  StateVector psi = random_state(3, 77);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> mode(1, 6);
  for (int trial = 0; trial < 20; ++trial) {
    int a = mode(rng), b = mode(rng);
    if (a == b) continue;
    PauliOperator p = jordan_wigner(a, 3) * jordan_wigner(b, 3);
    oracle::Cplx direct =
        (psi.amplitudes().adjoint() * oracle::dense(p) * psi.amplitudes())(0, 0);
    CHECK(std::abs(expectation(psi, p) - direct) < 1e-12);
  }
}

TEST_CASE("covariance matrix basics") {
  // vacuum covariance is the canonical block form
  CovarianceMatrix m0 = covariance_matrix(StateVector::vacuum(4));
  CHECK((m0.matrix() - CovarianceMatrix::vacuum(4).matrix()).cwiseAbs().maxCoeff() < 1e-12);

  // |Psi_theta> entries and translation by two sites
  double theta = 0.9;
  StateVector psi8 = prepare_psi_theta_product(theta, 8);
  CovarianceMatrix m = covariance_matrix(psi8);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      CHECK(m.matrix()(a, b) == doctest::Approx(m.matrix()(a + 8, b + 8)).epsilon(1e-10));

  // random states stay inside the physical ball (SVD oracle)
  StateVector rnd = random_state(6, 4242);
  Eigen::VectorXd sv =
      Eigen::JacobiSVD<Eigen::MatrixXd>(covariance_matrix(rnd).matrix()).singularValues();
  CHECK(sv.maxCoeff() <= 1.0 + 1e-10);
}

TEST_CASE("apply_unitary") {
  StateVector vac = StateVector::vacuum(4);
  Eigen::MatrixXcd id2 = Eigen::MatrixXcd::Identity(2, 2);
  std::vector<int> q1{1};
  StateVector same = apply_unitary(vac, id2, q1);
  CHECK((same.amplitudes() - vac.amplitudes()).norm() < 1e-14);

  StateVector flipped = apply_unitary(vac, oracle::pauli2('X'), q1);
  CHECK(std::abs(flipped.amplitudes()(0b1000) - 1.0) < 1e-14);

  std::mt19937_64 rng(9);
  Eigen::MatrixXcd u4 = oracle::haar_unitary(4, rng);
  std::vector<int> q23{2, 3};
  StateVector rot = apply_unitary(random_state(4, 8), u4, q23);
  CHECK(rot.norm() == doctest::Approx(1.0).epsilon(1e-12));

  Eigen::MatrixXcd bad = 2.0 * id2;
  CHECK_THROWS_AS(apply_unitary(vac, bad, q1), std::invalid_argument);
}

TEST_CASE("haar states") {
  // even sector: exact parity by construction
  StateVector even = haar_state(5, Sector::even_parity, 31);
  CHECK(expectation(even, parity_operator(5)).real() == doctest::Approx(1.0).epsilon(1e-12));

  // every even 3-qubit state is fermionic Gaussian
  for (int s = 0; s < 20; ++s) {
    StateVector psi = haar_state(3, Sector::even_parity, 100 + s);
    CHECK(antiflatness(covariance_matrix(psi), 1) < 1e-10);
    CHECK(antiflatness(covariance_matrix(psi), 2) < 1e-10);
  }
}

TEST_CASE("entanglement entropy") {
  CHECK(entanglement_entropy(prepare_t_product(0.7, 1.1, 6), 3) == doctest::Approx(0.0));

  Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
  bell(0b00) = bell(0b11) = 1.0 / std::sqrt(2.0);
  CHECK(entanglement_entropy(StateVector(2, bell), 1) == doctest::Approx(1.0).epsilon(1e-12));

  // Page value at N=10, cut 5: 5 - 1/(2 ln 2), Monte Carlo over 50 samples
  double acc = 0;
  const int samples = 50;
  for (int s = 0; s < samples; ++s)
    acc += entanglement_entropy(haar_state(10, Sector::generic, 900 + s), 5);
  acc /= samples;
  CHECK(std::abs(acc - (5.0 - 1.0 / (2.0 * std::log(2.0)))) < 0.1);
}

TEST_CASE("named states") {
  CHECK(antiflatness(covariance_matrix(prepare_psi_theta(0.0)), 1) < 1e-10);
  CHECK(antiflatness(covariance_matrix(prepare_psi_theta(M_PI)), 1) == doctest::Approx(4.0).epsilon(1e-10));

  // F_k(|T>^N) = 1 - cos^{2kN} theta
  for (int k : {1, 2}) {
    for (double theta : {0.4, 1.2}) {
      StateVector t6 = prepare_t_product(theta, 0.3, 6);
      double expected = 1.0 - std::pow(std::cos(theta), 2 * k * 6);
      CHECK(antiflatness(covariance_matrix(t6), k) == doctest::Approx(expected).epsilon(1e-9));
    }
  }

  CHECK_THROWS_AS(prepare_psi_theta_product(0.5, 6), std::invalid_argument);

  StateVector pe = prepare_pe_ground(std::acos(-0.6), 6);
  CHECK(expectation(pe, parity_operator(6)).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(antiflatness(covariance_matrix(pe), 1) < 1e-9);  // product-cat states are Gaussian
}

TEST_CASE("Wick factorization on matchgate states") {
  const int n = 5;
  StateVector psi = StateVector::vacuum(n);
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> mode(1, 2 * n);
  std::uniform_real_distribution<double> angle(0, 2 * M_PI);
  for (int g = 0; g < 30; ++g) {
    int a = mode(rng), b = mode(rng);
    if (a == b) continue;
    apply_majorana_rotation(psi, std::min(a, b), std::max(a, b), angle(rng));
  }
  auto two_point = [&](int a, int b) {
    return expectation(psi, jordan_wigner(a, n) * jordan_wigner(b, n));
  };
  for (int trial = 0; trial < 25; ++trial) {
    int idx[4];
    std::uniform_int_distribution<int> pick(1, 2 * n);
    bool ok = true;
    for (int i = 0; i < 4; ++i) {
      idx[i] = pick(rng);
      for (int j = 0; j < i; ++j) ok &= idx[i] != idx[j];
    }
    if (!ok) continue;
    std::sort(idx, idx + 4);
    auto four = expectation(
        psi, majorana_string(MajoranaIndexSet(2 * n, {idx[0], idx[1], idx[2], idx[3]}), n));
    auto wick = two_point(idx[0], idx[1]) * two_point(idx[2], idx[3]) -
                two_point(idx[0], idx[2]) * two_point(idx[1], idx[3]) +
                two_point(idx[0], idx[3]) * two_point(idx[1], idx[2]);
    CHECK(std::abs(four - wick) < 1e-10);
  }
}

TEST_CASE("subadditivity on product states") {
  for (int trial = 0; trial < 10; ++trial) {
    StateVector a = haar_state(3, Sector::generic, 50 + trial);
    StateVector b = haar_state(3, Sector::generic, 150 + trial);
    double whole = antiflatness(covariance_matrix(tensor(a, b)), 1);
    double parts = antiflatness(covariance_matrix(a), 1) + antiflatness(covariance_matrix(b), 1);
    CHECK(whole <= parts + 1e-10);

    // additivity when one factor has definite parity
    StateVector e = haar_state(3, Sector::even_parity, 250 + trial);
    double whole2 = antiflatness(covariance_matrix(tensor(e, b)), 1);
    double parts2 = antiflatness(covariance_matrix(e), 1) + antiflatness(covariance_matrix(b), 1);
    CHECK(whole2 == doctest::Approx(parts2).epsilon(1e-10));
  }
}

TEST_CASE("dump/load round trip") {
  StateVector psi = random_state(5, 321);
  std::stringstream buf;
  dump_state(psi, buf);
  StateVector back = load_state(buf);
  CHECK(back.n_qubits() == 5);
  CHECK((back.amplitudes() - psi.amplitudes()).norm() < 1e-15);
}

TEST_CASE("qubit limit guards allocation") {
  int old = StateVector::qubit_limit();
  StateVector::set_qubit_limit(6);
  CHECK_THROWS_AS(StateVector::vacuum(7), std::length_error);
  StateVector::set_qubit_limit(old);
}
