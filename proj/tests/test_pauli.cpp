#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "faf/pauli.hpp"
#include "oracle.hpp"

using namespace faf;

namespace {
bool dense_equal(const PauliOperator& p, const oracle::Mat& m, double tol = 1e-12) {
  return (oracle::dense(p) - m).cwiseAbs().maxCoeff() < tol;
}
}  // namespace

TEST_CASE("jordan_wigner matches the textbook strings") {
  // gamma_1 = X_1, gamma_2 = Y_1, gamma_3 = Z_1 X_2 at N=2
  PauliOperator g1 = jordan_wigner(1, 2);
  CHECK(g1.x_bit(1));
  CHECK(!g1.z_bit(1));
  CHECK(!g1.x_bit(2));
  CHECK(g1.phase_power() == 0);

  PauliOperator g2 = jordan_wigner(2, 2);
  CHECK(dense_equal(g2, oracle::kron(oracle::pauli2('Y'), oracle::pauli2('I'))));

  PauliOperator g3 = jordan_wigner(3, 2);
  CHECK(dense_equal(g3, oracle::kron(oracle::pauli2('Z'), oracle::pauli2('X'))));

  for (int mode = 1; mode <= 6; ++mode)
    CHECK(dense_equal(jordan_wigner(mode, 3), oracle::dense_majorana(mode, 3)));

  CHECK_THROWS_AS(jordan_wigner(0, 2), std::out_of_range);
  CHECK_THROWS_AS(jordan_wigner(5, 2), std::out_of_range);
}

TEST_CASE("majorana_string products carry exact phases") {
  // empty set is the identity
  PauliOperator id = majorana_string(MajoranaIndexSet(4, {}), 2);
  CHECK(id.is_identity());

  // gamma_1 gamma_2 = i Z_1
  PauliOperator g12 = majorana_string(MajoranaIndexSet(2, {1, 2}), 1);
  CHECK(g12.phase_power() == 1);
  CHECK(dense_equal(g12, oracle::Cplx(0, 1) * oracle::pauli2('Z')));

  // gamma_2 gamma_3 = i X_1 X_2
  PauliOperator g23 = majorana_string(MajoranaIndexSet(4, {2, 3}), 2);
  CHECK(dense_equal(g23, oracle::Cplx(0, 1) *
                             oracle::kron(oracle::pauli2('X'), oracle::pauli2('X'))));

  CHECK_THROWS(MajoranaIndexSet(4, {2, 2}));
  CHECK_THROWS(MajoranaIndexSet(4, {3, 1}));
  CHECK_THROWS(MajoranaIndexSet(4, {5}));
}

TEST_CASE("multiply agrees with dense matrix multiplication") {
  PauliOperator x = PauliOperator::single(1, 1, 'X');
  PauliOperator z = PauliOperator::single(1, 1, 'Z');
  CHECK((x * x).is_identity());

  // X * Z = -i Y
  PauliOperator xz = x * z;
  CHECK(dense_equal(xz, oracle::Cplx(0, -1) * oracle::pauli2('Y')));

  // gamma_1 * gamma_2 = i Z via dense 2x2 oracle
  PauliOperator prod = jordan_wigner(1, 1) * jordan_wigner(2, 1);
  CHECK(dense_equal(prod, oracle::dense_majorana(1, 1) * oracle::dense_majorana(2, 1)));

  // associativity and dense agreement on random triples
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> mode(1, 6);
  for (int trial = 0; trial < 40; ++trial) {
    PauliOperator a = jordan_wigner(mode(rng), 3);
    PauliOperator b = jordan_wigner(mode(rng), 3);
    PauliOperator c = jordan_wigner(mode(rng), 3);
    CHECK(((a * b) * c) == (a * (b * c)));
    CHECK(dense_equal(a * b, oracle::dense(a) * oracle::dense(b)));
  }

  PauliOperator wrong(2);
  CHECK_THROWS_AS(x * wrong, std::invalid_argument);
}

TEST_CASE("parity operator") {
  CHECK(dense_equal(parity_operator(1), oracle::pauli2('Z')));
  CHECK(dense_equal(parity_operator(2), oracle::kron(oracle::pauli2('Z'), oracle::pauli2('Z'))));

  // P = (-i)^N gamma_1 ... gamma_2N at N=3
  PauliOperator all = majorana_string(MajoranaIndexSet(6, {1, 2, 3, 4, 5, 6}), 3);
  oracle::Mat expected = std::pow(oracle::Cplx(0, -1), 3) * oracle::dense(all);
  CHECK(dense_equal(parity_operator(3), expected));
}

TEST_CASE("anticommutation and orthogonality at small N") {
  const int n = 3;
  for (int k = 1; k <= 2 * n; ++k) {
    oracle::Mat gk = oracle::dense(jordan_wigner(k, n));
    CHECK((gk * gk - oracle::Mat::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-12);
    for (int l = k + 1; l <= 2 * n; ++l) {
      oracle::Mat gl = oracle::dense(jordan_wigner(l, n));
      CHECK((gk * gl + gl * gk).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  // tr(gamma_S gamma_R^dag) = d delta_{S,R} over all subsets at N=2
  const int modes = 4;
  std::vector<PauliOperator> strings;
  std::vector<std::uint32_t> masks;
  for (std::uint32_t mask = 0; mask < 16; ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < modes; ++i)
      if (mask & (1u << i)) idx.push_back(i + 1);
    strings.push_back(majorana_string(MajoranaIndexSet(modes, idx), 2));
    masks.push_back(mask);
  }
  for (std::size_t i = 0; i < strings.size(); ++i)
    for (std::size_t j = 0; j < strings.size(); ++j) {
      oracle::Cplx tr = (oracle::dense(strings[i]) * oracle::dense(strings[j]).adjoint()).trace();
      if (i == j)
        CHECK(std::abs(tr - 4.0) < 1e-12);
      else
        CHECK(std::abs(tr) < 1e-12);
    }
}

TEST_CASE("parity commutes with even strings") {
  const int n = 4;
  PauliOperator p = parity_operator(n);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> mode(1, 2 * n);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> idx;
    while (idx.size() < 4) {
      int m = mode(rng);
      if (std::find(idx.begin(), idx.end(), m) == idx.end()) idx.push_back(m);
    }
    std::sort(idx.begin(), idx.end());
    PauliOperator even = majorana_string(MajoranaIndexSet(2 * n, idx), n);
    CHECK(p.commutes_with(even));
    PauliOperator odd = majorana_string(MajoranaIndexSet(2 * n, {idx[0]}), n);
    CHECK(!p.commutes_with(odd));
  }
}

TEST_CASE("is_hermitian matches dense conjugation at N<=4") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<int> ph(0, 3);
  for (int trial = 0; trial < 60; ++trial) {
    PauliOperator p(3);
    for (int s = 1; s <= 3; ++s) {
      p.set_x_bit(s, bit(rng));
      p.set_z_bit(s, bit(rng));
    }
    p.set_phase_power(ph(rng));
    oracle::Mat m = oracle::dense(p);
    bool herm = (m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-12;
    CHECK(p.is_hermitian() == herm);
  }
}

TEST_CASE("textual rendering") {
  CHECK(PauliOperator::identity(2).to_string() == "+1");
  CHECK(jordan_wigner(3, 2).to_string() == "+Z_1 X_2");
  PauliOperator m = jordan_wigner(1, 1) * jordan_wigner(2, 1);
  CHECK(m.to_string() == "+i Z_1");
}
