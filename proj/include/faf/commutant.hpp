#pragma once
#include <cstdint>
#include <vector>

#include "faf/state_vector.hpp"

namespace faf {

/// Replica layout (r_1,...,r_k), k >= 2, 0 < sum r_j <= 2N, cyclic A_{k+1} = A_1.
struct ReplicaSpec {
  std::vector<int> r;

  explicit ReplicaSpec(std::vector<int> r_in);
  int k() const { return static_cast<int>(r.size()); }
  int total() const;
};

/// zeta = sum over disjoint ordered subsets A_1..A_k of [2N], |A_m| = r_m, of
/// prod_m <psi| gamma_{A_m} gamma_{A_{m+1}} |psi>. The sum is combinatorially
/// explosive; enforced budget: sum r_j <= 6 or N <= 6.
double zeta_overlap(const StateVector& psi, const ReplicaSpec& spec);

/// zeta evaluated on the vacuum (Wick contraction on M_0); works at any N
/// within the same budget.
double normalization(int n_sites, const ReplicaSpec& spec);

/// phi = N(spec) - zeta(psi, spec); >= 0 up to float error, 0 on matchgates.
double phi_measure(const StateVector& psi, const ReplicaSpec& spec);

/// Max |zeta(U_G psi) - zeta(psi)| over `trials` random matchgate circuits
/// applied to random states; passes when < 1e-8.
double invariance_check(const ReplicaSpec& spec, int n_sites, int trials, std::uint64_t seed);

/// Dense verification that |Y^(2)_{r,m-r}>> is proportional to |Y^(2)_{m,0}>>
/// with sign (-1)^{r(m-r)}. N <= 3.
bool comm2_collapse_check(int n_sites, int m, int r);

/// Rank of the span of all |Y^(2)_{r1,r2}>> (including r1 = r2 = 0); the k=2
/// commutant has dimension 2N+1.
int comm2_independent_count(int n_sites);

}  // namespace faf
