#pragma once
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "faf/tableau.hpp"

namespace faf {

/// Random-circuit ensembles driving the k=1 FAF Monte Carlo. Gates are
/// two-qubit Cliffords, uniform over the full group or over the Z2-symmetric
/// subgroup (the 2-design replacement for Haar gates at k=1).
struct CircuitBuilder {
  enum class Kind { brickwall, staircase };
  Kind kind = Kind::brickwall;
  int depth = 0;         // brickwall layers
  int rank = 1;          // staircase r; bond dimension chi = 2^r
  int block_layers = 0;  // staircase layers per block; 0 means the 2r floor
  bool z2 = false;
};

struct McPoint {
  int t;  // depth (brickwall) or rank (staircase sweep)
  double mean = 0;
  double se = 0;
  long samples = 0;
};

struct McResult {
  double mean = 0;
  double se = 0;
  long samples = 0;
};

/// One brickwall layer t (1-based): odd t pairs (1,2),(3,4),...; even t pairs
/// (2,3),(4,5),...
void apply_brickwall_layer(StabilizerTableau& tab, int layer, bool z2, std::mt19937_64& rng);

/// Staircase of (r+1)-qubit blocks, each a >= 2r-layer brickwall of two-qubit
/// Cliffords on qubits j..j+r, j = 1..N-r.
void apply_staircase(StabilizerTableau& tab, int r, int block_layers, bool z2,
                     std::mt19937_64& rng);

McResult mc_faf1(int n_qubits, const CircuitBuilder& builder, int samples, std::uint64_t seed);

/// Mean F_1 after every brickwall layer 0..depth, one circuit pass per sample.
std::vector<McPoint> mc_faf1_profile(int n_qubits, int depth, bool z2, int samples,
                                     std::uint64_t seed);

McResult rmps_faf1(int n_qubits, int r, int samples, std::uint64_t seed, bool z2 = true,
                   int block_layers = 0);

struct DecayFit {
  double rate = 0;       // alpha in dF/N ~ e^{-alpha t}
  double intercept = 0;  // log-scale
  double rms_residual = 0;
  int points = 0;
};

/// Least-squares slope of log(dF/N) against t; non-positive values are skipped.
DecayFit fit_decay(const std::vector<std::pair<double, double>>& series);

/// First (interpolated) depth where F_typ - mean F_1 drops below eps;
/// negative when the profile never crosses.
double saturation_depth(const std::vector<McPoint>& profile, double f_typ, double eps);

}  // namespace faf
