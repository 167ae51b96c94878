#include "faf/circuit_mc.hpp"

#include <cmath>
#include <stdexcept>

#include "faf/clifford2.hpp"
#include "faf/rng.hpp"

namespace faf {

namespace {

struct Accumulator {
  double sum = 0, sum_sq = 0;
  long count = 0;

  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++count;
  }
  double mean() const { return sum / count; }
  double se() const {
    if (count < 2) return 0;
    double var = (sum_sq - sum * sum / count) / (count - 1);
    return std::sqrt(std::max(var, 0.0) / count);
  }
};

}  // namespace

void apply_brickwall_layer(StabilizerTableau& tab, int layer, bool z2, std::mt19937_64& rng) {
  const auto& group = Clifford2Group::instance();
  const int n = tab.n_qubits();
  const int first = (layer % 2 == 1) ? 1 : 2;
  for (int q = first; q + 1 <= n; q += 2) tab.apply_clifford(group.sample(rng, z2), q, q + 1);
}

void apply_staircase(StabilizerTableau& tab, int r, int block_layers, bool z2,
                     std::mt19937_64& rng) {
  const auto& group = Clifford2Group::instance();
  const int n = tab.n_qubits();
  if (r < 1 || r >= n) throw std::invalid_argument("apply_staircase: need 1 <= r < N");
  int layers = block_layers > 0 ? block_layers : std::max(2 * r, 2);
  if (layers < 2 * r)
    throw std::invalid_argument("apply_staircase: blocks need at least 2r layers");
  for (int j = 1; j + r <= n; ++j) {
    for (int l = 1; l <= layers; ++l) {
      const int first = (l % 2 == 1) ? j : j + 1;
      for (int q = first; q + 1 <= j + r; q += 2)
        tab.apply_clifford(group.sample(rng, z2), q, q + 1);
    }
  }
}

McResult mc_faf1(int n_qubits, const CircuitBuilder& builder, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("mc_faf1: samples must be >= 1");
  Accumulator acc;
  for (int s = 0; s < samples; ++s) {
    auto rng = make_rng(seed, static_cast<std::uint64_t>(s));
    StabilizerTableau tab(n_qubits);
    if (builder.kind == CircuitBuilder::Kind::brickwall) {
      for (int t = 1; t <= builder.depth; ++t) apply_brickwall_layer(tab, t, builder.z2, rng);
    } else {
      apply_staircase(tab, builder.rank, builder.block_layers, builder.z2, rng);
    }
    acc.add(tab.faf1());
  }
  return {acc.mean(), acc.se(), acc.count};
}

std::vector<McPoint> mc_faf1_profile(int n_qubits, int depth, bool z2, int samples,
                                     std::uint64_t seed) {
  std::vector<Accumulator> acc(depth + 1);
  for (int s = 0; s < samples; ++s) {
    auto rng = make_rng(seed, static_cast<std::uint64_t>(s));
    StabilizerTableau tab(n_qubits);
    acc[0].add(tab.faf1());
    for (int t = 1; t <= depth; ++t) {
      apply_brickwall_layer(tab, t, z2, rng);
      acc[t].add(tab.faf1());
    }
  }
  std::vector<McPoint> out(depth + 1);
  for (int t = 0; t <= depth; ++t) out[t] = {t, acc[t].mean(), acc[t].se(), acc[t].count};
  return out;
}

McResult rmps_faf1(int n_qubits, int r, int samples, std::uint64_t seed, bool z2,
                   int block_layers) {
  CircuitBuilder b;
  b.kind = CircuitBuilder::Kind::staircase;
  b.rank = r;
  b.block_layers = block_layers;
  b.z2 = z2;
  return mc_faf1(n_qubits, b, samples, seed);
}

DecayFit fit_decay(const std::vector<std::pair<double, double>>& series) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [t, v] : series)
    if (v > 0) pts.emplace_back(t, std::log(v));
  if (pts.size() < 2) throw std::invalid_argument("fit_decay: need >= 2 positive points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(pts.size());
  double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  double intercept = (sy - slope * sx) / m;
  double rss = 0;
  for (const auto& [x, y] : pts) {
    double e = y - (slope * x + intercept);
    rss += e * e;
  }
  return {-slope, intercept, std::sqrt(rss / m), static_cast<int>(pts.size())};
}

double saturation_depth(const std::vector<McPoint>& profile, double f_typ, double eps) {
  double prev_gap = 0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    double gap = f_typ - profile[i].mean;
    if (gap <= eps) {
      if (i == 0 || prev_gap <= eps) return profile[i].t;
      // interpolate the crossing on the log scale
      double a = std::log(prev_gap), b = std::log(std::max(gap, 1e-300));
      double frac = (a - std::log(eps)) / (a - b);
      return profile[i - 1].t + frac * (profile[i].t - profile[i - 1].t);
    }
    prev_gap = gap;
  }
  return -1.0;
}

}  // namespace faf
