#include "faf/ed.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

#include "faf/nongauss.hpp"
#include "faf/rng.hpp"

namespace faf {

namespace {

struct TermAction {
  std::uint64_t x = 0, z = 0;
  double coeff = 0;
};

TermAction term_action(double coeff, const PauliOperator& p) {
  if (p.phase_power() != 0)
    throw std::invalid_argument("SpinHamiltonian: terms must be phase-free X/Z products");
  TermAction a;
  const int n = p.n_qubits();
  for (int s = 1; s <= n; ++s) {
    if (p.x_bit(s)) a.x |= std::uint64_t(1) << (n - s);
    if (p.z_bit(s)) a.z |= std::uint64_t(1) << (n - s);
  }
  a.coeff = coeff;
  return a;
}

void matvec(const SpinHamiltonian& h, const Eigen::VectorXd& in, Eigen::VectorXd& out) {
  out.resize(in.size());
  for (int r = 0; r < h.mat.outerSize(); ++r) {
    double acc = 0;
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(h.mat, r); it; ++it)
      acc += it.value() * in(it.col());
    out(r) = acc;
  }
}

void matvec(const SpinHamiltonian& h, const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
  out.resize(in.size());
  for (int r = 0; r < h.mat.outerSize(); ++r) {
    std::complex<double> acc = 0;
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(h.mat, r); it; ++it)
      acc += it.value() * in(it.col());
    out(r) = acc;
  }
}

double ground_faf(const SpinModelSpec& spec, int k) {
  SpinHamiltonian h = build_hamiltonian(spec);
  GroundResult gs = ground_state(h);
  return antiflatness(covariance_matrix(embed_sector(h, gs.vec)), k);
}

}  // namespace

SpinHamiltonian build_hamiltonian(const SpinModelSpec& spec) {
  const int n = spec.n;
  if (n < 2 || n > 24) throw std::invalid_argument("build_hamiltonian: N out of range");
  if (spec.model == SpinModel::impurity && n < 4)
    throw std::invalid_argument("build_hamiltonian: impurity model needs N >= 4");

  SpinHamiltonian h;
  h.spec = spec;
  auto xx = [&](int a, int b) {
    return PauliOperator::single(n, a, 'X') * PauliOperator::single(n, b, 'X');
  };

  for (int m = 1; m <= n; ++m) h.terms.emplace_back(-spec.hz, PauliOperator::single(n, m, 'Z'));
  for (int m = 1; m < n; ++m) h.terms.emplace_back(-1.0, xx(m, m + 1));
  if (spec.bc == Boundary::periodic) h.terms.emplace_back(-1.0, xx(n, 1));

  if (spec.model == SpinModel::impurity) {
    int l0 = spec.impurity_site > 0 ? spec.impurity_site : n / 2;
    if (l0 + 2 > n) throw std::invalid_argument("build_hamiltonian: impurity site out of range");
    // lambda X X = -lambda gamma gamma gamma gamma, matching the Majorana form
    h.terms.emplace_back(spec.lambda, xx(l0, l0 + 2));
  } else if (spec.model == SpinModel::annni) {
    for (int m = 1; m + 2 <= n; ++m) h.terms.emplace_back(-spec.lambda, xx(m, m + 2));
    if (spec.bc == Boundary::periodic) {
      h.terms.emplace_back(-spec.lambda, xx(n - 1, 1));
      h.terms.emplace_back(-spec.lambda, xx(n, 2));
    }
  }

  const std::uint64_t full = std::uint64_t(1) << n;
  h.index_of.assign(full, -1);
  for (std::uint64_t b = 0; b < full; ++b) {
    if ((std::popcount(b) & 1) == 0) {
      h.index_of[b] = static_cast<std::int32_t>(h.basis.size());
      h.basis.push_back(static_cast<std::uint32_t>(b));
    }
  }

  std::vector<TermAction> actions;
  actions.reserve(h.terms.size());
  for (const auto& [c, p] : h.terms) actions.push_back(term_action(c, p));

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(h.basis.size() * actions.size());
  for (std::size_t idx = 0; idx < h.basis.size(); ++idx) {
    const std::uint64_t b = h.basis[idx];
    for (const TermAction& a : actions) {
      double v = (std::popcount(b & a.z) & 1) ? -a.coeff : a.coeff;
      std::int32_t to = h.index_of[b ^ a.x];
      trip.emplace_back(to, static_cast<int>(idx), v);
    }
  }
  h.mat.resize(static_cast<int>(h.basis.size()), static_cast<int>(h.basis.size()));
  h.mat.setFromTriplets(trip.begin(), trip.end());
  return h;
}

StateVector embed_sector(const SpinHamiltonian& h, const Eigen::VectorXcd& v) {
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(Eigen::Index(1) << h.spec.n);
  for (std::size_t i = 0; i < h.basis.size(); ++i) amp(h.basis[i]) = v(Eigen::Index(i));
  return StateVector(h.spec.n, std::move(amp));
}

StateVector embed_sector(const SpinHamiltonian& h, const Eigen::VectorXd& v) {
  return embed_sector(h, Eigen::VectorXcd(v.cast<std::complex<double>>()));
}

GroundResult ground_state(const SpinHamiltonian& h, double tol, int krylov, int max_restarts,
                          std::uint64_t seed) {
  const int dim = h.sector_dim();
  if (dim > (1 << 21)) throw std::length_error("ground_state: sector dimension too large");

  if (dim <= 128) {
    Eigen::MatrixXd dense(h.mat);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    Eigen::VectorXd v = es.eigenvectors().col(0);
    return {es.eigenvalues()(0), v, 0.0, 0};
  }

  auto rng = make_rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = gauss(rng);
  v.normalize();

  const int m_max = std::min(krylov, dim);
  std::vector<Eigen::VectorXd> basis;
  Eigen::VectorXd w, alpha(m_max), beta(m_max);

  for (int restart = 0; restart <= max_restarts; ++restart) {
    basis.clear();
    basis.push_back(v);
    int m = 0;
    for (int j = 0; j < m_max; ++j) {
      matvec(h, basis[j], w);
      alpha(j) = basis[j].dot(w);
      w -= alpha(j) * basis[j];
      if (j > 0) w -= beta(j - 1) * basis[j - 1];
      for (const auto& u : basis) w -= u.dot(w) * u;  // full reorthogonalization
      m = j + 1;
      double nb = w.norm();
      if (nb < 1e-13) break;  // invariant subspace
      beta(j) = nb;
      if (j + 1 < m_max) basis.push_back(w / nb);
    }
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j < m; ++j) {
      t(j, j) = alpha(j);
      if (j + 1 < m) t(j, j + 1) = t(j + 1, j) = beta(j);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(dim);
    for (int j = 0; j < m; ++j) y += es.eigenvectors()(j, 0) * basis[j];
    y.normalize();
    double theta = es.eigenvalues()(0);
    matvec(h, y, w);
    double residual = (w - theta * y).norm();
    if (residual < tol * std::max(1.0, std::abs(theta)))
      return {theta, y, residual, restart};
    v = y;
  }
  throw std::runtime_error("ground_state: Lanczos did not converge");
}

std::vector<EigenRecord> full_spectrum_scan(const SpinHamiltonian& h) {
  if (h.sector_dim() > 4096)
    throw std::length_error("full_spectrum_scan: sector dimension capped at 4096");
  Eigen::MatrixXd dense(h.mat);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
  const PauliOperator parity = parity_operator(h.spec.n);

  std::vector<EigenRecord> out;
  out.reserve(h.sector_dim());
  for (int i = 0; i < h.sector_dim(); ++i) {
    StateVector psi = embed_sector(h, Eigen::VectorXd(es.eigenvectors().col(i)));
    CovarianceMatrix cov = covariance_matrix(psi);
    EigenRecord rec;
    rec.energy = es.eigenvalues()(i);
    rec.f1 = antiflatness(cov, 1);
    rec.f2 = antiflatness(cov, 2);
    rec.s_ent = entanglement_entropy(psi, h.spec.n / 2);
    rec.parity = expectation(psi, parity).real();
    out.push_back(rec);
  }
  return out;
}

double binder_cumulant(const StateVector& psi) {
  const int n = psi.n_qubits();
  const std::uint64_t dim = psi.dim();
  auto apply_mx = [&](const Eigen::VectorXcd& in) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(in.size());
    for (int s = 0; s < n; ++s) {
      const std::uint64_t mask = std::uint64_t(1) << (n - 1 - s);
      for (std::uint64_t b = 0; b < dim; ++b)
        out(Eigen::Index(b ^ mask)) += in(Eigen::Index(b));
    }
    return out;
  };
  Eigen::VectorXcd v1 = apply_mx(psi.amplitudes());
  Eigen::VectorXcd v2 = apply_mx(v1);
  double m2 = v1.squaredNorm();
  double m4 = v2.squaredNorm();
  return 1.0 - m4 / (3.0 * m2 * m2);
}

DkFk dk_fk_from_values(double f_n1, double f_n2, int n1, int n2) {
  if (n1 == n2) throw std::invalid_argument("dk_fk: sizes must differ");
  double d = (f_n2 - f_n1) / (n2 - n1);
  return {d, f_n1 - d * n1};
}

DkFk dk_fk_extract(const SpinModelSpec& base, int k, int n1, int n2) {
  if (n2 <= n1 || 8 * (n2 - n1) > n1)
    throw std::invalid_argument("dk_fk_extract: need n1 < n2 with N2-N1 <= N1/8");
  SpinModelSpec s1 = base, s2 = base;
  s1.n = n1;
  s2.n = n2;
  return dk_fk_from_values(ground_faf(s1, k), ground_faf(s2, k), n1, n2);
}

double faf_derivative(const SpinModelSpec& base, int k, double dh) {
  SpinModelSpec lo = base, hi = base;
  lo.hz -= dh;
  hi.hz += dh;
  return (ground_faf(hi, k) - ground_faf(lo, k)) / (2 * dh);
}

SpectralBounds estimate_bounds(const SpinHamiltonian& h, std::uint64_t seed) {
  const int dim = h.sector_dim();
  if (dim <= 128) {
    Eigen::MatrixXd dense(h.mat);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    double lo = es.eigenvalues()(0), hi = es.eigenvalues()(dim - 1);
    double pad = 0.01 * std::max(hi - lo, 1e-12);
    return {lo - pad, hi + pad};
  }
  auto rng = make_rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd v(dim), prev = Eigen::VectorXd::Zero(dim), w;
  for (int i = 0; i < dim; ++i) v(i) = gauss(rng);
  v.normalize();
  const int m = std::min(80, dim);
  Eigen::VectorXd alpha(m), beta(m);
  int steps = 0;
  for (int j = 0; j < m; ++j) {
    matvec(h, v, w);
    alpha(j) = v.dot(w);
    w -= alpha(j) * v;
    if (j > 0) w -= beta(j - 1) * prev;
    steps = j + 1;
    double nb = w.norm();
    if (nb < 1e-12) break;
    beta(j) = nb;
    prev = v;
    v = w / nb;
  }
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(steps, steps);
  for (int j = 0; j < steps; ++j) {
    t(j, j) = alpha(j);
    if (j + 1 < steps) t(j, j + 1) = t(j + 1, j) = beta(j);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  double lo = es.eigenvalues()(0), hi = es.eigenvalues()(steps - 1);
  double pad = 0.01 * std::max(hi - lo, 1e-12);  // 1% safety margin
  return {lo - pad, hi + pad};
}

Eigen::VectorXcd chebyshev_evolve(const SpinHamiltonian& h, Eigen::VectorXcd psi, double t,
                                  double tol, const SpectralBounds* bounds) {
  if (t < 0) throw std::invalid_argument("chebyshev_evolve: t must be >= 0");
  if (t == 0) return psi;
  SpectralBounds local{};
  if (!bounds) {
    local = estimate_bounds(h);
    bounds = &local;
  }
  const double a = 0.5 * (bounds->emax - bounds->emin);
  const double b = 0.5 * (bounds->emax + bounds->emin);
  if (a <= 0) return std::exp(std::complex<double>(0, -b * t)) * psi;

  const double step_x = 50.0;
  const int nsteps = static_cast<int>(std::ceil(a * t / step_x));
  const double dt = t / nsteps;
  const double x = a * dt;
  const double term_tol = tol / (8.0 * nsteps);

  // c_0 = J_0(x), c_k = 2 (-i)^k J_k(x)
  std::vector<std::complex<double>> coeff;
  coeff.push_back(std::cyl_bessel_j(0, x));
  const std::complex<double> mi(0, -1);
  std::complex<double> ipw = mi;
  int quiet = 0;
  for (int k = 1;; ++k) {
    double jk = std::cyl_bessel_j(static_cast<unsigned>(k), x);
    coeff.push_back(2.0 * ipw * jk);
    ipw *= mi;
    if (k > x) quiet = (std::abs(jk) < term_tol) ? quiet + 1 : 0;
    if (quiet >= 4) break;
    if (k > x + 400)
      throw std::runtime_error("chebyshev_evolve: expansion did not truncate; reduce the step");
  }

  const std::complex<double> step_phase = std::exp(std::complex<double>(0, -b * dt));
  Eigen::VectorXcd t0, t1, t2, acc, hv;
  auto apply_scaled = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
    matvec(h, in, out);
    out = (out - b * in) / a;
  };
  for (int s = 0; s < nsteps; ++s) {
    t0 = psi;
    apply_scaled(t0, t1);
    acc = coeff[0] * t0 + coeff[1] * t1;
    for (std::size_t k = 2; k < coeff.size(); ++k) {
      apply_scaled(t1, hv);
      t2 = 2.0 * hv - t0;
      acc += coeff[k] * t2;
      t0.swap(t1);
      t1.swap(t2);
    }
    psi = step_phase * acc;
  }
  double norm = psi.norm();
  if (std::abs(norm - 1.0) > std::max(tol * nsteps * 100, 1e-7))
    throw std::runtime_error("chebyshev_evolve: norm drifted beyond tolerance");
  psi /= norm;
  return psi;
}

double sector_energy(const SpinHamiltonian& h, const Eigen::VectorXcd& v) {
  Eigen::VectorXcd w;
  matvec(h, v, w);
  return v.dot(w).real();
}

static FafSeries dynamics_faf_impl(const SpinHamiltonian& h, const DynamicsConfig& cfg,
                                   std::uint64_t seed) {
  auto rng = make_rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, h.basis.size() - 1);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(h.sector_dim());
  psi(static_cast<Eigen::Index>(pick(rng))) = 1.0;

  SpectralBounds bounds = estimate_bounds(h);
  const double e0 = sector_energy(h, psi);

  FafSeries out;
  double now = 0;
  auto record = [&](double t_target, bool keep) {
    if (t_target > now) {
      psi = chebyshev_evolve(h, std::move(psi), t_target - now, cfg.tol, &bounds);
      now = t_target;
    }
    if (keep) {
      out.t.push_back(now);
      out.f.push_back(antiflatness(covariance_matrix(embed_sector(h, psi)), cfg.k));
      out.energy_drift = std::max(out.energy_drift, std::abs(sector_energy(h, psi) - e0));
    }
  };
  for (double t : cfg.grid) record(t, true);

  double acc = 0;
  for (int i = 0; i < cfg.window_samples; ++i) {
    double t = cfg.window_lo + (cfg.window_hi - cfg.window_lo) * i /
                                   std::max(1, cfg.window_samples - 1);
    record(t, false);
    acc += antiflatness(covariance_matrix(embed_sector(h, psi)), cfg.k);
  }
  out.f_inf = acc / cfg.window_samples;
  return out;
}

FafSeries dynamics_faf(const SpinModelSpec& spec, const DynamicsConfig& cfg, std::uint64_t seed) {
  if (spec.n > 16) throw std::length_error("dynamics_faf: N capped at 16");
  SpinHamiltonian h = build_hamiltonian(spec);
  return dynamics_faf_impl(h, cfg, seed);
}

SaturationResult saturation_analysis(const FafSeries& series, double eps, double fit_t_lo,
                                     double fit_t_hi) {
  SaturationResult res;
  // first crossing of dF below eps, interpolated on the log scale
  double prev_gap = 0, prev_t = 0;
  for (std::size_t i = 0; i < series.t.size(); ++i) {
    double gap = series.f_inf - series.f[i];
    if (gap <= eps) {
      if (i == 0 || prev_gap <= eps) {
        res.t_sat = series.t[i];
      } else {
        double a = std::log(prev_gap), b2 = std::log(std::max(gap, 1e-300));
        double frac = (a - std::log(eps)) / (a - b2);
        res.t_sat = prev_t + frac * (series.t[i] - prev_t);
      }
      res.censored = false;
      break;
    }
    prev_gap = gap;
    prev_t = series.t[i];
  }

  // log-log decay fit of dF(t); default window dF/F_inf in [0.004, 0.4]
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < series.t.size(); ++i) {
    double gap = series.f_inf - series.f[i];
    if (series.t[i] <= 0 || gap <= 0) continue;
    if (fit_t_lo > 0 || fit_t_hi > 0) {
      if (series.t[i] < fit_t_lo || series.t[i] > fit_t_hi) continue;
    } else {
      double rel = gap / std::max(series.f_inf, 1e-12);
      if (rel > 0.4 || rel < 0.004) continue;
    }
    pts.emplace_back(std::log(series.t[i]), std::log(gap));
  }
  if (pts.size() >= 3) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [px, py] : pts) {
      sx += px;
      sy += py;
      sxx += px * px;
      sxy += px * py;
    }
    double m = static_cast<double>(pts.size());
    double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    double inter = (sy - slope * sx) / m;
    double rss = 0;
    for (auto& [px, py] : pts) {
      double e = py - (slope * px + inter);
      rss += e * e;
    }
    res.gamma = -slope;
    res.fit_rms = std::sqrt(rss / m);
    res.fit_points = static_cast<int>(pts.size());
  }
  return res;
}

}  // namespace faf
