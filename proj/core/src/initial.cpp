#include "nsac/initial.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nsac/errors.hpp"
#include "nsac/norms.hpp"
#include "nsac/spectral_field.hpp"

namespace nsac {
namespace {

/// Uniform on [-1, 1) from the top 53 bits; independent of the library's
/// distribution implementations.
double uniform_pm1(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-52 - 1.0;
}

double h_norm_sq(const RealField& f, const Grid& g, int lo, int hi) {
  const auto fh = SpectralField::from_physical(g, f);
  double acc = 0.0;
  for (int j = lo; j <= hi; ++j) {
    const double n = sobolev_norm(fh, j);
    acc += n * n;
  }
  return acc;
}

void check_feasible(const State& s, const PhysParams& p) {
  const auto rho = density_window_violation(s, p);
  if (rho.violated) {
    throw ConfigError("infeasible initial data: density " + std::to_string(p.rho_bar + rho.value) +
                      " outside [rho_bar/2, 2 rho_bar]; reduce ic.delta");
  }
  const auto ph = phase_bound_violation(s, 0.0);
  if (ph.violated) {
    throw ConfigError("infeasible initial data: |phi| = " + std::to_string(std::abs(ph.value)) +
                      " > 1; reduce ic.delta");
  }
}

State random_perturbation(const RunConfig& cfg) {
  const Grid& g = cfg.grid;
  std::uint64_t rng = cfg.ic.seed;
  const RealField sig = random_band_limited(g, cfg.ic.max_mode, rng);
  std::vector<RealField> vel;
  for (int d = 0; d < g.dim; ++d) vel.push_back(random_band_limited(g, cfg.ic.max_mode, rng));
  const RealField psi = random_band_limited(g, cfg.ic.max_mode, rng);
  const double top = *std::max_element(psi.begin(), psi.end());
  RealField w(psi.size());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = top - psi[j];  // >= 0, zero at the max
  const double wmax = *std::max_element(w.begin(), w.end());
  const double phase = cfg.ic.phase;

  // Linear parts of the size measure, per unit amplitude.
  double lin_su = h_norm_sq(sig, g, 0, 3);
  for (const auto& v : vel) lin_su += h_norm_sq(v, g, 0, 3);
  const double lin_su_norm = std::sqrt(lin_su);
  const double lin_grad = std::sqrt(h_norm_sq(w, g, 1, 3));

  auto build = [&](double a) {
    State s = State::equilibrium(g, phase);
    for (std::size_t j = 0; j < s.sigma.size(); ++j) {
      s.sigma[j] = a * sig[j];
      for (int d = 0; d < g.dim; ++d) s.u[d][j] = a * vel[d][j];
      s.phi[j] = phase * (1.0 - a * w[j]);
    }
    return s;
  };
  auto size = [&](double a) {
    double sq = 0.0;
    const double dv = g.cell_volume();
    for (double wj : w) {
      const double v = a * wj * (2.0 - a * wj);  // |phi^2 - 1|
      sq += v * v;
    }
    return a * (lin_su_norm + lin_grad) + std::sqrt(sq * dv);
  };

  // The size grows monotonically while a w <= 1; beyond that phi turns back.
  const double a_max = 1.0 / wmax;
  if (size(a_max) < cfg.ic.delta) {
    throw ConfigError("infeasible initial data: ic.delta exceeds the largest admissible size " +
                      std::to_string(size(a_max)));
  }
  double lo = 0.0, hi = a_max;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (size(mid) < cfg.ic.delta ? lo : hi) = mid;
  }
  const double a = std::abs(size(lo) - cfg.ic.delta) <= std::abs(size(hi) - cfg.ic.delta) ? lo : hi;
  State s = build(a);
  check_feasible(s, cfg.phys);
  return s;
}

State tanh_interface(const RunConfig& cfg) {
  const Grid& g = cfg.grid;
  State s = State::equilibrium(g, 1.0);
  const double L = g.length;
  const double w = cfg.ic.width;
  for (std::size_t j = 0; j < s.phi.size(); ++j) {
    const double x = g.coordinate(g.point_index(j)[0]);
    s.phi[j] = cfg.ic.phase * (std::tanh((x - 0.25 * L) / w) - std::tanh((x - 0.75 * L) / w) - 1.0);
  }
  return s;
}

State manufactured(const RunConfig& cfg) {
  const Grid& g = cfg.grid;
  const double kap = g.wavenumber_unit();
  const double d = cfg.ic.delta;
  State s = State::equilibrium(g, cfg.ic.phase);
  for (std::size_t j = 0; j < s.phi.size(); ++j) {
    const auto idx = g.point_index(j);
    double x[3] = {0.0, 0.0, 0.0};
    double sum = 0.0;
    for (int a = 0; a < g.dim; ++a) {
      x[a] = g.coordinate(idx[a]);
      sum += x[a];
    }
    s.sigma[j] = d * std::cos(kap * x[0]);
    for (int a = 0; a < g.dim; ++a) s.u[a][j] = d * std::sin(kap * x[(a + 1) % g.dim]);
    s.phi[j] = cfg.ic.phase * (1.0 - 0.5 * d * (1.0 - std::cos(kap * sum)));
  }
  check_feasible(s, cfg.phys);
  return s;
}

}  // namespace

double perturbation_size(const State& state) {
  const Grid& g = state.grid;
  double su = h_norm_sq(state.sigma, g, 0, 3);
  for (const auto& v : state.u) su += h_norm_sq(v, g, 0, 3);
  const double grad = h_norm_sq(state.phi, g, 1, 3);
  double sq = 0.0;
  for (double p : state.phi) {
    const double v = p * p - 1.0;
    sq += v * v;
  }
  return std::sqrt(su) + std::sqrt(grad) + std::sqrt(sq * g.cell_volume());
}

RealField random_band_limited(const Grid& grid, int max_mode, std::uint64_t& rng_state) {
  grid.validate();
  if (max_mode < 1 || 2 * max_mode >= grid.n) {
    throw InvalidArgument("random_band_limited: max_mode must lie in [1, n/2)");
  }
  std::mt19937_64 gen(rng_state);
  std::vector<Complex> c(grid.spectral_size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto m = grid.mode_index(i);
    bool inside = true;
    for (int a = 0; a < grid.dim; ++a) inside = inside && std::abs(m[a]) <= max_mode;
    // Draw for every mode so the stream does not depend on max_mode layout.
    const double re = uniform_pm1(gen);
    const double im = uniform_pm1(gen);
    if (inside && i != 0) c[i] = Complex(re, im);
  }
  rng_state = gen();
  const auto basis = FourierBasis::for_grid(grid);
  RealField out(grid.size());
  basis->inverse(c, out);
  // Re-project: the c2r transform symmetrizes the stored half, leaving a
  // real band-limited field; normalize to unit rms.
  double mean = 0.0;
  for (double v : out) mean += v;
  mean /= static_cast<double>(out.size());
  double rms = 0.0;
  for (double& v : out) {
    v -= mean;
    rms += v * v;
  }
  rms = std::sqrt(rms / static_cast<double>(out.size()));
  if (rms > 0.0) {
    for (double& v : out) v /= rms;
  }
  return out;
}

State make_initial(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.ic.kind == "equilibrium") return State::equilibrium(cfg.grid, cfg.ic.phase);
  if (cfg.ic.kind == "random_perturbation") return random_perturbation(cfg);
  if (cfg.ic.kind == "tanh_interface") return tanh_interface(cfg);
  return manufactured(cfg);
}

}  // namespace nsac
