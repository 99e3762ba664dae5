#include "nsac/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "nsac/errors.hpp"
#include "nsac/norms.hpp"
#include "nsac/output.hpp"

namespace nsac {
namespace {

/// sum_{j=lo..hi} ||grad^j f||^2
double level_sum(const SpectralField& f, int lo, int hi) {
  const FourierBasis& b = f.basis();
  const double p = weighted_power(f, [&](std::size_t i) {
    const double k2 = b.k2(i);
    double w = 0.0;
    double kp = std::pow(k2, lo);
    for (int j = lo; j <= hi; ++j) {
      w += kp;
      kp *= k2;
    }
    return w;
  });
  return f.grid().volume() * p;
}

RealField phi_sq_minus_one(const State& state) {
  RealField w(state.phi.size());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = (state.phi[j] - 1.0) * (state.phi[j] + 1.0);
  return w;
}

SpectralField without_mean(const SpectralField& f, double& mean) {
  std::vector<Complex> c(f.coeffs().begin(), f.coeffs().end());
  mean = c.empty() ? 0.0 : c[0].real();
  if (!c.empty()) c[0] = 0.0;
  return SpectralField(f.grid(), std::move(c));
}

double neg_sq(const SpectralField& f, double s) {
  const double n = negative_norm(f, s);
  return n * n;
}

}  // namespace

EnergyReport energy_ledger(const State& state, const PhysParams& params) {
  return total_energy(state, params);
}

LevelEnergy level_energy(const State& state, int l) {
  if (l < 0 || l > 2) throw InvalidArgument("level_energy: l must be 0, 1 or 2");
  state.check_shape();
  const Grid& g = state.grid;
  LevelEnergy e;
  e.l = l;
  e.sigma_hk = level_sum(SpectralField::from_physical(g, state.sigma), l, 3);
  for (const auto& c : state.u) e.u_hk += level_sum(SpectralField::from_physical(g, c), l, 3);
  e.phi_grad = level_sum(SpectralField::from_physical(g, state.phi), l + 1, 3);
  const auto w = SpectralField::from_physical(g, phi_sq_minus_one(state));
  e.phi_sq = level_sum(w, 0, 0);
  e.phi_sq_hk = level_sum(w, l, 2);
  return e;
}

NegativeFunctional negative_functional(const State& state, double s) {
  if (!(s > 0.0 && s < 1.5)) {
    throw InvalidArgument("negative_functional: s must lie in (0, 3/2)");
  }
  state.check_shape();
  const Grid& g = state.grid;
  NegativeFunctional r;
  r.s = s;
  r.sigma_neg = neg_sq(without_mean(SpectralField::from_physical(g, state.sigma), r.sigma_mean), s);
  for (const auto& c : state.u) {
    double m = 0.0;
    r.u_neg += neg_sq(without_mean(SpectralField::from_physical(g, c), m), s);
    r.u_mean.push_back(m);
  }
  double unused = 0.0;
  for (const auto& d : gradient(SpectralField::from_physical(g, state.phi))) {
    r.gradphi_neg += neg_sq(without_mean(d, unused), s);
  }
  r.phisq_neg =
      neg_sq(without_mean(SpectralField::from_physical(g, phi_sq_minus_one(state)), r.phisq_mean), s);
  r.total = r.sigma_neg + r.u_neg + r.gradphi_neg + r.phisq_neg;
  return r;
}

double total_mass(const State& state, const PhysParams& params) {
  double acc = 0.0;
  for (double v : state.sigma) acc += v;
  return params.rho_bar * state.grid.volume() + acc * state.grid.cell_volume();
}

namespace {

InvariantReport base_report(const State& state, const PhysParams& params, double phase_tol) {
  InvariantReport r;
  const char* bad = first_nonfinite_field(state);
  if (bad != nullptr && bad[0] != '\0') r.nonfinite = bad;
  r.mass = total_mass(state, params);
  for (double p : state.phi) r.phi_max = std::max(r.phi_max, std::abs(p));
  r.phi_excess = std::max(0.0, r.phi_max - 1.0);
  r.phase = phase_bound_violation(state, phase_tol);
  r.density = density_window_violation(state, params);
  return r;
}

}  // namespace

InvariantMonitor::InvariantMonitor(PhysParams params, double phase_tol, double mass_tol)
    : params_(params), phase_tol_(phase_tol), mass_tol_(mass_tol) {}

InvariantReport InvariantMonitor::check(const State& state) {
  InvariantReport r = base_report(state, params_, phase_tol_);
  if (!has_reference_) {
    reference_ = r.mass;
    has_reference_ = true;
  }
  r.mass_drift = std::abs(r.mass - reference_) / std::abs(reference_);
  r.mass_flag = !(r.mass_drift <= mass_tol_);
  max_drift_ = std::max(max_drift_, r.mass_drift);
  max_excess_ = std::max(max_excess_, r.phi_excess);
  violated_ = violated_ || !r.clean();
  return r;
}

InvariantReport invariant_monitor(const State& state, const PhysParams& params, double phase_tol) {
  InvariantReport r = base_report(state, params, phase_tol);
  const double ref = params.rho_bar * state.grid.volume();
  r.mass_drift = std::abs(r.mass - ref) / ref;
  r.mass_flag = !(r.mass_drift <= 1e-12);
  return r;
}

DecayFit decay_suite(const Series& series, int l, double s, double tol, FitWindow window) {
  if (series.empty()) throw InvalidArgument("decay_suite: empty series");
  if (!(window.t_hi > window.t_lo)) {
    window.t_lo = series.front().first;
    window.t_hi = series.back().first;
    for (const auto& [t, v] : series) {
      window.t_lo = std::min(window.t_lo, t);
      window.t_hi = std::max(window.t_hi, t);
    }
  }
  DecayFit fit = fit_exponent(series, window);
  fit.target = -(l + s);
  fit.pass = std::abs(fit.exponent - fit.target) <= tol;
  return fit;
}

DiagnosticsRow diagnostics_row(const State& state, const PhysParams& params,
                               const std::vector<double>& s_list) {
  DiagnosticsRow row;
  row.t = state.t;
  row.mass = total_mass(state, params);
  for (double p : state.phi) row.phi_max = std::max(row.phi_max, std::abs(p));
  row.energy = energy_ledger(state, params);
  const LevelEnergy e0 = level_energy(state, 0);
  row.h3_sigma_u = e0.sigma_hk + e0.u_hk;
  row.h2_gradphi = e0.phi_grad;
  row.l2_phisq = e0.phi_sq;
  for (double s : s_list) row.eneg.push_back(negative_functional(state, s).total);
  return row;
}

std::vector<std::string> csv_columns(const std::vector<double>& s_list) {
  std::vector<std::string> cols = {"t",      "mass",   "phi_max", "E_total",    "E_kin",
                                   "E_G",    "E_grad", "E_dw",    "D_visc",     "D_div",
                                   "D_mu",   "H3_sigma_u",        "H2_gradphi", "L2_phisq"};
  for (double s : s_list) cols.push_back("Eneg_s" + shortest(s));
  return cols;
}

std::vector<double> csv_values(const DiagnosticsRow& row) {
  const EnergyReport& e = row.energy;
  std::vector<double> v = {row.t,       row.mass,        row.phi_max,      e.total,
                           e.kinetic,   e.g_part,        e.gradient_part,  e.double_well,
                           e.diss_visc, e.diss_div,      e.diss_mu,        row.h3_sigma_u,
                           row.h2_gradphi, row.l2_phisq};
  v.insert(v.end(), row.eneg.begin(), row.eneg.end());
  return v;
}

}  // namespace nsac
