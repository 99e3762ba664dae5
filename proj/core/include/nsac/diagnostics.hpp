#pragma once

#include <string>
#include <vector>

#include "nsac/decay_fit.hpp"
#include "nsac/model.hpp"
#include "nsac/state.hpp"

namespace nsac {

/// Free energy and dissipation of a state (same numbers as total_energy).
EnergyReport energy_ledger(const State& state, const PhysParams& params);

/// Squared norms entering the level-l energy.
struct LevelEnergy {
  int l = 0;
  double sigma_hk = 0.0;   ///< ||grad^l sigma||^2_{H^{3-l}}
  double u_hk = 0.0;       ///< ||grad^l u||^2_{H^{3-l}}
  double phi_grad = 0.0;   ///< ||grad^{l+1} phi||^2_{H^{2-l}}
  double phi_sq = 0.0;     ///< ||phi^2 - 1||^2
  double phi_sq_hk = 0.0;  ///< ||grad^l (phi^2 - 1)||^2_{H^{2-l}}

  /// sigma_hk + u_hk + phi_grad + phi_sq
  double combined() const { return sigma_hk + u_hk + phi_grad + phi_sq; }
};

/// l in {0, 1, 2}; all norms by Parseval.
LevelEnergy level_energy(const State& state, int l);

/// Squared negative-order norms ||Lambda^{-s} .||^2 of the perturbation.
struct NegativeFunctional {
  double s = 0.0;
  double sigma_neg = 0.0;
  double u_neg = 0.0;
  double gradphi_neg = 0.0;
  double phisq_neg = 0.0;
  double total = 0.0;
  /// Means removed before applying Lambda^{-s}.
  double sigma_mean = 0.0;
  std::vector<double> u_mean;
  double phisq_mean = 0.0;
};

/// 0 < s < 3/2. Means of sigma, u and phi^2 - 1 are removed and reported.
NegativeFunctional negative_functional(const State& state, double s);

/// Findings of one invariant check.
struct InvariantReport {
  double mass = 0.0;            ///< int rho
  double mass_drift = 0.0;      ///< |mass - reference| / reference
  RangeViolation phase;         ///< largest |phi| above 1 + phase_tol
  double phi_max = 0.0;         ///< max |phi|
  double phi_excess = 0.0;      ///< max(0, max|phi| - 1)
  RangeViolation density;       ///< first rho outside [rho_bar/2, 2 rho_bar]
  std::string nonfinite;        ///< first non-finite field, empty if none

  bool mass_flag = false;
  bool clean() const { return !mass_flag && !phase.violated && !density.violated && nonfinite.empty(); }
};

/// Tracks mass against the first observed state.
class InvariantMonitor {
 public:
  explicit InvariantMonitor(PhysParams params, double phase_tol = 1e-6, double mass_tol = 1e-12);

  InvariantReport check(const State& state);
  /// Largest drift, |phi| excess and violation counts seen so far.
  double max_mass_drift() const { return max_drift_; }
  double max_phi_excess() const { return max_excess_; }
  bool ever_violated() const { return violated_; }

 private:
  PhysParams params_;
  double phase_tol_;
  double mass_tol_;
  double reference_ = 0.0;
  bool has_reference_ = false;
  double max_drift_ = 0.0;
  double max_excess_ = 0.0;
  bool violated_ = false;
};

/// int rho over the box.
double total_mass(const State& state, const PhysParams& params);

/// Stateless check with the reference mass rho_bar |box|.
InvariantReport invariant_monitor(const State& state, const PhysParams& params,
                                  double phase_tol = 1e-6);

/// Fits the series over window (whole series when t_hi <= t_lo) and tests
/// the exponent against -(l + s). Throws InvalidArgument on degenerate input.
DecayFit decay_suite(const Series& series, int l, double s, double tol, FitWindow window = {});

/// One row of the time-series CSV.
struct DiagnosticsRow {
  double t = 0.0;
  double mass = 0.0;
  double phi_max = 0.0;
  EnergyReport energy;
  double h3_sigma_u = 0.0;  ///< ||(sigma,u)||^2_{H^3}
  double h2_gradphi = 0.0;  ///< ||grad phi||^2_{H^2}
  double l2_phisq = 0.0;    ///< ||phi^2-1||^2
  std::vector<double> eneg; ///< E_{-s} totals in order of the requested s
};

DiagnosticsRow diagnostics_row(const State& state, const PhysParams& params,
                               const std::vector<double>& s_list);

/// Column names matching DiagnosticsRow, with one Eneg_s<s> per entry.
std::vector<std::string> csv_columns(const std::vector<double>& s_list);
/// Values in csv_columns order.
std::vector<double> csv_values(const DiagnosticsRow& row);

}  // namespace nsac
