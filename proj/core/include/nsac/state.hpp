#pragma once

#include <vector>

#include "nsac/grid.hpp"
#include "nsac/physics.hpp"

namespace nsac {

using RealField = std::vector<double>;

/// Density perturbation, velocity components and phase on the collocation grid.
struct Fields {
  RealField sigma;
  std::vector<RealField> u;
  RealField phi;

  static Fields zeros(const Grid& grid);
  Fields& operator+=(const Fields& other);
  Fields& operator*=(double s);
};

/// Solution snapshot (sigma = rho - rho_bar, u, phi) at time t.
struct State {
  Grid grid;
  double t = 0.0;
  RealField sigma;
  std::vector<RealField> u;
  RealField phi;

  /// (sigma, u, phi) = (0, 0, phase) with phase = +1 or -1.
  static State equilibrium(const Grid& grid, double phase = 1.0);

  Fields fields() const { return {sigma, u, phi}; }
  /// Throws InvalidArgument if array sizes do not match the grid.
  void check_shape() const;
};

/// Result of a pointwise range check: offending flat index and value.
struct RangeViolation {
  bool violated = false;
  std::size_t index = 0;
  double value = 0.0;
};

/// First rho outside [rho_bar/2, 2 rho_bar].
RangeViolation density_window_violation(const State& state, const PhysParams& params);
/// Largest |phi| above 1 + tol.
RangeViolation phase_bound_violation(const State& state, double tol);
/// Name of the first field holding NaN/Inf, or empty.
const char* first_nonfinite_field(const State& state);

}  // namespace nsac
