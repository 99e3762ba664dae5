#pragma once

namespace nsac {

/// Physical constants of the barotropic two-phase model.
struct PhysParams {
  double nu = 1.0;              ///< shear viscosity
  double lambda = 0.0;          ///< second viscosity
  double epsilon = 1.0;         ///< interface thickness
  double rho_bar = 1.0;         ///< far-field density
  double pressure_a = 1.0;      ///< p(rho) = a rho^gamma
  double pressure_gamma = 1.4;

  /// Throws InvalidArgument unless nu > 0, lambda + 2nu/3 >= 0, epsilon > 0,
  /// rho_bar > 0, a > 0 and gamma >= 1.
  void validate() const;

  friend bool operator==(const PhysParams&, const PhysParams&) = default;
};

/// p(rho) = a rho^gamma. Throws VacuumError for rho <= 0.
double pressure(double rho, const PhysParams& params);
/// p'(rho) = a gamma rho^(gamma-1). Throws VacuumError for rho <= 0.
double pressure_prime(double rho, const PhysParams& params);
/// Sound speed at the far-field density, sqrt(p'(rho_bar)).
double sound_speed(const PhysParams& params);

/// Compression potential G(rho) = rho * int_{rho_bar}^{rho} (p(z) - p(rho_bar)) / z^2 dz.
///
/// Evaluated in closed form; near rho_bar a power series in (rho - rho_bar)
/// avoids the cancellation of the closed form. Throws VacuumError for rho <= 0.
double g_potential(double rho, const PhysParams& params);

/// G'(rho) = (G(rho) + p(rho) - p(rho_bar)) / rho.
double g_potential_prime(double rho, const PhysParams& params);

/// h1(sigma) = p'(rho_bar)/rho_bar - p'(rho)/rho.
double h1(double sigma, const PhysParams& params);
/// h2(sigma) = 1/rho_bar - 1/rho.
double h2(double sigma, const PhysParams& params);

}  // namespace nsac
