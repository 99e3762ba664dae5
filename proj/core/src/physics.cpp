#include "nsac/physics.hpp"

#include <cmath>

#include "nsac/errors.hpp"

namespace nsac {
namespace {

void require_positive(double rho) {
  if (!(rho > 0.0)) throw VacuumError(rho);
}

// g(x) = G(rho_bar (1+x)) / (a rho_bar^gamma).
//   gamma != 1: ((1+x)^gamma - 1 - gamma x) / (gamma - 1)
//   gamma == 1: (1+x) ln(1+x) - x
// Both share the series sum_{j>=2} c_j x^j with
// c_j = gamma (gamma-2)(gamma-3)...(gamma-j+1) / j!.
double reduced_potential(double x, double gamma) {
  if (std::abs(x) <= 0.25) {
    double coeff = gamma / 2.0;  // c_2
    double power = x * x;
    double sum = 0.0;
    for (int j = 2; j < 200; ++j) {
      const double term = coeff * power;
      sum += term;
      if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
      coeff *= (gamma - j) / (j + 1.0);
      power *= x;
    }
    return sum;
  }
  if (gamma == 1.0) return (1.0 + x) * std::log1p(x) - x;
  return (std::expm1(gamma * std::log1p(x)) - gamma * x) / (gamma - 1.0);
}

}  // namespace

void PhysParams::validate() const {
  if (!(nu > 0.0)) throw InvalidArgument("phys.nu must be > 0");
  if (!(lambda + 2.0 * nu / 3.0 >= 0.0)) {
    throw InvalidArgument("phys.lambda must satisfy lambda + 2 nu / 3 >= 0");
  }
  if (!(epsilon > 0.0)) throw InvalidArgument("phys.epsilon must be > 0");
  if (!(rho_bar > 0.0)) throw InvalidArgument("phys.rho_bar must be > 0");
  if (!(pressure_a > 0.0)) throw InvalidArgument("phys.pressure_a must be > 0");
  if (!(pressure_gamma >= 1.0)) throw InvalidArgument("phys.pressure_gamma must be >= 1");
}

double pressure(double rho, const PhysParams& params) {
  require_positive(rho);
  return params.pressure_a * std::pow(rho, params.pressure_gamma);
}

double pressure_prime(double rho, const PhysParams& params) {
  require_positive(rho);
  return params.pressure_a * params.pressure_gamma * std::pow(rho, params.pressure_gamma - 1.0);
}

double sound_speed(const PhysParams& params) {
  return std::sqrt(pressure_prime(params.rho_bar, params));
}

double g_potential(double rho, const PhysParams& params) {
  require_positive(rho);
  const double x = (rho - params.rho_bar) / params.rho_bar;
  const double scale = params.pressure_a * std::pow(params.rho_bar, params.pressure_gamma);
  return scale * reduced_potential(x, params.pressure_gamma);
}

double g_potential_prime(double rho, const PhysParams& params) {
  require_positive(rho);
  const double dp = pressure(rho, params) - pressure(params.rho_bar, params);
  return (g_potential(rho, params) + dp) / rho;
}

double h1(double sigma, const PhysParams& params) {
  const double rho = params.rho_bar + sigma;
  require_positive(rho);
  return pressure_prime(params.rho_bar, params) / params.rho_bar -
         pressure_prime(rho, params) / rho;
}

double h2(double sigma, const PhysParams& params) {
  const double rho = params.rho_bar + sigma;
  require_positive(rho);
  return sigma / (params.rho_bar * rho);
}

}  // namespace nsac
