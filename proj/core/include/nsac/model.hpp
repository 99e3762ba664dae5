#pragma once

#include <memory>
#include <vector>

#include "nsac/physics.hpp"
#include "nsac/spectral_field.hpp"
#include "nsac/state.hpp"

namespace nsac {

/// Switches of the right-hand-side evaluation.
struct ModelOptions {
  /// Two-thirds-rule truncation of every explicit (product) term.
  bool dealias = true;
  /// Move the linearized reaction -2/(eps rho_bar) (phi - phase_eq) into the
  /// stiff part; the explicit part carries the remainder.
  bool implicit_reaction = true;
  /// Far-field phase (+1 or -1) the perturbation is taken around.
  double phase_eq = 1.0;
};

/// Time derivative of (sigma, u, phi) split into the constant-coefficient
/// linear part (stiff) and everything else (explicit).
struct Tendency {
  Fields stiff;
  Fields explicit_part;
  Fields total() const;
};

/// Free energy components and dissipation rates of a state.
struct EnergyReport {
  double kinetic = 0.0;        ///< int 1/2 rho |u|^2
  double g_part = 0.0;         ///< int G(rho)
  double gradient_part = 0.0;  ///< int eps/2 |grad phi|^2
  double double_well = 0.0;    ///< int rho/(4 eps) (phi^2 - 1)^2
  double total = 0.0;
  double diss_visc = 0.0;  ///< nu ||grad u||^2
  double diss_div = 0.0;   ///< (nu + lambda) ||div u||^2
  double diss_mu = 0.0;    ///< ||mu||^2

  double dissipation() const { return diss_visc + diss_div + diss_mu; }
};

/// Fourier coefficients of a state; psi = phi - phase_eq so that the
/// equilibrium is the zero vector.
struct ModalState {
  std::shared_ptr<const FourierBasis> basis;
  double t = 0.0;
  std::vector<Complex> sigma;
  std::vector<std::vector<Complex>> u;
  std::vector<Complex> psi;

  static ModalState from_state(const State& state, double phase_eq);
  static ModalState zeros(const Grid& grid);
  State to_state(double phase_eq) const;
  const Grid& grid() const { return basis->grid(); }

  /// this += s * other
  void axpy(double s, const ModalState& other);
  void scale(double s);
};

/// The stiff operator L: acoustic coupling, viscous Laplacian and grad-div,
/// phase diffusion eps/rho_bar^2 Delta and (optionally) the linearized
/// reaction. Diagonal per wavevector up to a 2x2 longitudinal block.
class LinearOperator {
 public:
  LinearOperator(PhysParams params, ModelOptions opts);

  ModalState apply(const ModalState& x) const;
  /// Solves (I - a L) x = b in place; exact per mode.
  void solve(ModalState& b, double a) const;
  /// Decay rate of the phase perturbation mode with |xi|^2 = k2.
  double phase_rate(double k2) const;

 private:
  PhysParams params_;
  ModelOptions opts_;
};

/// Explicit (nonlinear and variable-coefficient) terms evaluated
/// pseudo-spectrally. Holds scratch buffers; one instance per thread.
class ExplicitTerms {
 public:
  ExplicitTerms(const Grid& grid, PhysParams params, ModelOptions opts);

  /// Fills `out` with the explicit tendency of x. Throws VacuumError or
  /// NonFiniteError when the physical fields are inadmissible.
  void evaluate(const ModalState& x, ModalState& out);

 private:
  std::shared_ptr<const FourierBasis> basis_;
  PhysParams params_;
  ModelOptions opts_;
  std::vector<Complex> spec_;
  std::vector<std::vector<double>> buf_;
};

/// mu = (phi^3 - phi)/eps - (eps/rho) Delta phi.
RealField chemical_potential(const State& state, const PhysParams& params);

/// -eps div(grad phi (x) grad phi - 1/2 |grad phi|^2 I), computed as
/// -eps grad phi Delta phi.
std::vector<RealField> capillary_divergence(const Grid& grid, const RealField& phi,
                                            const PhysParams& params);

/// Full right-hand side of the perturbation system, split stiff/explicit.
Tendency rhs(const State& state, const PhysParams& params, const ModelOptions& opts = {});

EnergyReport total_energy(const State& state, const PhysParams& params);

/// d/dt of the total energy assembled pointwise from the (unfiltered)
/// right-hand side; equals minus the dissipation for exact solutions.
double energy_rate(const State& state, const PhysParams& params);

}  // namespace nsac
