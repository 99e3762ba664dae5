#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <string>
#include <vector>

#include "nsac/physics.hpp"

namespace nsac {

/// Fourier symbol of the linearized system at one wavevector.
///
/// acoustic_block acts on (sigma_hat, u_hat_1..u_hat_dim):
///   sigma' = -i rho_bar k.u
///   u'     = -(nu/rho_bar)|k|^2 u - ((nu+lambda)/rho_bar) k (k.u) - i (p'(rho_bar)/rho_bar) k sigma
/// and phi_hat' = phase_factor * phi_hat. The quadratic capillary term of the
/// displayed linear system is dropped so that phi decouples.
struct SymbolBlock {
  std::vector<double> k;
  Eigen::MatrixXcd acoustic_block;
  double phase_factor = 0.0;
};

/// Builds the symbol for wavevector k (1 to 3 components). With
/// include_reaction the phase factor also carries -2/(eps rho_bar), the
/// linearized reaction of the full model around phi = +-1.
SymbolBlock build_symbol(const std::vector<double>& k, const PhysParams& params,
                         bool include_reaction = false);

struct ModeAmplitudes {
  std::complex<double> sigma;
  std::vector<std::complex<double>> u;
  std::complex<double> phi;
};

/// exp(t A) applied to the mode: closed-form 2x2 longitudinal block,
/// scalar transverse and phase factors.
ModeAmplitudes evolve_mode(const SymbolBlock& block, const ModeAmplitudes& init, double t);

/// exp(t M) for a 2x2 complex matrix, stable for large negative real parts
/// and near-degenerate eigenvalues.
Eigen::Matrix2cd expm2(const Eigen::Matrix2cd& m, double t);

/// Radial shape |w0_hat|(r) of whole-space data.
struct DataProfile {
  enum class Kind { PowerLaw, L1Type };
  Kind kind = Kind::PowerLaw;
  double s = 0.5;        ///< target regularity index in [0, 3/2)
  double offset = 0.01;  ///< exponent margin keeping the data inside H^{-s}
  double cutoff = 1.0;   ///< support radius

  /// Power-law profile r^(s - 3/2 + offset) on r <= cutoff.
  static DataProfile power_law(double s, double offset = 0.01);
  /// Constant on r <= cutoff: the L^1-like endpoint.
  static DataProfile l1_type();

  double exponent() const;
  double amplitude(double r) const;
  /// Throws InvalidArgument unless int r^{-2s} |w0|^2 r^2 dr converges.
  void validate() const;
};

enum class Component { Sigma, U, Acoustic, Phi };
Component parse_component(const std::string& name);
const char* to_string(Component c);

/// ||grad^l w(t)||^2 over R^3 for data sigma0 = f(r), u0 = f(r) e (fixed unit
/// vector), phi0 = f(r), by 1-D radial quadrature with exact angular averages
/// over the longitudinal/transverse split.
double decay_norm(int l, double t, const DataProfile& profile, Component component,
                  const PhysParams& params, double rel_tol = 1e-8);

}  // namespace nsac
