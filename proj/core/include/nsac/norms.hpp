#pragma once

#include <span>
#include <utility>
#include <vector>

#include "nsac/spectral_field.hpp"

namespace nsac {

/// Fractional power of the Laplacian: multiplies mode xi by |xi|^s.
///
/// The zero mode maps to zero for s != 0. Negative s requires a zero-mean
/// field; otherwise InvalidArgument is thrown since the multiplier is
/// singular at xi = 0.
SpectralField fractional_laplacian(const SpectralField& f, double s);

/// True when the zero mode is negligible against the field's rms value.
bool has_zero_mean(const SpectralField& f, double rel_tol = 1e-12);

/// ||grad^l f||_{L^2} via Parseval, i.e. sqrt(V sum |xi|^{2l} |c_xi|^2).
double sobolev_norm(const SpectralField& f, int l);
/// Sum of squares of sobolev_norm over the components.
double sobolev_norm_sq(std::span<const SpectralField> components, int l);
/// Inhomogeneous H^k norm squared: sum_{j=0..k} ||grad^j f||^2.
double hk_norm_sq(const SpectralField& f, int k);

/// ||Lambda^order f||_{L^2} for any real order; negative orders need a
/// zero-mean field and skip the zero mode.
double homogeneous_norm(const SpectralField& f, double order);

/// ||Lambda^{-s} f||_{L^2} for 0 < s < 3/2 on a zero-mean field.
double negative_norm(const SpectralField& f, double s);

struct InterpolationSides {
  double lhs;
  double rhs;
};

/// Both sides of ||grad^l f|| <= ||grad^{l+1} f||^{1-theta} ||f||_{H^-s}^theta
/// with theta = 1/(l+s+1) and unit constant.
InterpolationSides interpolation_check(const SpectralField& f, int l, double s);

/// Pointwise magnitude of the l-th derivative tensor,
/// |grad^l f|^2 = sum over index tuples |d_{i1}..d_{il} f|^2.
std::vector<double> derivative_magnitude(const SpectralField& f, int l);

/// Grid-level L^p norm of a physical field; p = infinity gives the grid max.
double lp_norm(const Grid& grid, std::span<const double> values, double p);

/// ||grad^l f||_{L^p} using derivative_magnitude (spectral Parseval for p=2).
double derivative_lp_norm(const SpectralField& f, int l, double p);

/// Parameters of one Gagliardo-Nirenberg inequality instance.
struct GnExponents {
  int l;
  double p;
  int s;
  double r;
  int k;
  double q;
  double theta;
};

/// Residual of l/d - 1/p = (s/d - 1/r)(1-theta) + (k/d - 1/q) theta.
double gn_balance_residual(const GnExponents& e, int dim);

/// ||grad^l f||_p / (||grad^s f||_r^{1-theta} ||grad^k f||_q^theta).
///
/// Throws InvalidArgument when the exponents are inadmissible (message
/// carries the dimensional-balance residual) or the field is zero.
double gn_ratio(const SpectralField& f, const GnExponents& e);

}  // namespace nsac
