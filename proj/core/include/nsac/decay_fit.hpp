#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace nsac {

/// (t, value) samples of a decaying norm.
using Series = std::vector<std::pair<double, double>>;

struct FitWindow {
  double t_lo = 0.0;
  double t_hi = 0.0;
};

/// Least-squares power law value ~ prefactor (1+t)^exponent.
struct DecayFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r2 = 0.0;
  double residual = 0.0;  ///< RMS residual in log space
  FitWindow window;
  std::size_t samples = 0;
  double early_slope = 0.0;  ///< slope over the first half of the window (log t)
  double late_slope = 0.0;   ///< slope over the second half
  /// Set when the series bends downward (exponential tail) or r2 < 0.995.
  bool contaminated = false;
  double target = std::nan("");
  bool pass = false;
};

/// Fits log value against log(1+t) over samples with t_lo <= t <= t_hi.
/// Throws InvalidArgument on fewer than 10 samples or non-positive values.
DecayFit fit_exponent(const Series& series, FitWindow window);

/// n points log-spaced on [t_lo, t_hi].
std::vector<double> log_spaced(double t_lo, double t_hi, int n);

}  // namespace nsac
