#include "nsac/decay_fit.hpp"

#include <algorithm>
#include <sstream>

#include "nsac/errors.hpp"

namespace nsac {
namespace {

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
  double rms = 0.0;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0) throw InvalidArgument("fit_exponent: degenerate abscissae");
  Line l;
  l.slope = sxy / sxx;
  l.intercept = my - l.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (l.intercept + l.slope * x[i]);
    ss += r * r;
  }
  // A flat series (syy at roundoff level) is fitted exactly by slope 0.
  const double flat = 1e-24 * n * std::max(1.0, my * my);
  l.r2 = syy > flat ? 1.0 - ss / syy : 1.0;
  l.rms = std::sqrt(ss / n);
  return l;
}

}  // namespace

DecayFit fit_exponent(const Series& series, FitWindow window) {
  if (!(window.t_hi > window.t_lo)) throw InvalidArgument("fit_exponent: empty window");
  std::vector<double> x, y;
  for (const auto& [t, v] : series) {
    if (t < window.t_lo || t > window.t_hi) continue;
    if (!(v > 0.0) || !std::isfinite(v)) {
      std::ostringstream os;
      os << "fit_exponent: non-positive value " << v << " at t = " << t;
      throw InvalidArgument(os.str());
    }
    x.push_back(std::log1p(t));
    y.push_back(std::log(v));
  }
  if (x.size() < 10) {
    throw InvalidArgument("fit_exponent: need at least 10 samples in the window, got " +
                          std::to_string(x.size()));
  }
  const Line all = least_squares(x, y);
  DecayFit fit;
  fit.exponent = all.slope;
  fit.prefactor = std::exp(all.intercept);
  fit.r2 = all.r2;
  fit.residual = all.rms;
  fit.window = window;
  fit.samples = x.size();

  // Split at the midpoint of the log abscissa.
  const double mid = 0.5 * (x.front() + x.back());
  std::vector<double> xe, ye, xl, yl;
  for (std::size_t i = 0; i < x.size(); ++i) {
    (x[i] <= mid ? xe : xl).push_back(x[i]);
    (x[i] <= mid ? ye : yl).push_back(y[i]);
  }
  if (xe.size() >= 3 && xl.size() >= 3) {
    fit.early_slope = least_squares(xe, ye).slope;
    fit.late_slope = least_squares(xl, yl).slope;
  } else {
    fit.early_slope = fit.late_slope = fit.exponent;
  }
  const double bend = fit.late_slope - fit.early_slope;
  fit.contaminated = fit.r2 < 0.995 || bend < -std::max(0.1, 0.1 * std::abs(fit.exponent));
  return fit;
}

std::vector<double> log_spaced(double t_lo, double t_hi, int n) {
  if (!(t_lo > 0.0 && t_hi > t_lo) || n < 2) {
    throw InvalidArgument("log_spaced: need 0 < t_lo < t_hi and n >= 2");
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  const double a = std::log(t_lo), b = std::log(t_hi);
  for (int i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * i / (n - 1));
  out.front() = t_lo;
  out.back() = t_hi;
  return out;
}

}  // namespace nsac
