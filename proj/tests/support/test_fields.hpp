#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "nsac/grid.hpp"
#include "nsac/spectral_field.hpp"
#include "nsac/state.hpp"

namespace nsac::testing {

inline Grid grid_of(int dim, int n) {
  Grid g;
  g.dim = dim;
  g.n = n;
  return g;
}

/// Samples f(x, y, z) on the collocation points (unused coordinates are 0).
inline RealField sample(const Grid& g, const std::function<double(double, double, double)>& f) {
  RealField out(g.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const auto i = g.point_index(j);
    const double x = g.coordinate(i[0]);
    const double y = g.dim > 1 ? g.coordinate(i[1]) : 0.0;
    const double z = g.dim > 2 ? g.coordinate(i[2]) : 0.0;
    out[j] = f(x, y, z);
  }
  return out;
}

inline SpectralField spectral(const Grid& g, const std::function<double(double, double, double)>& f) {
  return SpectralField::from_physical(g, sample(g, f));
}

/// Grid quadrature of f^2 (exact for trig polynomials below the Nyquist band).
inline double quad_sq(const Grid& g, const RealField& f) {
  double acc = 0.0;
  for (double v : f) acc += v * v;
  return acc * g.cell_volume();
}

inline double max_abs_diff(const RealField& a, const RealField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const RealField& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace nsac::testing
