#include "nsac/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nsac/errors.hpp"

namespace nsac {
namespace {

double rms_of_coeffs(const SpectralField& f) {
  return std::sqrt(weighted_power(f, [](std::size_t) { return 1.0; }));
}

void require_zero_mean(const SpectralField& f, const char* who) {
  if (!has_zero_mean(f)) {
    std::ostringstream msg;
    msg << who << ": field has nonzero mean " << f.mean().real()
        << "; negative orders are undefined on the zero mode";
    throw InvalidArgument(msg.str());
  }
}

// Multi-indices alpha with |alpha| = order over dim axes, with the number of
// ordered index tuples mapping to each.
struct MultiIndex {
  std::array<int, 3> alpha;
  double count;
};

std::vector<MultiIndex> multi_indices(int dim, int order) {
  std::vector<MultiIndex> out;
  auto factorial = [](int v) {
    double r = 1.0;
    for (int i = 2; i <= v; ++i) r *= i;
    return r;
  };
  for (int a0 = 0; a0 <= order; ++a0) {
    for (int a1 = 0; a1 <= (dim >= 2 ? order - a0 : 0); ++a1) {
      const int a2 = order - a0 - a1;
      if (dim == 1 && a0 != order) continue;
      if (dim == 2 && a2 != 0) continue;
      if (dim == 3 && a2 < 0) continue;
      const double count =
          factorial(order) / (factorial(a0) * factorial(a1) * factorial(a2));
      out.push_back({{a0, a1, a2}, count});
    }
  }
  return out;
}

}  // namespace

bool has_zero_mean(const SpectralField& f, double rel_tol) {
  const double mean = std::abs(f.mean());
  if (mean == 0.0) return true;
  const double rms = rms_of_coeffs(f);
  return mean <= rel_tol * rms;
}

SpectralField fractional_laplacian(const SpectralField& f, double s) {
  if (!std::isfinite(s)) throw InvalidArgument("fractional_laplacian: order must be finite");
  if (s == 0.0) return f;
  if (s < 0.0) require_zero_mean(f, "fractional_laplacian");
  const FourierBasis& b = f.basis();
  std::vector<Complex> out(f.size());
  const auto c = f.coeffs();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double kabs = b.kabs(i);
    out[i] = kabs == 0.0 ? Complex{} : std::pow(kabs, s) * c[i];
  }
  return SpectralField(f.grid(), std::move(out));
}

double sobolev_norm(const SpectralField& f, int l) {
  if (l < 0) throw InvalidArgument("sobolev_norm: order must be >= 0");
  return homogeneous_norm(f, static_cast<double>(l));
}

double sobolev_norm_sq(std::span<const SpectralField> components, int l) {
  double acc = 0.0;
  for (const auto& c : components) {
    const double v = sobolev_norm(c, l);
    acc += v * v;
  }
  return acc;
}

double hk_norm_sq(const SpectralField& f, int k) {
  const FourierBasis& b = f.basis();
  const double vol = f.grid().volume();
  return vol * weighted_power(f, [&](std::size_t i) {
           double w = 0.0;
           double p = 1.0;
           for (int j = 0; j <= k; ++j) {
             w += p;
             p *= b.k2(i);
           }
           return w;
         });
}

double homogeneous_norm(const SpectralField& f, double order) {
  if (order < 0.0) require_zero_mean(f, "homogeneous_norm");
  const FourierBasis& b = f.basis();
  const double vol = f.grid().volume();
  const double sum = weighted_power(f, [&](std::size_t i) {
    const double k2 = b.k2(i);
    if (k2 == 0.0) return order == 0.0 ? 1.0 : 0.0;
    return std::pow(k2, order);
  });
  return std::sqrt(vol * sum);
}

double negative_norm(const SpectralField& f, double s) {
  if (!(s > 0.0 && s < 1.5)) {
    std::ostringstream msg;
    msg << "negative_norm: s = " << s
        << " outside (0, 3/2); the decay theory only covers 0 < s < 3/2";
    throw InvalidArgument(msg.str());
  }
  require_zero_mean(f, "negative_norm");
  return homogeneous_norm(f, -s);
}

InterpolationSides interpolation_check(const SpectralField& f, int l, double s) {
  if (l < 0 || s < 0.0) throw InvalidArgument("interpolation_check: need l >= 0 and s >= 0");
  require_zero_mean(f, "interpolation_check");
  const double base = homogeneous_norm(f, 0.0);
  if (base == 0.0) throw InvalidArgument("interpolation_check: zero field, ratio undefined");
  const double theta = 1.0 / (l + s + 1.0);
  const double lhs = homogeneous_norm(f, l);
  const double upper = homogeneous_norm(f, l + 1.0);
  const double lower = homogeneous_norm(f, -s);
  return {lhs, std::pow(upper, 1.0 - theta) * std::pow(lower, theta)};
}

std::vector<double> derivative_magnitude(const SpectralField& f, int l) {
  if (l < 0) throw InvalidArgument("derivative_magnitude: order must be >= 0");
  const Grid& g = f.grid();
  if (l == 0) {
    auto v = f.to_physical();
    for (auto& x : v) x = std::abs(x);
    return v;
  }
  const FourierBasis& b = f.basis();
  std::vector<double> acc(g.size(), 0.0);
  std::vector<double> phys(g.size());
  std::vector<Complex> work(f.size());
  const auto c = f.coeffs();
  for (const auto& mi : multi_indices(g.dim, l)) {
    for (std::size_t i = 0; i < work.size(); ++i) {
      Complex m = c[i];
      for (int d = 0; d < g.dim; ++d) {
        for (int r = 0; r < mi.alpha[d]; ++r) m *= Complex(0.0, b.k(d, i));
      }
      work[i] = m;
    }
    b.inverse(work, phys);
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += mi.count * phys[j] * phys[j];
  }
  for (auto& x : acc) x = std::sqrt(x);
  return acc;
}

double lp_norm(const Grid& grid, std::span<const double> values, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  if (!(p >= 1.0)) throw InvalidArgument("lp_norm: p must be >= 1");
  double acc = 0.0;
  for (double v : values) acc += std::pow(std::abs(v), p);
  return std::pow(acc * grid.cell_volume(), 1.0 / p);
}

double derivative_lp_norm(const SpectralField& f, int l, double p) {
  if (p == 2.0) return homogeneous_norm(f, l);
  const auto mag = derivative_magnitude(f, l);
  return lp_norm(f.grid(), mag, p);
}

double gn_balance_residual(const GnExponents& e, int dim) {
  const double d = dim;
  auto inv = [](double x) { return std::isinf(x) ? 0.0 : 1.0 / x; };
  const double lhs = e.l / d - inv(e.p);
  const double rhs = (e.s / d - inv(e.r)) * (1.0 - e.theta) + (e.k / d - inv(e.q)) * e.theta;
  return lhs - rhs;
}

double gn_ratio(const SpectralField& f, const GnExponents& e) {
  auto in_range = [](double x) { return x >= 1.0; };
  if (!(e.l >= 0 && e.s >= 0 && e.l < e.k && e.s < e.k)) {
    throw InvalidArgument("gn_ratio: need 0 <= l, s < k");
  }
  if (!in_range(e.p) || !in_range(e.r) || !in_range(e.q)) {
    throw InvalidArgument("gn_ratio: Lebesgue exponents must lie in [1, inf]");
  }
  const double theta_min = static_cast<double>(e.l) / e.k;
  if (e.theta < theta_min - 1e-14 || e.theta > 1.0) {
    throw InvalidArgument("gn_ratio: theta outside [l/k, 1]");
  }
  const double residual = gn_balance_residual(e, f.grid().dim);
  if (std::abs(residual) > 1e-12) {
    std::ostringstream msg;
    msg << "gn_ratio: exponent relation violated, dimensional-balance residual " << residual;
    throw InvalidArgument(msg.str());
  }
  const double top = derivative_lp_norm(f, e.l, e.p);
  const double low = derivative_lp_norm(f, e.s, e.r);
  const double high = derivative_lp_norm(f, e.k, e.q);
  if (low == 0.0 || high == 0.0) throw InvalidArgument("gn_ratio: zero field, ratio undefined");
  return top / (std::pow(low, 1.0 - e.theta) * std::pow(high, e.theta));
}

}  // namespace nsac
