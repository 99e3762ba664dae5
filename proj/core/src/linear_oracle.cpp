#include "nsac/linear_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nsac/errors.hpp"
#include "nsac/quadrature.hpp"

namespace nsac {
namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

struct Split {
  Eigen::Matrix2cd longitudinal;
  cd transverse_rate;
  std::vector<double> khat;
};

Split split_block(const SymbolBlock& block) {
  const auto dim = static_cast<Eigen::Index>(block.k.size());
  double kmag = 0.0;
  for (double v : block.k) kmag += v * v;
  kmag = std::sqrt(kmag);
  Split out;
  out.khat.assign(block.k.size(), 0.0);
  for (std::size_t j = 0; j < block.k.size(); ++j) out.khat[j] = block.k[j] / kmag;
  const auto& a = block.acoustic_block;
  cd a01{}, a10{}, a11{};
  for (Eigen::Index j = 0; j < dim; ++j) {
    a01 += a(0, j + 1) * out.khat[j];
    a10 += out.khat[j] * a(j + 1, 0);
    for (Eigen::Index i = 0; i < dim; ++i) a11 += out.khat[i] * a(i + 1, j + 1) * out.khat[j];
  }
  out.longitudinal << a(0, 0), a01, a10, a11;
  if (dim > 1) {
    cd trace{};
    for (Eigen::Index i = 0; i < dim; ++i) trace += a(i + 1, i + 1);
    out.transverse_rate = (trace - a11) / static_cast<double>(dim - 1);
  }
  return out;
}

Eigen::Matrix2cd longitudinal_block(double r, const PhysParams& p) {
  const double rb = p.rho_bar;
  const double c2 = pressure_prime(rb, p) / rb;
  Eigen::Matrix2cd m;
  m << 0.0, -kI * rb * r, -kI * c2 * r, -(2.0 * p.nu + p.lambda) / rb * r * r;
  return m;
}

}  // namespace

SymbolBlock build_symbol(const std::vector<double>& k, const PhysParams& params,
                         bool include_reaction) {
  params.validate();
  if (k.empty() || k.size() > 3) throw InvalidArgument("build_symbol: k must have 1..3 components");
  const auto dim = static_cast<Eigen::Index>(k.size());
  const double rb = params.rho_bar;
  const double nu = params.nu / rb;
  const double graddiv = (params.nu + params.lambda) / rb;
  const double c2 = pressure_prime(rb, params) / rb;
  double k2 = 0.0;
  for (double v : k) k2 += v * v;

  SymbolBlock b;
  b.k = k;
  b.acoustic_block = Eigen::MatrixXcd::Zero(dim + 1, dim + 1);
  for (Eigen::Index j = 0; j < dim; ++j) {
    b.acoustic_block(0, j + 1) = -kI * rb * k[j];
    b.acoustic_block(j + 1, 0) = -kI * c2 * k[j];
    for (Eigen::Index i = 0; i < dim; ++i) {
      b.acoustic_block(i + 1, j + 1) = -graddiv * k[i] * k[j] - (i == j ? nu * k2 : 0.0);
    }
  }
  b.phase_factor = -params.epsilon * k2 / (rb * rb);
  if (include_reaction) b.phase_factor -= 2.0 / (params.epsilon * rb);
  return b;
}

Eigen::Matrix2cd expm2(const Eigen::Matrix2cd& m, double t) {
  const cd tau = 0.5 * m.trace();
  const cd mu = std::sqrt(tau * tau - m.determinant());
  const cd ep = std::exp((tau + mu) * t);
  const cd em = std::exp((tau - mu) * t);
  const cd c = 0.5 * (ep + em);
  cd s;
  const cd z = mu * t;
  if (std::abs(z) > 1e-2) {
    s = (ep - em) / (2.0 * mu);
  } else {
    const cd z2 = z * z;
    s = std::exp(tau * t) * t *
        (1.0 + z2 / 6.0 * (1.0 + z2 / 20.0 * (1.0 + z2 / 42.0 * (1.0 + z2 / 72.0))));
  }
  return c * Eigen::Matrix2cd::Identity() + s * (m - tau * Eigen::Matrix2cd::Identity());
}

ModeAmplitudes evolve_mode(const SymbolBlock& block, const ModeAmplitudes& init, double t) {
  if (t < 0.0) throw InvalidArgument("evolve_mode: t must be >= 0");
  if (init.u.size() != block.k.size()) throw InvalidArgument("evolve_mode: u has wrong dimension");
  ModeAmplitudes out = init;
  out.phi = init.phi * std::exp(block.phase_factor * t);
  double k2 = 0.0;
  for (double v : block.k) k2 += v * v;
  if (k2 == 0.0) return out;  // the symbol vanishes on the mean mode

  const Split sp = split_block(block);
  cd w{};
  for (std::size_t j = 0; j < init.u.size(); ++j) w += sp.khat[j] * init.u[j];
  const Eigen::Matrix2cd e = expm2(sp.longitudinal, t);
  const cd sigma_t = e(0, 0) * init.sigma + e(0, 1) * w;
  const cd w_t = e(1, 0) * init.sigma + e(1, 1) * w;
  const cd decay = std::exp(sp.transverse_rate * t);
  for (std::size_t j = 0; j < init.u.size(); ++j) {
    const cd perp = init.u[j] - sp.khat[j] * w;
    out.u[j] = sp.khat[j] * w_t + decay * perp;
  }
  out.sigma = sigma_t;
  return out;
}

DataProfile DataProfile::power_law(double s, double offset) {
  DataProfile p;
  p.kind = Kind::PowerLaw;
  p.s = s;
  p.offset = offset;
  p.validate();
  return p;
}

DataProfile DataProfile::l1_type() {
  DataProfile p;
  p.kind = Kind::L1Type;
  p.s = 1.5 - 0.01;
  p.offset = 0.0;
  return p;
}

double DataProfile::exponent() const {
  return kind == Kind::L1Type ? 0.0 : s - 1.5 + offset;
}

double DataProfile::amplitude(double r) const {
  if (r > cutoff || r <= 0.0) return 0.0;
  const double a = exponent();
  return a == 0.0 ? 1.0 : std::pow(r, a);
}

void DataProfile::validate() const {
  if (!(s >= 0.0 && s < 1.5)) throw InvalidArgument("DataProfile: s must lie in [0, 3/2)");
  if (!(cutoff > 0.0)) throw InvalidArgument("DataProfile: cutoff must be > 0");
  if (!(exponent() > s - 1.5)) {
    throw InvalidArgument("DataProfile: data not in the homogeneous space of order -s");
  }
}

Component parse_component(const std::string& name) {
  if (name == "sigma") return Component::Sigma;
  if (name == "u") return Component::U;
  if (name == "acoustic") return Component::Acoustic;
  if (name == "phi") return Component::Phi;
  throw InvalidArgument("unknown component '" + name + "' (sigma|u|acoustic|phi)");
}

const char* to_string(Component c) {
  switch (c) {
    case Component::Sigma: return "sigma";
    case Component::U: return "u";
    case Component::Acoustic: return "acoustic";
    case Component::Phi: return "phi";
  }
  return "?";
}

double decay_norm(int l, double t, const DataProfile& profile, Component component,
                  const PhysParams& params, double rel_tol) {
  if (l < 0 || l > 3) throw InvalidArgument("decay_norm: l must lie in 0..3");
  if (t < 0.0) throw InvalidArgument("decay_norm: t must be >= 0");
  params.validate();
  profile.validate();
  const double rb = params.rho_bar;
  const double heat = params.epsilon / (rb * rb);
  const double visc = params.nu / rb;

  auto integrand = [&](double r) -> double {
    const double f = profile.amplitude(r);
    if (f == 0.0) return 0.0;
    const double weight = 4.0 * std::numbers::pi * r * r * std::pow(r, 2 * l) * f * f;
    if (component == Component::Phi) return weight * std::exp(-2.0 * heat * r * r * t);
    const Eigen::Matrix2cd e = expm2(longitudinal_block(r, params), t);
    double value = 0.0;
    if (component == Component::Sigma || component == Component::Acoustic) {
      value += std::norm(e(0, 0)) + std::norm(e(0, 1)) / 3.0;
    }
    if (component == Component::U || component == Component::Acoustic) {
      value += std::norm(e(1, 0)) + std::norm(e(1, 1)) / 3.0 +
               2.0 / 3.0 * std::exp(-2.0 * visc * r * r * t);
    }
    return weight * value;
  };

  // Seed the partition at multiples of the diffusive length 1/sqrt(rate t).
  const double rate = std::min(heat, std::min(visc, 0.5 * (2.0 * params.nu + params.lambda) / rb));
  const double scale = 1.0 / std::sqrt(1.0 + rate * t);
  std::vector<double> cuts;
  for (double m : {1e-4, 1e-3, 1e-2, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    cuts.push_back(m * scale);
  }
  QuadratureOptions opts;
  opts.rel_tol = rel_tol;
  opts.max_intervals = 20000;
  const auto res = integrate(integrand, 0.0, profile.cutoff, opts, cuts);
  return res.value;
}

}  // namespace nsac
