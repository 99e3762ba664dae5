#include "nsac/model.hpp"

#include <cmath>

#include "nsac/errors.hpp"
#include "nsac/norms.hpp"

namespace nsac {
namespace {

constexpr Complex kI{0.0, 1.0};

Fields to_fields(const ModalState& x) {
  const Grid& g = x.grid();
  Fields f = Fields::zeros(g);
  x.basis->inverse(x.sigma, f.sigma);
  for (int d = 0; d < g.dim; ++d) x.basis->inverse(x.u[d], f.u[d]);
  x.basis->inverse(x.psi, f.phi);
  return f;
}

double reaction_shift(const PhysParams& p, const ModelOptions& o) {
  return o.implicit_reaction ? 2.0 / (p.epsilon * p.rho_bar) : 0.0;
}

}  // namespace

Fields Tendency::total() const {
  Fields f = stiff;
  f += explicit_part;
  return f;
}

ModalState ModalState::zeros(const Grid& grid) {
  ModalState x;
  x.basis = FourierBasis::for_grid(grid);
  const std::size_t ns = grid.spectral_size();
  x.sigma.assign(ns, Complex{});
  x.u.assign(static_cast<std::size_t>(grid.dim), std::vector<Complex>(ns));
  x.psi.assign(ns, Complex{});
  return x;
}

ModalState ModalState::from_state(const State& state, double phase_eq) {
  state.check_shape();
  ModalState x = zeros(state.grid);
  x.t = state.t;
  x.basis->forward(state.sigma, x.sigma);
  for (int d = 0; d < state.grid.dim; ++d) x.basis->forward(state.u[d], x.u[d]);
  x.basis->forward(state.phi, x.psi);
  x.psi[0] -= phase_eq;
  return x;
}

State ModalState::to_state(double phase_eq) const {
  State s;
  s.grid = grid();
  s.t = t;
  Fields f = to_fields(*this);
  s.sigma = std::move(f.sigma);
  s.u = std::move(f.u);
  s.phi = std::move(f.phi);
  for (auto& v : s.phi) v += phase_eq;
  return s;
}

void ModalState::axpy(double s, const ModalState& other) {
  for (std::size_t i = 0; i < sigma.size(); ++i) sigma[i] += s * other.sigma[i];
  for (std::size_t d = 0; d < u.size(); ++d) {
    for (std::size_t i = 0; i < u[d].size(); ++i) u[d][i] += s * other.u[d][i];
  }
  for (std::size_t i = 0; i < psi.size(); ++i) psi[i] += s * other.psi[i];
}

void ModalState::scale(double s) {
  for (auto& v : sigma) v *= s;
  for (auto& c : u) {
    for (auto& v : c) v *= s;
  }
  for (auto& v : psi) v *= s;
}

LinearOperator::LinearOperator(PhysParams params, ModelOptions opts)
    : params_(params), opts_(opts) {
  params_.validate();
}

double LinearOperator::phase_rate(double k2) const {
  return params_.epsilon * k2 / (params_.rho_bar * params_.rho_bar) +
         reaction_shift(params_, opts_);
}

ModalState LinearOperator::apply(const ModalState& x) const {
  const FourierBasis& b = *x.basis;
  const int dim = x.grid().dim;
  const double rb = params_.rho_bar;
  const double nu = params_.nu / rb;
  const double graddiv = (params_.nu + params_.lambda) / rb;
  const double c2 = pressure_prime(rb, params_) / rb;
  ModalState y = ModalState::zeros(x.grid());
  y.t = x.t;
  for (std::size_t i = 0; i < x.sigma.size(); ++i) {
    const double k2 = b.k2(i);
    Complex kdotu{};
    for (int d = 0; d < dim; ++d) kdotu += b.k(d, i) * x.u[d][i];
    y.sigma[i] = -kI * rb * kdotu;
    for (int d = 0; d < dim; ++d) {
      const double kd = b.k(d, i);
      y.u[d][i] = -nu * k2 * x.u[d][i] - graddiv * kd * kdotu - kI * c2 * kd * x.sigma[i];
    }
    y.psi[i] = -phase_rate(k2) * x.psi[i];
  }
  return y;
}

void LinearOperator::solve(ModalState& x, double a) const {
  const FourierBasis& b = *x.basis;
  const int dim = x.grid().dim;
  const double rb = params_.rho_bar;
  const double nu = params_.nu / rb;
  const double graddiv = (params_.nu + params_.lambda) / rb;
  const double c2 = pressure_prime(rb, params_) / rb;
  for (std::size_t i = 0; i < x.sigma.size(); ++i) {
    const double k2 = b.k2(i);
    x.psi[i] /= 1.0 + a * phase_rate(k2);

    double kk = 0.0;
    for (int d = 0; d < dim; ++d) kk += b.k(d, i) * b.k(d, i);
    const double transverse = 1.0 + a * nu * k2;
    if (kk == 0.0) {
      for (int d = 0; d < dim; ++d) x.u[d][i] /= transverse;
      continue;
    }
    const double kmag = std::sqrt(kk);
    Complex w{};
    for (int d = 0; d < dim; ++d) w += (b.k(d, i) / kmag) * x.u[d][i];
    // Longitudinal block acting on (sigma, w = khat . u).
    const Complex m00 = 1.0;
    const Complex m01 = kI * a * rb * kmag;
    const Complex m10 = kI * a * c2 * kmag;
    const Complex m11 = 1.0 + a * (nu * k2 + graddiv * kk);
    const Complex det = m00 * m11 - m01 * m10;
    const Complex bs = x.sigma[i];
    const Complex sigma_new = (m11 * bs - m01 * w) / det;
    const Complex w_new = (m00 * w - m10 * bs) / det;
    for (int d = 0; d < dim; ++d) {
      const double kh = b.k(d, i) / kmag;
      const Complex perp = x.u[d][i] - kh * w;
      x.u[d][i] = kh * w_new + perp / transverse;
    }
    x.sigma[i] = sigma_new;
  }
}

ExplicitTerms::ExplicitTerms(const Grid& grid, PhysParams params, ModelOptions opts)
    : basis_(FourierBasis::for_grid(grid)), params_(params), opts_(opts) {
  params_.validate();
  spec_.resize(grid.spectral_size());
  const int dim = grid.dim;
  // sigma, psi, lap phi, u[d], dsigma[d], du[d][e], visc[d], dphi[d], q[d], eu[d], ephi
  const std::size_t count = 3 + dim + dim + dim * dim + dim + dim + dim + dim + 1;
  buf_.assign(count, std::vector<double>(grid.size()));
}

void ExplicitTerms::evaluate(const ModalState& x, ModalState& out) {
  const FourierBasis& b = *basis_;
  const Grid& g = b.grid();
  const int dim = g.dim;
  const std::size_t np = g.size();
  const std::size_t ns = g.spectral_size();

  std::size_t slot = 0;
  auto take = [&]() -> std::vector<double>& { return buf_[slot++]; };
  auto& sigma = take();
  auto& psi = take();
  auto& lap_phi = take();
  std::vector<double>* u[3];
  std::vector<double>* dsig[3];
  std::vector<double>* du[3][3];
  std::vector<double>* visc[3];
  std::vector<double>* dphi[3];
  std::vector<double>* q[3];
  std::vector<double>* eu[3];
  for (int d = 0; d < dim; ++d) u[d] = &take();
  for (int d = 0; d < dim; ++d) dsig[d] = &take();
  for (int d = 0; d < dim; ++d) {
    for (int e = 0; e < dim; ++e) du[d][e] = &take();
  }
  for (int d = 0; d < dim; ++d) visc[d] = &take();
  for (int d = 0; d < dim; ++d) dphi[d] = &take();
  for (int d = 0; d < dim; ++d) q[d] = &take();
  for (int d = 0; d < dim; ++d) eu[d] = &take();
  auto& ephi = take();

  auto to_phys = [&](auto&& coeff, std::vector<double>& dst) {
    for (std::size_t i = 0; i < ns; ++i) spec_[i] = coeff(i);
    b.inverse(spec_, dst);
  };

  const double rb = params_.rho_bar;
  const double nu = params_.nu;
  const double nl = params_.nu + params_.lambda;
  const double eps = params_.epsilon;

  b.inverse(x.sigma, sigma);
  b.inverse(x.psi, psi);
  for (int d = 0; d < dim; ++d) b.inverse(x.u[d], *u[d]);
  static const char* unames[3] = {"u0", "u1", "u2"};
  for (std::size_t j = 0; j < np; ++j) {
    if (!std::isfinite(sigma[j])) throw NonFiniteError("sigma");
    if (!std::isfinite(psi[j])) throw NonFiniteError("phi");
    for (int d = 0; d < dim; ++d) {
      if (!std::isfinite((*u[d])[j])) throw NonFiniteError(unames[d]);
    }
    if (!(rb + sigma[j] > 0.0)) throw VacuumError(rb + sigma[j]);
  }

  to_phys([&](std::size_t i) { return -b.k2(i) * x.psi[i]; }, lap_phi);
  for (int d = 0; d < dim; ++d) {
    to_phys([&](std::size_t i) { return kI * b.k(d, i) * x.sigma[i]; }, *dsig[d]);
    to_phys([&](std::size_t i) { return kI * b.k(d, i) * x.psi[i]; }, *dphi[d]);
    for (int e = 0; e < dim; ++e) {
      to_phys([&](std::size_t i) { return kI * b.k(e, i) * x.u[d][i]; }, *du[d][e]);
    }
    to_phys(
        [&](std::size_t i) {
          Complex kdotu{};
          for (int e = 0; e < dim; ++e) kdotu += b.k(e, i) * x.u[e][i];
          return -nu * b.k2(i) * x.u[d][i] - nl * b.k(d, i) * kdotu;
        },
        *visc[d]);
  }

  const double p_ref = pressure_prime(rb, params_) / rb;
  const double gamma = params_.pressure_gamma;
  const double a = params_.pressure_a;
  const double shift = reaction_shift(params_, opts_);
  const double phase = opts_.phase_eq;
  for (std::size_t j = 0; j < np; ++j) {
    const double s = sigma[j];
    const double rho = rb + s;
    const double h1v = p_ref - a * gamma * std::pow(rho, gamma - 2.0);
    const double h2v = s / (rb * rho);
    const double lap = lap_phi[j];
    double udotgradphi = 0.0;
    for (int e = 0; e < dim; ++e) udotgradphi += (*u[e])[j] * (*dphi[e])[j];
    for (int d = 0; d < dim; ++d) {
      (*q[d])[j] = s * (*u[d])[j];
      double adv = 0.0;
      for (int e = 0; e < dim; ++e) adv += (*u[e])[j] * (*du[d][e])[j];
      const double cap = (*dphi[d])[j] * lap;
      (*eu[d])[j] = -adv + h1v * (*dsig[d])[j] - h2v * ((*visc[d])[j] - eps * cap) -
                    (eps / rb) * cap;
    }
    const double ps = psi[j];
    const double phi = phase + ps;
    // 1 - phi^2 = -(phi - 1)(phi + 1), with the factor that vanishes at the
    // equilibrium taken from psi directly.
    const double one_minus_sq =
        phase > 0.0 ? -ps * (phi + 1.0) : -(phi - 1.0) * ps;
    const double inv_rho2_diff = -s * (2.0 * rb + s) / (rho * rho * rb * rb);
    ephi[j] = -udotgradphi + eps * inv_rho2_diff * lap +
              one_minus_sq * phi / (eps * rho) + shift * ps;
  }

  auto to_modal = [&](const std::vector<double>& src, std::vector<Complex>& dst) {
    b.forward(src, dst);
    if (opts_.dealias) {
      for (std::size_t i = 0; i < ns; ++i) {
        if (!b.retained(i)) dst[i] = 0.0;
      }
    }
  };
  for (auto& v : out.sigma) v = 0.0;
  for (int d = 0; d < dim; ++d) {
    to_modal(*q[d], spec_);
    for (std::size_t i = 0; i < ns; ++i) out.sigma[i] -= kI * b.k(d, i) * spec_[i];
    to_modal(*eu[d], out.u[d]);
  }
  to_modal(ephi, out.psi);
  out.t = x.t;
}

RealField chemical_potential(const State& state, const PhysParams& params) {
  state.check_shape();
  params.validate();
  const auto lap = laplacian(SpectralField::from_physical(state.grid, state.phi)).to_physical();
  RealField mu(state.grid.size());
  const double eps = params.epsilon;
  for (std::size_t j = 0; j < mu.size(); ++j) {
    const double rho = params.rho_bar + state.sigma[j];
    if (!(rho > 0.0)) throw VacuumError(rho);
    const double phi = state.phi[j];
    mu[j] = (phi - 1.0) * (phi + 1.0) * phi / eps - (eps / rho) * lap[j];
  }
  return mu;
}

std::vector<RealField> capillary_divergence(const Grid& grid, const RealField& phi,
                                            const PhysParams& params) {
  const auto spec = SpectralField::from_physical(grid, phi);
  const auto lap = laplacian(spec).to_physical();
  std::vector<RealField> out;
  for (int d = 0; d < grid.dim; ++d) {
    auto g = derivative(spec, d).to_physical();
    for (std::size_t j = 0; j < g.size(); ++j) g[j] *= -params.epsilon * lap[j];
    out.push_back(std::move(g));
  }
  return out;
}

Tendency rhs(const State& state, const PhysParams& params, const ModelOptions& opts) {
  params.validate();
  const ModalState x = ModalState::from_state(state, opts.phase_eq);
  const LinearOperator op(params, opts);
  ExplicitTerms ex(state.grid, params, opts);
  ModalState nx = ModalState::zeros(state.grid);
  ex.evaluate(x, nx);
  return {to_fields(op.apply(x)), to_fields(nx)};
}

EnergyReport total_energy(const State& state, const PhysParams& params) {
  state.check_shape();
  params.validate();
  const Grid& g = state.grid;
  const double dv = g.cell_volume();
  const double vol = g.volume();
  const double eps = params.epsilon;
  EnergyReport r;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double rho = params.rho_bar + state.sigma[j];
    double u2 = 0.0;
    for (const auto& c : state.u) u2 += c[j] * c[j];
    const double phi = state.phi[j];
    const double well = (phi - 1.0) * (phi + 1.0);
    r.kinetic += 0.5 * rho * u2;
    r.g_part += g_potential(rho, params);
    r.double_well += rho / (4.0 * eps) * well * well;
  }
  r.kinetic *= dv;
  r.g_part *= dv;
  r.double_well *= dv;

  const auto phi_hat = SpectralField::from_physical(g, state.phi);
  const FourierBasis& b = phi_hat.basis();
  r.gradient_part = 0.5 * eps * vol * weighted_power(phi_hat, [&](std::size_t i) { return b.k2(i); });

  std::vector<Complex> div(g.spectral_size());
  for (int d = 0; d < g.dim; ++d) {
    const auto ud = SpectralField::from_physical(g, state.u[d]);
    r.diss_visc += vol * weighted_power(ud, [&](std::size_t i) { return b.k2(i); });
    for (std::size_t i = 0; i < div.size(); ++i) div[i] += kI * b.k(d, i) * ud[i];
  }
  r.diss_visc *= params.nu;
  r.diss_div = (params.nu + params.lambda) * vol *
               weighted_power(SpectralField(g, std::move(div)), [](std::size_t) { return 1.0; });

  const auto mu = chemical_potential(state, params);
  for (double m : mu) r.diss_mu += m * m;
  r.diss_mu *= dv;

  r.total = r.kinetic + r.g_part + r.gradient_part + r.double_well;
  return r;
}

double energy_rate(const State& state, const PhysParams& params) {
  ModelOptions opts;
  opts.dealias = false;
  const Fields dt = rhs(state, params, opts).total();
  const Grid& g = state.grid;
  const double eps = params.epsilon;
  double acc = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double rho = params.rho_bar + state.sigma[j];
    const double rho_t = dt.sigma[j];
    double u2 = 0.0;
    double u_ut = 0.0;
    for (int d = 0; d < g.dim; ++d) {
      u2 += state.u[d][j] * state.u[d][j];
      u_ut += state.u[d][j] * dt.u[d][j];
    }
    const double phi = state.phi[j];
    const double well = (phi - 1.0) * (phi + 1.0);
    acc += 0.5 * u2 * rho_t + rho * u_ut + g_potential_prime(rho, params) * rho_t +
           rho_t * well * well / (4.0 * eps) + rho * well * phi * dt.phi[j] / eps;
  }
  acc *= g.cell_volume();
  const auto phi_hat = SpectralField::from_physical(g, state.phi);
  const auto phit_hat = SpectralField::from_physical(g, dt.phi);
  const FourierBasis& b = phi_hat.basis();
  double grad = 0.0;
  for (std::size_t i = 0; i < phi_hat.size(); ++i) {
    grad += b.multiplicity(i) * b.k2(i) * std::real(std::conj(phi_hat[i]) * phit_hat[i]);
  }
  return acc + eps * g.volume() * grad;
}

}  // namespace nsac
