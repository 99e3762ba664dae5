#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "nsac/errors.hpp"
#include "nsac/initial.hpp"
#include "nsac/model.hpp"
#include "nsac/norms.hpp"
#include "test_fields.hpp"

using namespace nsac;
using namespace nsac::testing;
using std::numbers::pi;

namespace {

PhysParams eos(double a, double gamma, double rho_bar = 1.0) {
  PhysParams p;
  p.pressure_a = a;
  p.pressure_gamma = gamma;
  p.rho_bar = rho_bar;
  return p;
}

// rho * int_{rho_bar}^{rho} (p(z) - p(rho_bar)) / z^2 dz
double g_oracle(double rho, const PhysParams& p) {
  const double pb = p.pressure_a * std::pow(p.rho_bar, p.pressure_gamma);
  auto f = [&](double z) { return (p.pressure_a * std::pow(z, p.pressure_gamma) - pb) / (z * z); };
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, p.rho_bar, rho, 15, 1e-14);
  return rho * v;
}

RealField spectral_d(const Grid& g, const RealField& f, int axis) {
  return derivative(SpectralField::from_physical(g, f), axis).to_physical();
}

/// Conservative-form right-hand side written directly from the two-phase
/// system: rho_t = -div(rho u), rho(u_t + u.grad u) = -grad p + viscous
/// - eps grad phi lap phi, rho(phi_t + u.grad phi) = -mu.
Fields direct_rhs(const State& s, const PhysParams& p) {
  const Grid& g = s.grid;
  const std::size_t n = g.size();
  const int dim = g.dim;
  Fields out = Fields::zeros(g);
  RealField rho(n);
  for (std::size_t j = 0; j < n; ++j) rho[j] = p.rho_bar + s.sigma[j];

  for (int a = 0; a < dim; ++a) {
    RealField flux(n);
    for (std::size_t j = 0; j < n; ++j) flux[j] = rho[j] * s.u[a][j];
    const auto d = spectral_d(g, flux, a);
    for (std::size_t j = 0; j < n; ++j) out.sigma[j] -= d[j];
  }
  std::vector<std::vector<RealField>> du(dim);
  RealField div(n, 0.0);
  for (int i = 0; i < dim; ++i) {
    for (int a = 0; a < dim; ++a) du[i].push_back(spectral_d(g, s.u[i], a));
    for (std::size_t j = 0; j < n; ++j) div[j] += du[i][i][j];
  }
  const auto phih = SpectralField::from_physical(g, s.phi);
  const auto lap_phi = laplacian(phih).to_physical();
  std::vector<RealField> dphi;
  for (int a = 0; a < dim; ++a) dphi.push_back(derivative(phih, a).to_physical());
  std::vector<RealField> dsig;
  for (int a = 0; a < dim; ++a) dsig.push_back(spectral_d(g, s.sigma, a));
  std::vector<RealField> grad_div;
  for (int a = 0; a < dim; ++a) grad_div.push_back(spectral_d(g, div, a));

  for (int i = 0; i < dim; ++i) {
    const auto lap_u = laplacian(SpectralField::from_physical(g, s.u[i])).to_physical();
    for (std::size_t j = 0; j < n; ++j) {
      double adv = 0.0;
      for (int a = 0; a < dim; ++a) adv += s.u[a][j] * du[i][a][j];
      const double pp = p.pressure_a * p.pressure_gamma * std::pow(rho[j], p.pressure_gamma - 1.0);
      out.u[i][j] = -adv - pp * dsig[i][j] / rho[j] +
                    (p.nu * lap_u[j] + (p.nu + p.lambda) * grad_div[i][j]) / rho[j] -
                    p.epsilon * dphi[i][j] * lap_phi[j] / rho[j];
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    double adv = 0.0;
    for (int a = 0; a < dim; ++a) adv += s.u[a][j] * dphi[a][j];
    const double phi = s.phi[j];
    const double mu = (phi * phi * phi - phi) / p.epsilon - p.epsilon / rho[j] * lap_phi[j];
    out.phi[j] = -adv - mu / rho[j];
  }
  return out;
}

State random_state(const Grid& g, double amp, std::uint64_t seed, int modes = 2) {
  std::uint64_t rng = seed;
  State s = State::equilibrium(g);
  auto fill = [&](RealField& f, double scale, double offset) {
    const RealField r = random_band_limited(g, modes, rng);
    for (std::size_t j = 0; j < f.size(); ++j) f[j] = offset + scale * r[j];
  };
  fill(s.sigma, amp, 0.0);
  for (auto& c : s.u) fill(c, amp, 0.0);
  fill(s.phi, amp, 0.0);
  const double top = *std::max_element(s.phi.begin(), s.phi.end());
  for (double& v : s.phi) v = 1.0 - (top - v);
  return s;
}

double max_field_diff(const Fields& a, const Fields& b, double& scale) {
  double m = max_abs_diff(a.sigma, b.sigma);
  scale = std::max({max_abs(b.sigma), max_abs(b.phi)});
  for (std::size_t d = 0; d < a.u.size(); ++d) {
    m = std::max(m, max_abs_diff(a.u[d], b.u[d]));
    scale = std::max(scale, max_abs(b.u[d]));
  }
  return std::max(m, max_abs_diff(a.phi, b.phi));
}

}  // namespace

TEST_CASE("PhysParams validation") {
  PhysParams p;
  CHECK_NOTHROW(p.validate());
  p.nu = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = {};
  p.lambda = -0.7;  // lambda + 2 nu / 3 < 0
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = {};
  p.pressure_gamma = 0.9;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
}

TEST_CASE("pressure law") {
  CHECK(pressure(1.5, eos(1, 2)) == doctest::Approx(2.25).epsilon(1e-15));
  CHECK(pressure(1.0, eos(1, 1)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rel_err(pressure(2.0, eos(1, 1.4)), std::exp(1.4 * std::log(2.0))) <= 1e-15);
  CHECK(pressure_prime(2.0, eos(1, 1.4)) > 0.0);
  CHECK_THROWS_AS(pressure(0.0, eos(1, 1.4)), VacuumError);
  CHECK_THROWS_AS(pressure_prime(-1.0, eos(1, 1.4)), VacuumError);
}

TEST_CASE("G potential against quadrature of its definition") {
  CHECK(g_potential(1.0, eos(1, 1)) == 0.0);
  CHECK(g_potential(2.0, eos(1, 1)) == doctest::Approx(2 * std::log(2.0) - 1).epsilon(1e-13));
  CHECK(g_potential(0.5, eos(1, 1)) == doctest::Approx(0.5 * std::log(0.5) + 0.5).epsilon(1e-13));
  CHECK(rel_err(g_oracle(2.0, eos(1, 1)), 0.386294361119891) <= 1e-12);
  for (double gamma : {1.0, 1.4, 5.0 / 3.0, 2.0, 3.0}) {
    for (double rb : {0.7, 1.0, 2.5}) {
      const PhysParams p = eos(1.3, gamma, rb);
      for (double f : {0.5, 0.6, 0.9, 0.99, 0.999, 1.001, 1.01, 1.2, 1.24, 1.26, 1.6, 2.0}) {
        const double rho = f * rb;
        const double g = g_potential(rho, p);
        CHECK(g > 0.0);
        CHECK(rel_err(g, g_oracle(rho, p)) <= 1e-10);
        // Comparable to (rho - rho_bar)^2 on the window.
        const double ratio = g / ((rho - rb) * (rho - rb));
        CHECK(ratio > 0.0);
        CHECK(ratio < 10.0 * pressure_prime(2 * rb, p) / rb);
      }
    }
  }
  CHECK_THROWS_AS(g_potential(0.0, eos(1, 1.4)), VacuumError);
}

TEST_CASE("G' against central differences") {
  for (double gamma : {1.0, 1.4, 2.0}) {
    const PhysParams p = eos(1, gamma);
    for (double rho : {0.6, 0.95, 1.05, 1.7}) {
      const double h = 1e-5;
      const double fd = (g_potential(rho + h, p) - g_potential(rho - h, p)) / (2 * h);
      CHECK(std::abs(g_potential_prime(rho, p) - fd) <= 1e-8);
    }
  }
}

TEST_CASE("chemical potential") {
  const Grid g = grid_of(2, 16);
  PhysParams p;
  State s = State::equilibrium(g);
  for (double& v : s.sigma) v = 0.3;
  CHECK(max_abs(chemical_potential(s, p)) == 0.0);
  for (double& v : s.phi) v = 0.0;
  CHECK(max_abs(chemical_potential(s, p)) == 0.0);

  SUBCASE("tanh profile against a fine-grid finite-difference Laplacian") {
    Grid g1 = grid_of(1, 512);
    PhysParams q;
    q.epsilon = 0.1;
    const double L = g1.length, w = std::sqrt(2.0) * q.epsilon;
    auto phi = [&](double x) { return std::tanh((x - 0.25 * L) / w) - std::tanh((x - 0.75 * L) / w) - 1.0; };
    State t = State::equilibrium(g1);
    for (std::size_t j = 0; j < t.phi.size(); ++j) t.phi[j] = phi(g1.coordinate(static_cast<int>(j)));
    const auto mu = chemical_potential(t, q);
    // Fourth-order stencil with spacing h/4.
    const double h = g1.spacing() / 4.0;
    double worst = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < mu.size(); ++j) {
      const double x = g1.coordinate(static_cast<int>(j));
      const double lap = (-phi(x + 2 * h) + 16 * phi(x + h) - 30 * phi(x) + 16 * phi(x - h) - phi(x - 2 * h)) / (12 * h * h);
      const double f = phi(x);
      const double ref = (f * f * f - f) / q.epsilon - q.epsilon * lap;
      worst = std::max(worst, std::abs(mu[j] - ref));
      // mu is a small difference of two O(1/eps) terms; compare on their scale.
      scale = std::max(scale, std::abs((f * f * f - f) / q.epsilon));
    }
    CHECK(worst <= 1e-6 * scale);
  }
}

TEST_CASE("capillary divergence") {
  const Grid g = grid_of(3, 16);
  PhysParams p;
  p.epsilon = 0.7;
  const RealField flat(g.size(), 0.4);
  for (const auto& c : capillary_divergence(g, flat, p)) CHECK(max_abs(c) == 0.0);

  const auto c1 = capillary_divergence(g, sample(g, [](double x, double, double) { return std::sin(x); }), p);
  const auto e1 = sample(g, [&](double x, double, double) { return 0.5 * p.epsilon * std::sin(2 * x); });
  CHECK(max_abs_diff(c1[0], e1) <= 1e-13);
  CHECK(max_abs(c1[1]) <= 1e-14);

  SUBCASE("tensor-divergence form") {
    const RealField phi = sample(g, [](double x, double y, double) { return std::sin(x) * std::sin(y); });
    const auto ph = SpectralField::from_physical(g, phi);
    std::vector<RealField> d;
    for (int a = 0; a < 3; ++a) d.push_back(derivative(ph, a).to_physical());
    const auto c = capillary_divergence(g, phi, p);
    for (int i = 0; i < 3; ++i) {
      RealField acc(g.size(), 0.0);
      for (int j = 0; j < 3; ++j) {
        RealField t(g.size());
        for (std::size_t q = 0; q < t.size(); ++q) {
          const double g2 = d[0][q] * d[0][q] + d[1][q] * d[1][q] + d[2][q] * d[2][q];
          t[q] = d[i][q] * d[j][q] - (i == j ? 0.5 * g2 : 0.0);
        }
        const auto dt = derivative(SpectralField::from_physical(g, t), j).to_physical();
        for (std::size_t q = 0; q < t.size(); ++q) acc[q] -= p.epsilon * dt[q];
      }
      CHECK(max_abs_diff(c[i], acc) <= 1e-8 * std::max(1.0, max_abs(acc)));
    }
  }
}

TEST_CASE("rhs at the equilibria is exactly zero") {
  for (double phase : {1.0, -1.0}) {
    const Grid g = grid_of(3, 16);
    ModelOptions o;
    o.phase_eq = phase;
    const Fields f = rhs(State::equilibrium(g, phase), PhysParams{}, o).total();
    CHECK(max_abs(f.sigma) == 0.0);
    for (const auto& c : f.u) CHECK(max_abs(c) == 0.0);
    CHECK(max_abs(f.phi) == 0.0);
  }
}

TEST_CASE("rhs linearization matches the heat-plus-reaction symbol") {
  const Grid g = grid_of(3, 16);
  PhysParams p;
  p.epsilon = 0.8;
  p.rho_bar = 1.3;
  const double delta = 1e-3;
  State s = State::equilibrium(g);
  s.phi = sample(g, [&](double x, double, double) { return 1.0 + delta * std::sin(x); });
  const Fields f = rhs(s, p, {}).total();
  const double rate = p.epsilon / (p.rho_bar * p.rho_bar) + 2.0 / (p.epsilon * p.rho_bar);
  RealField got = f.phi, expect(g.size());
  for (std::size_t j = 0; j < got.size(); ++j) {
    expect[j] = -rate * delta * std::sin(g.coordinate(g.point_index(j)[0]));
  }
  CHECK(max_abs_diff(got, expect) <= 10 * delta * delta);
}

TEST_CASE("split tendency equals the direct conservative-form evaluation") {
  for (int dim : {1, 2, 3}) {
    const Grid g = grid_of(dim, dim == 3 ? 16 : 32);
    PhysParams p;
    p.lambda = 0.3;
    p.epsilon = 0.6;
    p.pressure_gamma = 1.7;
    const State s = random_state(g, 0.05, 41 + dim, dim == 3 ? 3 : 5);
    ModelOptions o;
    o.dealias = false;
    for (bool react : {true, false}) {
      o.implicit_reaction = react;
      const Tendency t = rhs(s, p, o);
      double scale = 0.0;
      const double diff = max_field_diff(t.total(), direct_rhs(s, p), scale);
      CHECK(diff <= 1e-9 * scale);
    }
  }
}

TEST_CASE("mass tendency integrates to zero") {
  const Grid g = grid_of(3, 16);
  const State s = random_state(g, 0.1, 8, 4);
  const Fields f = rhs(s, PhysParams{}, {}).total();
  double sum = 0.0, l1 = 0.0;
  for (double v : f.sigma) {
    sum += v;
    l1 += std::abs(v);
  }
  CHECK(std::abs(sum) <= 1e-13 * l1);
}

TEST_CASE("inadmissible states raise structured errors") {
  const Grid g = grid_of(2, 16);
  State s = State::equilibrium(g);
  s.u[1][5] = std::numeric_limits<double>::quiet_NaN();
  try {
    rhs(s, PhysParams{}, {});
    FAIL("expected NonFiniteError");
  } catch (const NonFiniteError& e) {
    CHECK(e.field() == "u1");
  }
  State v = State::equilibrium(g);
  // A band-limited dip below zero density.
  v.sigma = sample(g, [](double x, double, double) { return -1.5 * std::cos(x); });
  CHECK_THROWS_AS(rhs(v, PhysParams{}, {}), VacuumError);
}

TEST_CASE("total energy components") {
  const Grid g = grid_of(3, 16);
  const double vol = g.volume();
  SUBCASE("equilibrium") {
    const EnergyReport e = total_energy(State::equilibrium(g), PhysParams{});
    CHECK(e.total == 0.0);
    CHECK(e.dissipation() == 0.0);
  }
  SUBCASE("uniform compression, gamma = 1") {
    State s = State::equilibrium(g);
    for (double& v : s.sigma) v = 1.0;
    const PhysParams p = eos(1, 1);
    const EnergyReport e = total_energy(s, p);
    CHECK(rel_err(e.g_part, vol * g_oracle(2.0, p)) <= 1e-12);
    CHECK(e.kinetic == 0.0);
    CHECK(e.gradient_part == 0.0);
  }
  SUBCASE("single velocity mode") {
    State s = State::equilibrium(g);
    s.u[0] = sample(g, [](double, double y, double) { return std::sin(y); });
    PhysParams p;
    p.nu = 0.7;
    const EnergyReport e = total_energy(s, p);
    CHECK(rel_err(e.kinetic, 0.5 * 0.5 * vol) <= 1e-13);
    CHECK(rel_err(e.diss_visc, p.nu * 0.5 * vol) <= 1e-13);
    CHECK(std::abs(e.diss_div) <= 1e-25);
    CHECK(e.total == doctest::Approx(e.kinetic + e.g_part + e.gradient_part + e.double_well).epsilon(1e-15));
  }
}

TEST_CASE("energy rate equals minus the dissipation") {
  const Grid g = grid_of(3, 64);
  PhysParams p;
  p.lambda = 0.2;
  const State s = random_state(g, 0.02, 77, 2);
  const double rate = energy_rate(s, p);
  const EnergyReport e = total_energy(s, p);
  CHECK(rel_err(rate, -e.dissipation()) <= 1e-6);
}
