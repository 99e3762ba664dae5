#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "nsac/decay_fit.hpp"
#include "nsac/errors.hpp"
#include "nsac/linear_oracle.hpp"
#include "nsac/quadrature.hpp"

using namespace nsac;
using cd = std::complex<double>;
using std::numbers::pi;

namespace {

PhysParams unit_params() {
  PhysParams p;
  p.pressure_gamma = 1.0;  // p'(rho_bar) = 1
  return p;
}

ModeAmplitudes random_mode(std::mt19937_64& gen, int dim) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  ModeAmplitudes m;
  m.sigma = {d(gen), d(gen)};
  for (int i = 0; i < dim; ++i) m.u.emplace_back(d(gen), d(gen));
  m.phi = {d(gen), d(gen)};
  return m;
}

double max_diff(const ModeAmplitudes& a, const ModeAmplitudes& b) {
  double m = std::max(std::abs(a.sigma - b.sigma), std::abs(a.phi - b.phi));
  for (std::size_t i = 0; i < a.u.size(); ++i) m = std::max(m, std::abs(a.u[i] - b.u[i]));
  return m;
}

using OdeState = std::vector<cd>;

/// Integrates y' = A y with an adaptive Dormand-Prince scheme.
OdeState ode_evolve(const Eigen::MatrixXcd& a, OdeState y, double t) {
  namespace ode = boost::numeric::odeint;
  auto sys = [&](const OdeState& x, OdeState& dx, double) {
    dx.assign(x.size(), cd{});
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = 0; j < x.size(); ++j) dx[i] += a(i, j) * x[j];
    }
  };
  ode::integrate_adaptive(ode::make_controlled<ode::runge_kutta_dopri5<OdeState>>(1e-14, 1e-14), sys, y,
                          0.0, t, 1e-3);
  return y;
}

}  // namespace

TEST_CASE("symbol at k = 0 vanishes") {
  const auto b = build_symbol({0.0, 0.0, 0.0}, PhysParams{});
  CHECK(b.acoustic_block.rows() == 4);
  CHECK(b.acoustic_block.norm() == 0.0);
  CHECK(b.phase_factor == 0.0);
}

TEST_CASE("symbol entries reproduce the linear operator") {
  PhysParams p;
  p.nu = 0.7;
  p.lambda = 0.4;
  p.rho_bar = 1.3;
  const std::vector<double> k = {1.0, -2.0, 0.5};
  const auto b = build_symbol(k, p);
  const double c2 = pressure_prime(p.rho_bar, p) / p.rho_bar;
  const double k2 = 1 + 4 + 0.25;
  for (int j = 0; j < 3; ++j) {
    CHECK(std::abs(b.acoustic_block(0, j + 1) - cd(0, -p.rho_bar * k[j])) <= 1e-15);
    CHECK(std::abs(b.acoustic_block(j + 1, 0) - cd(0, -c2 * k[j])) <= 1e-15);
    for (int i = 0; i < 3; ++i) {
      const double expect = -(p.nu / p.rho_bar) * k2 * (i == j) - (p.nu + p.lambda) / p.rho_bar * k[i] * k[j];
      CHECK(std::abs(b.acoustic_block(i + 1, j + 1) - expect) <= 1e-14);
    }
  }
  CHECK(b.phase_factor == doctest::Approx(-p.epsilon * k2 / (p.rho_bar * p.rho_bar)));
  const auto r = build_symbol(k, p, true);
  CHECK(r.phase_factor == doctest::Approx(b.phase_factor - 2.0 / (p.epsilon * p.rho_bar)));
}

TEST_CASE("critically damped longitudinal mode at unit parameters") {
  const auto b = build_symbol({1.0, 0.0, 0.0}, unit_params());
  // lambda^2 + ((2 nu + lambda)/rho_bar) |k|^2 lambda + p'(rho_bar) |k|^2 = lambda^2 + 2 lambda + 1
  const Eigen::Matrix2cd lon = b.acoustic_block.block<2, 2>(0, 0);
  CHECK(std::abs(lon.trace() - cd(-2.0, 0.0)) <= 1e-15);
  CHECK(std::abs(lon.determinant() - cd(1.0, 0.0)) <= 1e-15);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(b.acoustic_block);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(es.eigenvalues()(i) - cd(-1.0, 0.0)) <= 1e-6);
}

TEST_CASE("transverse velocity is an eigenvector") {
  PhysParams p;
  p.nu = 0.8;
  p.rho_bar = 1.7;
  const std::vector<double> k = {1.0, 2.0, 2.0};
  const auto b = build_symbol(k, p);
  Eigen::VectorXcd v(4);
  v << 0.0, 2.0, -1.0, 0.0;  // orthogonal to k
  const Eigen::VectorXcd av = b.acoustic_block * v;
  CHECK((av - (-(p.nu / p.rho_bar) * 9.0) * v).norm() <= 1e-13);
}

TEST_CASE("dissipativity of every mode") {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  PhysParams p;
  p.lambda = -0.5;
  for (int trial = 0; trial < 50; ++trial) {
    const auto b = build_symbol({d(gen), d(gen), d(gen)}, p);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(b.acoustic_block);
    for (int i = 0; i < 4; ++i) CHECK(es.eigenvalues()(i).real() <= 1e-12);
  }
}

TEST_CASE("expm2 against Eigen's matrix exponential") {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int trial = 0; trial < 40; ++trial) {
    Eigen::Matrix2cd m;
    m << cd(d(gen), d(gen)), cd(d(gen), d(gen)), cd(d(gen), d(gen)), cd(d(gen), d(gen));
    if (trial % 4 == 0) {
      // Nearly defective: eigenvalues within 1e-9 of each other.
      m << cd(-1.0, 0.0), cd(1.0, 0.0), cd(1e-18, 0.0), cd(-1.0, 0.0);
    }
    const double t = 0.1 + 0.1 * trial;
    const Eigen::Matrix2cd ref = (m * t).exp();
    CHECK((expm2(m, t) - ref).norm() <= 1e-12 * std::max(1.0, ref.norm()));
  }
}

TEST_CASE("evolve_mode") {
  SUBCASE("t = 0 is the identity") {
    std::mt19937_64 gen(1);
    const auto b = build_symbol({0.3, 1.0, -2.0}, PhysParams{});
    const auto m = random_mode(gen, 3);
    CHECK(max_diff(evolve_mode(b, m, 0.0), m) <= 1e-15);
  }
  SUBCASE("phase factor") {
    const auto b = build_symbol({2.0, 0.0, 0.0}, PhysParams{});
    ModeAmplitudes m{0.0, {0.0, 0.0, 0.0}, 1.0};
    CHECK(std::abs(evolve_mode(b, m, 0.5).phi - std::exp(-2.0)) <= 1e-15);
  }
  SUBCASE("matches an adaptive ODE integration of the full system") {
    std::mt19937_64 gen(8);
    PhysParams p;
    p.lambda = 0.3;
    p.rho_bar = 1.2;
    for (const auto& k : std::vector<std::vector<double>>{{1.0, 0.0, 0.0}, {0.3, -0.7, 1.1}, {2.0, 1.0, 0.0}, {0.05, 0.0, 0.02}}) {
      const auto b = build_symbol(k, p);
      const auto m = random_mode(gen, 3);
      for (double t : {0.3, 1.7, 5.0}) {
        const auto got = evolve_mode(b, m, t);
        OdeState y = {m.sigma, m.u[0], m.u[1], m.u[2]};
        y = ode_evolve(b.acoustic_block, y, t);
        ModeAmplitudes ref{y[0], {y[1], y[2], y[3]}, m.phi * std::exp(b.phase_factor * t)};
        CHECK(max_diff(got, ref) <= 1e-10);
      }
    }
  }
  SUBCASE("semigroup property") {
    std::mt19937_64 gen(9);
    const auto b = build_symbol({0.4, 1.3, -0.2}, PhysParams{}, true);
    const auto m = random_mode(gen, 3);
    const auto two = evolve_mode(b, evolve_mode(b, m, 0.8), 1.9);
    CHECK(max_diff(two, evolve_mode(b, m, 2.7)) <= 1e-10);
  }
  SUBCASE("dissipative energy is non-increasing") {
    std::mt19937_64 gen(10);
    PhysParams p;
    p.rho_bar = 0.8;
    const double w = pressure_prime(p.rho_bar, p) / (p.rho_bar * p.rho_bar);
    const auto b = build_symbol({0.2, -0.1, 0.4}, p);
    const auto m = random_mode(gen, 3);
    double prev = INFINITY;
    for (int i = 0; i <= 200; ++i) {
      const auto e = evolve_mode(b, m, 0.05 * i);
      double q = w * std::norm(e.sigma);
      for (const auto& c : e.u) q += std::norm(c);
      CHECK(q <= prev * (1 + 1e-14));
      prev = q;
    }
  }
  SUBCASE("two-dimensional blocks") {
    std::mt19937_64 gen(3);
    const auto b = build_symbol({1.0, 1.0}, PhysParams{});
    const auto m = random_mode(gen, 2);
    OdeState y = {m.sigma, m.u[0], m.u[1]};
    y = ode_evolve(b.acoustic_block, y, 2.0);
    const auto got = evolve_mode(b, m, 2.0);
    CHECK(std::abs(got.sigma - y[0]) <= 1e-10);
    CHECK(std::abs(got.u[1] - y[2]) <= 1e-10);
  }
}

TEST_CASE("data profiles") {
  const auto p = DataProfile::power_law(1.0);
  CHECK(p.exponent() == doctest::Approx(-0.49));
  CHECK(p.amplitude(0.5) == doctest::Approx(std::pow(0.5, -0.49)));
  CHECK(p.amplitude(1.5) == 0.0);
  CHECK(DataProfile::l1_type().amplitude(0.3) == 1.0);
  CHECK_THROWS_AS(DataProfile::power_law(1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(DataProfile::power_law(1.6), InvalidArgument);
  CHECK(parse_component("acoustic") == Component::Acoustic);
  CHECK_THROWS_AS(parse_component("rho"), InvalidArgument);
}

TEST_CASE("decay_norm of the heat component") {
  const PhysParams p;
  const double oracle = 4 * pi * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                                     [](double r) { return std::exp(-2 * r * r) * r * r; }, 0.0, 1.0, 10, 1e-15);
  // int_0^1 r^2 exp(-a r^2) dr = sqrt(pi) erf(sqrt(a)) / (4 a^1.5) - exp(-a) / (2a), a = 2
  const double closed = 4 * pi * (std::sqrt(pi) * std::erf(std::sqrt(2.0)) / (4 * std::pow(2.0, 1.5)) - std::exp(-2.0) / 4);
  CHECK(std::abs(oracle - closed) <= 1e-13);
  const double n = decay_norm(0, 1.0, DataProfile::l1_type(), Component::Phi, p);
  CHECK(std::abs(n - oracle) <= 1e-8 * oracle);
}

TEST_CASE("decay_norm at t = 0 is the data norm") {
  const PhysParams p;
  for (int l = 0; l <= 3; ++l) {
    for (double s : {0.5, 1.0, 1.49}) {
      const auto prof = DataProfile::power_law(s);
      const double a = prof.exponent();
      const double data = 4 * pi / (2 * l + 2 * a + 3);
      CHECK(std::abs(decay_norm(l, 0.0, prof, Component::Phi, p) - data) <= 1e-8 * data);
      CHECK(std::abs(decay_norm(l, 0.0, prof, Component::Sigma, p) - data) <= 1e-8 * data);
      CHECK(std::abs(decay_norm(l, 0.0, prof, Component::Acoustic, p) - 2 * data) <= 1e-8 * data);
    }
  }
}

TEST_CASE("decay_norm angular reduction against a direct (r, theta) integral") {
  PhysParams p;
  p.lambda = 0.4;
  p.rho_bar = 1.1;
  const auto prof = DataProfile::power_law(1.0);
  const int l = 1;
  const double t = 2.0;
  // sigma0 = f, u0 = f e_z, integrate |w(t)|^2 |xi|^{2l} over the ball.
  auto shell = [&](double r, Component c) {
    auto inner = [&](double th) {
      const auto b = build_symbol({r * std::sin(th), 0.0, r * std::cos(th)}, p);
      const double f = prof.amplitude(r);
      const auto m = evolve_mode(b, ModeAmplitudes{f, {0.0, 0.0, f}, f}, t);
      double v = 0.0;
      if (c != Component::U) v += std::norm(m.sigma);
      if (c != Component::Sigma) {
        for (const auto& x : m.u) v += std::norm(x);
      }
      return v * std::sin(th);
    };
    const double ang = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(inner, 0.0, pi, 8, 1e-13);
    return 2 * pi * ang * std::pow(r, 2 * l + 2);
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  for (Component c : {Component::Sigma, Component::U, Component::Acoustic}) {
    const double ref = ts.integrate([&](double r) { return shell(r, c); }, 0.0, 1.0, 1e-12);
    CHECK(std::abs(decay_norm(l, t, prof, c, p) - ref) <= 1e-7 * ref);
  }
}

TEST_CASE("decay_norm is positive and decreasing") {
  const PhysParams p;
  for (Component c : {Component::Phi, Component::Sigma, Component::U, Component::Acoustic}) {
    double prev = INFINITY;
    for (double t : {0.0, 1.0, 10.0, 100.0, 1000.0, 10000.0}) {
      const double n = decay_norm(1, t, DataProfile::power_law(0.5), c, p);
      CHECK(n > 0.0);
      CHECK(n < prev);
      prev = n;
    }
  }
  CHECK_THROWS_AS(decay_norm(4, 1.0, DataProfile::l1_type(), Component::Phi, p), InvalidArgument);
}

TEST_CASE("L1-type heat slope") {
  const PhysParams p;
  Series series;
  for (double t : log_spaced(1e2, 1e4, 41)) series.emplace_back(t, decay_norm(0, t, DataProfile::l1_type(), Component::Phi, p));
  const auto fit = fit_exponent(series, {1e2, 1e4});
  CHECK(std::abs(fit.exponent + 1.5) <= 0.05);
}

TEST_CASE("exponent table for the phase and acoustic components") {
  const PhysParams p;
  for (int l = 0; l <= 2; ++l) {
    for (double s : {0.5, 1.0, 1.49}) {
      for (Component c : {Component::Phi, Component::Acoustic}) {
        Series series;
        for (double t : log_spaced(1e2, 1e4, 21)) series.emplace_back(t, decay_norm(l, t, DataProfile::power_law(s), c, p));
        const auto fit = fit_exponent(series, {1e2, 1e4});
        const double tol = c == Component::Phi ? 0.1 : 0.15;
        CHECK(std::abs(fit.exponent + (l + s)) <= tol);
      }
    }
  }
}

TEST_CASE("own adaptive quadrature against Boost") {
  auto f = [](double x) { return std::pow(x, -0.4) * std::cos(30 * x); };
  const auto r = integrate(f, 0.0, 1.0, QuadratureOptions{1e-11, 0.0, 4000}, {});
  boost::math::quadrature::tanh_sinh<double> ts;
  const double ref = ts.integrate(f, 0.0, 1.0, 1e-13);
  CHECK(std::abs(r.value - ref) <= 1e-9 * std::abs(ref));
  QuadratureOptions tight{1e-15, 0.0, 3};
  CHECK_THROWS_AS(integrate(f, 0.0, 1.0, tight, {}), QuadratureError);
}
