#include "nsac/state.hpp"

#include <cmath>

#include "nsac/errors.hpp"

namespace nsac {

Fields Fields::zeros(const Grid& grid) {
  Fields f;
  f.sigma.assign(grid.size(), 0.0);
  f.u.assign(static_cast<std::size_t>(grid.dim), RealField(grid.size(), 0.0));
  f.phi.assign(grid.size(), 0.0);
  return f;
}

Fields& Fields::operator+=(const Fields& other) {
  auto add = [](RealField& a, const RealField& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  };
  add(sigma, other.sigma);
  for (std::size_t d = 0; d < u.size(); ++d) add(u[d], other.u[d]);
  add(phi, other.phi);
  return *this;
}

Fields& Fields::operator*=(double s) {
  for (auto& v : sigma) v *= s;
  for (auto& c : u) {
    for (auto& v : c) v *= s;
  }
  for (auto& v : phi) v *= s;
  return *this;
}

State State::equilibrium(const Grid& grid, double phase) {
  grid.validate();
  State s;
  s.grid = grid;
  s.sigma.assign(grid.size(), 0.0);
  s.u.assign(static_cast<std::size_t>(grid.dim), RealField(grid.size(), 0.0));
  s.phi.assign(grid.size(), phase);
  return s;
}

void State::check_shape() const {
  const std::size_t n = grid.size();
  bool ok = sigma.size() == n && phi.size() == n &&
            u.size() == static_cast<std::size_t>(grid.dim);
  for (const auto& c : u) ok = ok && c.size() == n;
  if (!ok) throw InvalidArgument("State: field sizes do not match the grid");
}

RangeViolation density_window_violation(const State& state, const PhysParams& params) {
  const double lo = 0.5 * params.rho_bar;
  const double hi = 2.0 * params.rho_bar;
  for (std::size_t i = 0; i < state.sigma.size(); ++i) {
    const double rho = params.rho_bar + state.sigma[i];
    if (!(rho >= lo && rho <= hi)) return {true, i, rho};
  }
  return {};
}

RangeViolation phase_bound_violation(const State& state, double tol) {
  RangeViolation worst;
  double excess = 0.0;
  for (std::size_t i = 0; i < state.phi.size(); ++i) {
    const double e = std::abs(state.phi[i]) - 1.0;
    if (e > tol && e > excess) {
      excess = e;
      worst = {true, i, state.phi[i]};
    }
  }
  return worst;
}

const char* first_nonfinite_field(const State& state) {
  auto bad = [](const RealField& f) {
    for (double v : f) {
      if (!std::isfinite(v)) return true;
    }
    return false;
  };
  if (bad(state.sigma)) return "sigma";
  static const char* names[3] = {"u0", "u1", "u2"};
  for (std::size_t d = 0; d < state.u.size(); ++d) {
    if (bad(state.u[d])) return names[d];
  }
  if (bad(state.phi)) return "phi";
  return "";
}

}  // namespace nsac
