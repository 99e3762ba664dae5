#include "nsac/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nsac/errors.hpp"

namespace nsac {
namespace {

bool modal_finite(const std::vector<Complex>& v) {
  for (const auto& c : v) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

std::string step_message(const std::string& field, long step, double t, const std::string& detail) {
  std::ostringstream os;
  os << "step " << step << " (t = " << t << "): " << field << ": " << detail;
  return os.str();
}

}  // namespace

void StepConfig::validate() const {
  if (!(dt > 0.0)) throw InvalidArgument("step.dt must be > 0");
  if (!(cfl > 0.0 && cfl < 1.0)) throw InvalidArgument("step.cfl must lie in (0, 1)");
  if (scheme_order != 1 && scheme_order != 2) {
    throw InvalidArgument("step.scheme_order must be 1 or 2");
  }
  if (max_steps < 0) throw InvalidArgument("step.max_steps must be >= 0");
  if (observe_every < 1) throw InvalidArgument("step.observe_every must be >= 1");
}

StepError::StepError(std::string field, long step, double t, const std::string& detail)
    : std::runtime_error(step_message(field, step, t, detail)),
      field_(std::move(field)),
      step_(step),
      t_(t) {}

double adaptive_dt(const State& state, const StepConfig& cfg, const PhysParams& params) {
  state.check_shape();
  double speed = 0.0;
  for (std::size_t j = 0; j < state.sigma.size(); ++j) {
    double u2 = 0.0;
    for (const auto& c : state.u) u2 += c[j] * c[j];
    const double c = std::sqrt(pressure_prime(params.rho_bar + state.sigma[j], params));
    speed = std::max(speed, std::sqrt(u2) + c);
  }
  const double bound = cfg.cfl * state.grid.spacing() / speed;
  return std::min(cfg.dt, bound);
}

ImexStepper::ImexStepper(const State& initial, PhysParams params, StepConfig cfg,
                         ModelOptions opts)
    : params_(params),
      cfg_(cfg),
      opts_(opts),
      op_(params, opts),
      explicit_(initial.grid, params, opts),
      x_(ModalState::from_state(initial, opts.phase_eq)),
      n_prev_(ModalState::zeros(initial.grid)),
      n_cur_(ModalState::zeros(initial.grid)) {
  cfg_.validate();
  if (opts_.dealias) {
    const FourierBasis& b = *x_.basis;
    auto cut = [&](std::vector<Complex>& v) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!b.retained(i)) v[i] = 0.0;
      }
    };
    cut(x_.sigma);
    for (auto& c : x_.u) cut(c);
    cut(x_.psi);
  }
}

State ImexStepper::state() const { return x_.to_state(opts_.phase_eq); }

void ImexStepper::explicit_terms(const ModalState& x, ModalState& out) {
  try {
    explicit_.evaluate(x, out);
  } catch (const VacuumError& e) {
    throw StepError("sigma", steps_, x.t, e.what());
  } catch (const NonFiniteError& e) {
    throw StepError(e.field(), steps_, x.t, e.what());
  }
}

void ImexStepper::implicit_update(ModalState& x, const ModalState& base,
                                  const ModalState& forcing, double dt) const {
  x = base;
  if (cfg_.scheme_order == 2) {
    x.axpy(0.5 * dt, op_.apply(base));
    x.axpy(dt, forcing);
    op_.solve(x, 0.5 * dt);
  } else {
    x.axpy(dt, forcing);
    op_.solve(x, dt);
  }
  x.t = base.t + dt;
}

void ImexStepper::advance(double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("ImexStepper::advance: dt must be > 0");
  explicit_terms(x_, n_cur_);
  ModalState next;
  if (cfg_.scheme_order == 1) {
    implicit_update(next, x_, n_cur_, dt);
  } else if (!have_history_) {
    ModalState pred;
    implicit_update(pred, x_, n_cur_, dt);
    ModalState n_pred = ModalState::zeros(x_.grid());
    explicit_terms(pred, n_pred);
    ModalState forcing = n_cur_;
    forcing.axpy(1.0, n_pred);
    forcing.scale(0.5);
    implicit_update(next, x_, forcing, dt);
  } else {
    const double omega = dt / dt_prev_;
    ModalState forcing = n_cur_;
    forcing.scale(1.0 + 0.5 * omega);
    forcing.axpy(-0.5 * omega, n_prev_);
    implicit_update(next, x_, forcing, dt);
  }
  std::swap(n_prev_, n_cur_);
  have_history_ = true;
  dt_prev_ = dt;
  x_ = std::move(next);
  ++steps_;
  check_invariants();
}

void ImexStepper::check_invariants() const {
  if (!modal_finite(x_.sigma)) throw StepError("sigma", steps_, x_.t, "non-finite value");
  static const char* unames[3] = {"u0", "u1", "u2"};
  for (std::size_t d = 0; d < x_.u.size(); ++d) {
    if (!modal_finite(x_.u[d])) throw StepError(unames[d], steps_, x_.t, "non-finite value");
  }
  if (!modal_finite(x_.psi)) throw StepError("phi", steps_, x_.t, "non-finite value");

  const Grid& g = x_.grid();
  std::vector<double> phys(g.size());
  x_.basis->inverse(x_.sigma, phys);
  const double rb = params_.rho_bar;
  for (std::size_t j = 0; j < phys.size(); ++j) {
    const double rho = rb + phys[j];
    if (!(rho >= 0.5 * rb && rho <= 2.0 * rb)) {
      std::ostringstream os;
      os << "density " << rho << " left [rho_bar/2, 2 rho_bar] at point " << j;
      throw StepError("sigma", steps_, x_.t, os.str());
    }
  }
  x_.basis->inverse(x_.psi, phys);
  for (std::size_t j = 0; j < phys.size(); ++j) {
    const double phi = opts_.phase_eq + phys[j];
    if (std::abs(phi) > 1.0 + cfg_.phase_tol) {
      std::ostringstream os;
      os << "|phi| = " << std::abs(phi) << " exceeds 1 + " << cfg_.phase_tol << " at point " << j;
      throw StepError("phi", steps_, x_.t, os.str());
    }
  }
}

State step(const State& state, const StepConfig& cfg, const PhysParams& params,
           const ModelOptions& opts) {
  ImexStepper s(state, params, cfg, opts);
  s.advance(cfg.dt);
  return s.state();
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::Completed: return "completed";
    case Termination::MaxSteps: return "max_steps";
    case Termination::StepFailed: return "step_failed";
    case Termination::SolverError: return "solver_error";
  }
  return "unknown";
}

RunSummary run(const State& initial, const StepConfig& cfg, const PhysParams& params,
               const std::vector<Observer>& observers, const ModelOptions& opts) {
  cfg.validate();
  params.validate();
  RunSummary summary;
  ImexStepper stepper(initial, params, cfg, opts);
  State snap = stepper.state();
  auto notify = [&](const State& s, long k) {
    for (const auto& obs : observers) obs(s, k);
  };
  notify(snap, 0);
  long last_observed = 0;
  const double t_tol = 1e-12 * std::max(1.0, std::abs(cfg.t_end));
  while (cfg.t_end - stepper.time() > t_tol) {
    if (stepper.steps() >= cfg.max_steps) {
      summary.reason = Termination::MaxSteps;
      break;
    }
    double dt = cfg.adaptive ? adaptive_dt(snap, cfg, params) : cfg.dt;
    dt = std::min(dt, cfg.t_end - stepper.time());
    try {
      stepper.advance(dt);
    } catch (const StepError& e) {
      summary.reason = Termination::StepFailed;
      summary.error = e.what();
      summary.failed_field = e.field();
      break;
    } catch (const std::exception& e) {
      summary.reason = Termination::SolverError;
      summary.error = e.what();
      break;
    }
    const bool observe = stepper.steps() % cfg.observe_every == 0;
    if (cfg.adaptive || observe) snap = stepper.state();
    if (observe) {
      notify(snap, stepper.steps());
      last_observed = stepper.steps();
    }
  }
  if (summary.reason == Termination::Completed || summary.reason == Termination::MaxSteps) {
    snap = stepper.state();
    if (last_observed != stepper.steps()) notify(snap, stepper.steps());
    summary.final_state = snap;
  } else {
    summary.final_state = stepper.state();
  }
  summary.steps = stepper.steps();
  summary.final_time = stepper.time();
  return summary;
}

}  // namespace nsac
