#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsac/model.hpp"

namespace nsac {

struct StepConfig {
  double dt = 0.05;          ///< requested (maximum) step
  double cfl = 0.4;          ///< advective/acoustic CFL target
  double t_end = 1.0;
  long max_steps = 1000000;
  int scheme_order = 2;      ///< 1: implicit/explicit Euler, 2: CN / AB2
  bool adaptive = true;      ///< clamp dt by the CFL bound each step
  long observe_every = 1;    ///< observer cadence in steps
  double phase_tol = 1e-6;   ///< allowed |phi| excess over 1

  /// Throws InvalidArgument unless dt > 0, 0 < cfl < 1, order in {1,2}.
  void validate() const;
};

/// Post-step invariant violation with the offending field and step.
class StepError : public std::runtime_error {
 public:
  StepError(std::string field, long step, double t, const std::string& detail);
  const std::string& field() const noexcept { return field_; }
  long step() const noexcept { return step_; }
  double time() const noexcept { return t_; }

 private:
  std::string field_;
  long step_;
  double t_;
};

/// dt = min(cfg.dt, cfl dx / max(|u| + sqrt(p'(rho)))).
double adaptive_dt(const State& state, const StepConfig& cfg, const PhysParams& params);

/// Multistep IMEX integrator owning one trajectory.
///
/// Order 2 is Crank-Nicolson on the stiff operator with variable-step
/// Adams-Bashforth-2 on the explicit terms; its first step is a
/// Crank-Nicolson/Heun predictor-corrector so the scheme self-starts at
/// second order. Order 1 is backward Euler / forward Euler.
class ImexStepper {
 public:
  ImexStepper(const State& initial, PhysParams params, StepConfig cfg, ModelOptions opts = {});

  /// Advances by dt and checks vacuum, density window, |phi| bound and NaN;
  /// throws StepError on violation (state is left at the failed step).
  void advance(double dt);

  State state() const;
  const ModalState& modal() const { return x_; }
  double time() const { return x_.t; }
  long steps() const { return steps_; }
  const PhysParams& params() const { return params_; }
  const StepConfig& config() const { return cfg_; }
  const ModelOptions& options() const { return opts_; }

 private:
  void explicit_terms(const ModalState& x, ModalState& out);
  void implicit_update(ModalState& x, const ModalState& base, const ModalState& forcing,
                       double dt) const;
  void check_invariants() const;

  PhysParams params_;
  StepConfig cfg_;
  ModelOptions opts_;
  LinearOperator op_;
  ExplicitTerms explicit_;
  ModalState x_;
  ModalState n_prev_;
  ModalState n_cur_;
  double dt_prev_ = 0.0;
  bool have_history_ = false;
  long steps_ = 0;
};

/// One self-starting step of size cfg.dt (no history carried over).
State step(const State& state, const StepConfig& cfg, const PhysParams& params,
           const ModelOptions& opts = {});

enum class Termination { Completed, MaxSteps, StepFailed, SolverError };
const char* to_string(Termination t);

struct RunSummary {
  long steps = 0;
  double final_time = 0.0;
  Termination reason = Termination::Completed;
  std::string error;             ///< message when the run failed
  std::string failed_field;      ///< StepError field, if any
  std::optional<State> final_state;
};

/// Observer callback: receives an immutable snapshot and the step index.
using Observer = std::function<void(const State&, long step)>;

/// Integrates to cfg.t_end (or cfg.max_steps), calling observers on the
/// initial state, every cfg.observe_every steps and on the final state.
/// Step errors end the run and are reported in the summary, not thrown.
RunSummary run(const State& initial, const StepConfig& cfg, const PhysParams& params,
               const std::vector<Observer>& observers, const ModelOptions& opts = {});

}  // namespace nsac
