#include "nsac/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

#include "nsac/diagnostics.hpp"
#include "nsac/errors.hpp"
#include "nsac/initial.hpp"
#include "nsac/integrator.hpp"
#include "nsac/linear_oracle.hpp"
#include "nsac/norms.hpp"
#include "nsac/output.hpp"

namespace nsac {
namespace {

ModelOptions model_options(const RunConfig& cfg) {
  ModelOptions opts = cfg.model;
  opts.phase_eq = cfg.ic.phase;
  return opts;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

/// Step-by-step energy, dissipation and invariant bookkeeping.
struct TrajectoryLedger {
  explicit TrajectoryLedger(const PhysParams& p, double phase_tol) : monitor(p, phase_tol) {}

  InvariantMonitor monitor;
  bool started = false;
  double e0 = 0.0;
  double e_prev = 0.0;
  double d_prev = 0.0;
  double t_prev = 0.0;
  double max_rise = 0.0;  ///< largest E_{n+1} - E_n
  double dissipated = 0.0;

  void observe(const State& s, const EnergyReport& e) {
    monitor.check(s);
    const double d = e.dissipation();
    if (!started) {
      started = true;
      e0 = e.total;
    } else {
      max_rise = std::max(max_rise, e.total - e_prev);
      dissipated += 0.5 * (d + d_prev) * (s.t - t_prev);
    }
    e_prev = e.total;
    d_prev = d;
    t_prev = s.t;
  }
  bool energy_monotone() const { return max_rise <= 1e-10 * e0; }
};

}  // namespace

int cmd_simulate(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const State initial = make_initial(cfg);
  const ModelOptions opts = model_options(cfg);
  const PhysParams& params = cfg.phys;

  CsvWriter csv(cfg.out.csv, csv_columns(cfg.diag.s_list));
  TrajectoryLedger ledger(params, cfg.step.phase_tol);
  std::map<int, Series> level_series;
  double last_row_t = -1.0;
  long last_row_step = -1;

  auto write_row = [&](const State& s, long step) {
    csv.row(csv_values(diagnostics_row(s, params, cfg.diag.s_list)));
    for (int l : cfg.diag.l_list) level_series[l].emplace_back(s.t, level_energy(s, l).combined());
    last_row_t = s.t;
    last_row_step = step;
  };
  Observer obs = [&](const State& s, long step) {
    ledger.observe(s, energy_ledger(s, params));
    if (step % cfg.diag.every == 0) write_row(s, step);
  };

  StepConfig step_cfg = cfg.step;
  step_cfg.observe_every = 1;
  const RunSummary summary = run(initial, step_cfg, params, {obs}, opts);
  if (summary.final_state && summary.steps != last_row_step) {
    const State& fin = *summary.final_state;
    if (summary.reason != Termination::Completed && summary.reason != Termination::MaxSteps) {
      ledger.monitor.check(fin);
    }
    if (fin.t != last_row_t || summary.steps != last_row_step) write_row(fin, summary.steps);
  }
  if (summary.final_state) write_snapshot(cfg.out.snapshot, *summary.final_state);

  RunSummaryData data;
  data.termination = to_string(summary.reason);
  data.error = summary.error;
  data.failed_field = summary.failed_field;
  data.steps = summary.steps;
  data.final_time = summary.final_time;
  data.energy_monotone = ledger.energy_monotone();
  data.max_principle = ledger.monitor.max_phi_excess() <= cfg.step.phase_tol &&
                       summary.failed_field != "phi";
  data.mass_conserved = ledger.monitor.max_mass_drift() <= 1e-12;
  data.max_energy_increase = ledger.e0 > 0.0 ? ledger.max_rise / ledger.e0 : ledger.max_rise;
  data.max_mass_drift = ledger.monitor.max_mass_drift();
  data.max_phi_excess = ledger.monitor.max_phi_excess();
  data.initial_energy = ledger.e0;
  data.cumulative_dissipation = ledger.dissipated;
  data.config_text = to_text(cfg);

  for (const auto& [l, series] : level_series) {
    FitWindow w = cfg.diag.window;
    if (!(w.t_hi > w.t_lo)) {
      // Skip t = 0; the (1+t) law is about the tail.
      w.t_lo = cfg.step.t_end * 0.1;
      w.t_hi = cfg.step.t_end;
    }
    for (double s : cfg.diag.s_list) {
      try {
        const DecayFit f = decay_suite(series, l, s, cfg.diag.tol, w);
        data.decay_fits.push_back({"level_energy", l, s, f.exponent, f.target, f.r2, f.contaminated,
                                   f.pass && !f.contaminated});
      } catch (const InvalidArgument& e) {
        log << "decay fit l=" << l << " s=" << s << " skipped: " << e.what() << "\n";
      }
    }
  }
  write_text_file(cfg.out.summary, summary_json(data));

  log << "termination: " << data.termination << " after " << data.steps << " steps, t = "
      << fmt(data.final_time) << "\n";
  if (!data.error.empty()) log << "error: " << data.error << "\n";
  log << "energy_monotone: " << (data.energy_monotone ? "true" : "false")
      << "  max_principle: " << (data.max_principle ? "true" : "false")
      << "  mass_conserved: " << (data.mass_conserved ? "true" : "false") << "\n";
  const bool ok = summary.reason == Termination::Completed && data.energy_monotone &&
                  data.max_principle && data.mass_conserved && !ledger.monitor.ever_violated();
  return ok ? 0 : 1;
}

int cmd_linear_decay(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const auto& lin = cfg.linear;
  const auto times = log_spaced(lin.t_lo, lin.t_hi, lin.samples);
  const bool l1 = lin.profile == "l1";
  const std::vector<double> s_values = l1 ? std::vector<double>{1.5} : lin.s_list;

  std::vector<std::string> columns = {"t"};
  std::vector<std::vector<double>> cols;
  RunSummaryData data;
  data.termination = "completed";
  bool all_pass = true;
  log << std::left << std::setw(10) << "component" << std::setw(4) << "l" << std::setw(8) << "s"
      << std::setw(12) << "exponent" << std::setw(10) << "target" << std::setw(12) << "r2"
      << "verdict\n";
  for (const auto& name : lin.components) {
    const Component comp = parse_component(name);
    const double tol = comp == Component::Phi ? lin.tol_phi : lin.tol_acoustic;
    for (int l : lin.l_list) {
      for (double s : s_values) {
        const DataProfile profile = l1 ? DataProfile::l1_type() : DataProfile::power_law(s, lin.offset);
        Series series;
        std::vector<double> col;
        for (double t : times) {
          const double v = decay_norm(l, t, profile, comp, cfg.phys);
          series.emplace_back(t, v);
          col.push_back(v);
        }
        const DecayFit f = decay_suite(series, l, s, tol, {lin.t_lo, lin.t_hi});
        columns.push_back(std::string(to_string(comp)) + "_l" + std::to_string(l) + "_s" + shortest(s));
        cols.push_back(std::move(col));
        data.decay_fits.push_back({to_string(comp), l, s, f.exponent, f.target, f.r2, f.contaminated, f.pass});
        all_pass = all_pass && f.pass;
        log << std::setw(10) << to_string(comp) << std::setw(4) << l << std::setw(8) << fmt(s)
            << std::setw(12) << fmt(f.exponent) << std::setw(10) << fmt(f.target) << std::setw(12)
            << fmt(f.r2) << (f.pass ? "PASS" : "FAIL") << "\n";
      }
    }
  }
  CsvWriter csv(lin.csv, columns);
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::vector<double> row = {times[i]};
    for (const auto& c : cols) row.push_back(c[i]);
    csv.row(row);
  }
  data.config_text = to_text(cfg);
  write_text_file(cfg.out.summary, summary_json(data));
  return all_pass ? 0 : 1;
}

namespace {

double rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return den > 0.0 ? num / den : num;
}

PropertyResult prop(std::string name, bool pass, std::string detail) {
  return {std::move(name), pass, std::move(detail)};
}

}  // namespace

std::vector<PropertyResult> verify_properties(const RunConfig& cfg) {
  cfg.validate();
  Grid g = cfg.grid;
  g.n = cfg.verify.n;
  g.validate();
  std::vector<PropertyResult> out;
  std::uint64_t rng = cfg.ic.seed;
  const int band = std::max(1, g.n / 4);

  {  // inverse(forward(f)) = f
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
      std::vector<double> f(g.size());
      std::mt19937_64 gen(rng + static_cast<std::uint64_t>(i));
      for (double& v : f) v = static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5;
      worst = std::max(worst, rel_diff(SpectralField::from_physical(g, f).to_physical(), f));
    }
    out.push_back(prop("fft_round_trip", worst <= 1e-12, "max rel error " + fmt(worst)));
  }
  {  // physical quadrature = mode sum
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
      const auto f = random_band_limited(g, band, rng);
      double phys = 0.0;
      for (double v : f) phys += v * v;
      phys *= g.cell_volume();
      const double n0 = sobolev_norm(SpectralField::from_physical(g, f), 0);
      worst = std::max(worst, std::abs(phys - n0 * n0) / phys);
    }
    out.push_back(prop("parseval", worst <= 1e-12, "max rel error " + fmt(worst)));
  }
  {  // Lambda^s Lambda^-s = id on zero-mean fields
    double worst = 0.0;
    const auto f = SpectralField::from_physical(g, random_band_limited(g, band, rng));
    for (double s : {0.5, 1.0, 1.5}) {
      const auto back = fractional_laplacian(fractional_laplacian(f, s), -s);
      worst = std::max(worst, rel_diff(back.to_physical(), f.to_physical()));
    }
    out.push_back(prop("fractional_inverse", worst <= 1e-12, "max rel error " + fmt(worst)));
  }
  {  // interpolation: equality on single modes, inequality otherwise
    double eq_err = 0.0;
    bool ineq = true;
    std::vector<double> f(g.size());
    for (std::size_t j = 0; j < f.size(); ++j) f[j] = std::sin(2.0 * g.coordinate(g.point_index(j)[0]) * g.wavenumber_unit());
    const auto single = SpectralField::from_physical(g, f);
    for (int l = 0; l <= 2; ++l) {
      for (double s : {0.5, 1.0, 1.4}) {
        const auto sides = interpolation_check(single, l, s);
        eq_err = std::max(eq_err, std::abs(sides.lhs - sides.rhs) / sides.rhs);
      }
    }
    for (int i = 0; i < 8; ++i) {
      const auto r = SpectralField::from_physical(g, random_band_limited(g, band, rng));
      for (int l = 0; l <= 2; ++l) {
        const auto sides = interpolation_check(r, l, 0.5 + 0.1 * i);
        ineq = ineq && sides.lhs <= sides.rhs * (1.0 + 1e-12);
      }
    }
    out.push_back(prop("interpolation_single_mode", eq_err <= 1e-12, "max rel gap " + fmt(eq_err)));
    out.push_back(prop("interpolation_inequality", ineq, ineq ? "lhs <= rhs on all samples" : "lhs > rhs found"));
  }
  {  // GN ratio ensembles: finite and seed-stable
    const GnExponents e{1, 2.0, 0, 2.0, 2, 2.0, 0.5};
    auto ensemble_max = [&](const GnExponents& ex, std::uint64_t seed) {
      double m = 0.0;
      for (int i = 0; i < 100; ++i) {
        const auto f = SpectralField::from_physical(g, random_band_limited(g, std::min(8, band), seed));
        m = std::max(m, gn_ratio(f, ex));
      }
      return m;
    };
    std::vector<double> maxima;
    bool finite = true;
    for (int sd = 0; sd < cfg.verify.seeds; ++sd) {
      const double m = ensemble_max(e, cfg.ic.seed + 1000u * static_cast<std::uint64_t>(sd + 1));
      finite = finite && std::isfinite(m);
      maxima.push_back(m);
    }
    const double hi = *std::max_element(maxima.begin(), maxima.end());
    const double lo = *std::min_element(maxima.begin(), maxima.end());
    const double spread = (hi - lo) / hi;
    out.push_back(prop("gn_ratio_ensemble", finite && spread <= 0.05,
                       "max ratio " + fmt(hi) + ", seed spread " + fmt(spread)));
  }
  {  // Composition estimate ||grad h(sigma)|| <= max|h'| ||grad sigma||
    const PhysParams& p = cfg.phys;
    auto sig = random_band_limited(g, 2, rng);
    double amax = 0.0;
    for (double v : sig) amax = std::max(amax, std::abs(v));
    for (double& v : sig) v *= 0.4 * p.rho_bar / amax;
    std::vector<double> h(sig.size());
    double ch = 0.0;
    for (std::size_t j = 0; j < h.size(); ++j) {
      const double rho = p.rho_bar + sig[j];
      h[j] = 1.0 / (rho * rho) - 1.0 / (p.rho_bar * p.rho_bar);
      ch = std::max(ch, 2.0 / (rho * rho * rho));
    }
    const double lhs = sobolev_norm(SpectralField::from_physical(g, h), 1);
    const double rhs = ch * sobolev_norm(SpectralField::from_physical(g, sig), 1);
    out.push_back(prop("composition_bound", lhs <= rhs, "ratio " + fmt(lhs / rhs)));
  }

  ModelOptions opts;
  opts.dealias = cfg.verify.inject_fault != "no-dealias";
  opts.implicit_reaction = cfg.model.implicit_reaction;
  {  // equilibria are steady
    double worst = 0.0;
    for (double phase : {1.0, -1.0}) {
      ModelOptions o = opts;
      o.phase_eq = phase;
      StepConfig sc;
      sc.dt = 0.1;
      const State eq = State::equilibrium(g, phase);
      const State next = step(eq, sc, cfg.phys, o);
      worst = std::max(worst, rel_diff(next.phi, eq.phi));
      for (double v : next.sigma) worst = std::max(worst, std::abs(v));
      for (const auto& c : next.u) {
        for (double v : c) worst = std::max(worst, std::abs(v));
      }
      const Fields r = rhs(eq, cfg.phys, o).total();
      for (double v : r.sigma) worst = std::max(worst, std::abs(v));
      for (double v : r.phi) worst = std::max(worst, std::abs(v));
    }
    out.push_back(prop("steady_state", worst == 0.0, "max deviation " + fmt(worst)));
  }
  {  // explicit products stay inside the two-thirds band
    RunConfig c = cfg;
    c.grid = g;
    c.ic.kind = "random_perturbation";
    c.ic.delta = 0.05;
    c.ic.max_mode = std::max(1, g.n / 3 - 1);
    const State s = make_initial(c);
    ExplicitTerms terms(g, cfg.phys, opts);
    ModalState x = ModalState::from_state(s, 1.0);
    ModalState nl = ModalState::zeros(g);
    terms.evaluate(x, nl);
    const FourierBasis& b = *x.basis;
    double outside = 0.0, total = 0.0;
    auto tally = [&](const std::vector<Complex>& v) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        const double p = b.multiplicity(i) * std::norm(v[i]);
        total += p;
        if (!b.retained(i)) outside += p;
      }
    };
    tally(nl.sigma);
    for (const auto& u : nl.u) tally(u);
    tally(nl.psi);
    const double frac = total > 0.0 ? outside / total : 0.0;
    out.push_back(prop("alias_free_products", frac == 0.0, "power outside band " + fmt(frac)));
  }
  {  // short nonlinear run: energy, mass, maximum principle
    RunConfig c = cfg;
    c.grid = g;
    c.ic.kind = "random_perturbation";
    c.ic.delta = 1e-2;
    c.ic.max_mode = std::max(1, std::min(3, g.n / 3 - 1));
    const State s0 = make_initial(c);
    StepConfig sc;
    sc.dt = 0.02;
    sc.t_end = 0.5;
    TrajectoryLedger ledger(cfg.phys, sc.phase_tol);
    const auto summary = run(s0, sc, cfg.phys,
                             {[&](const State& s, long) { ledger.observe(s, energy_ledger(s, cfg.phys)); }},
                             opts);
    const bool completed = summary.reason == Termination::Completed;
    out.push_back(prop("energy_monotone", completed && ledger.energy_monotone(),
                       "max rise / E0 " + fmt(ledger.e0 > 0 ? ledger.max_rise / ledger.e0 : 0.0)));
    out.push_back(prop("mass_conserved", completed && ledger.monitor.max_mass_drift() <= 1e-12,
                       "max drift " + fmt(ledger.monitor.max_mass_drift())));
    out.push_back(prop("max_principle", completed && ledger.monitor.max_phi_excess() <= sc.phase_tol,
                       "max |phi| excess " + fmt(ledger.monitor.max_phi_excess())));
  }
  return out;
}

int cmd_verify(const RunConfig& cfg, std::ostream& log) {
  const auto results = verify_properties(cfg);
  bool ok = true;
  for (const auto& r : results) {
    log << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    ok = ok && r.pass;
  }
  log << (ok ? "all properties pass" : "property failures detected") << "\n";
  return ok ? 0 : 1;
}

int cmd_fit(const RunConfig& cfg, std::ostream& log) {
  if (cfg.fit.input.empty()) throw ConfigError("fit.input is required");
  const CsvTable table = read_csv(cfg.fit.input);
  const std::size_t tc = table.column("t");
  const std::size_t vc = table.column(cfg.fit.column);
  Series series;
  for (const auto& row : table.rows) series.emplace_back(row[tc], row[vc]);
  const DecayFit f = decay_suite(series, cfg.fit.l, cfg.fit.s, cfg.fit.tol, cfg.fit.window);
  log << "column: " << cfg.fit.column << "\n"
      << "window: [" << fmt(f.window.t_lo) << ", " << fmt(f.window.t_hi) << "], " << f.samples
      << " samples\n"
      << "exponent: " << shortest(f.exponent) << "\n"
      << "prefactor: " << shortest(f.prefactor) << "\n"
      << "r2: " << shortest(f.r2) << "\n"
      << "early/late slope: " << fmt(f.early_slope) << " / " << fmt(f.late_slope) << "\n"
      << "target: " << shortest(f.target) << "\n"
      << "contaminated: " << (f.contaminated ? "true" : "false") << "\n"
      << "verdict: " << (f.pass ? "PASS" : "FAIL") << "\n";
  return f.pass ? 0 : 1;
}

}  // namespace nsac
