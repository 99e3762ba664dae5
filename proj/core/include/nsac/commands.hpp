#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "nsac/config.hpp"

namespace nsac {

/// Runs the configured trajectory with diagnostics observers and writes the
/// CSV series, final snapshot and JSON summary. Returns 0 when the run
/// completed with all invariants intact, 1 otherwise.
int cmd_simulate(const RunConfig& cfg, std::ostream& log);

/// Evaluates the linear-oracle decay norms on a log-spaced time grid, writes
/// them as CSV (one column per component/l/s) and fits each series.
/// Returns 0 when every fit passes.
int cmd_linear_decay(const RunConfig& cfg, std::ostream& log);

struct PropertyResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Operator, inequality and solver property suite. With
/// cfg.verify.inject_fault = "no-dealias" the model runs without the
/// two-thirds filter.
std::vector<PropertyResult> verify_properties(const RunConfig& cfg);

/// Prints one PASS/FAIL line per property; returns 1 if any failed.
int cmd_verify(const RunConfig& cfg, std::ostream& log);

/// Fits column cfg.fit.column of the CSV cfg.fit.input against -(l+s).
int cmd_fit(const RunConfig& cfg, std::ostream& log);

}  // namespace nsac
