#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nsac/decay_fit.hpp"
#include "nsac/grid.hpp"
#include "nsac/integrator.hpp"
#include "nsac/model.hpp"
#include "nsac/physics.hpp"

namespace nsac {

struct IcSpec {
  /// equilibrium | random_perturbation | tanh_interface | manufactured
  std::string kind = "equilibrium";
  double delta = 1e-2;
  int max_mode = 3;
  std::uint64_t seed = 1;
  double width = 0.25;  ///< tanh_interface width
  double phase = 1.0;   ///< far-field phase for equilibrium / perturbations
};

struct DiagSpec {
  std::vector<double> s_list{0.5, 1.0};
  std::vector<int> l_list{0, 1, 2};
  long every = 1;        ///< CSV row cadence in steps
  FitWindow window{0.0, 0.0};
  double tol = 0.25;
};

struct OutputSpec {
  std::string csv = "nsac_series.csv";
  std::string snapshot = "nsac_final.bin";
  std::string summary = "nsac_summary.json";
};

struct LinearSpec {
  std::vector<int> l_list{0, 1, 2};
  std::vector<double> s_list{0.5, 1.0, 1.49};
  std::vector<std::string> components{"phi", "acoustic"};
  double t_lo = 100.0;
  double t_hi = 1e4;
  int samples = 41;
  std::string profile = "power";  ///< power | l1
  double offset = 0.01;
  double tol_phi = 0.1;
  double tol_acoustic = 0.15;
  std::string csv = "nsac_linear.csv";
};

struct FitSpec {
  std::string input;
  std::string column = "E_total";
  int l = 0;
  double s = 0.5;
  double tol = 0.25;
  FitWindow window{0.0, 0.0};
};

struct VerifySpec {
  int n = 16;
  int seeds = 3;
  std::string inject_fault = "none";  ///< none | no-dealias
};

/// Everything a subcommand needs; every field has a dotted key.
struct RunConfig {
  Grid grid;
  PhysParams phys;
  StepConfig step;
  ModelOptions model;
  IcSpec ic;
  DiagSpec diag;
  OutputSpec out;
  LinearSpec linear;
  FitSpec fit;
  VerifySpec verify;

  /// Throws ConfigError describing the first invalid field.
  void validate() const;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Parses "key = value" lines; '#' starts a comment. Throws ConfigError
/// with the line number on malformed input.
KeyValues parse_config_text(const std::string& text);

/// Sets one dotted key. Throws ConfigError for unknown keys or bad values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);
void apply_settings(RunConfig& cfg, const KeyValues& kv);

/// Reads and applies a config file.
RunConfig load_config(const std::string& path, RunConfig base = {});

/// All known keys, sorted.
std::vector<std::string> config_keys();

/// Canonical "key = value" dump that parses back to the same config.
std::string to_text(const RunConfig& cfg);

}  // namespace nsac
