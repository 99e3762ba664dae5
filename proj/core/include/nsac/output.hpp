#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "nsac/state.hpp"

namespace nsac {

/// Shortest decimal that parses back to the same double ("C" locale).
std::string shortest(double v);

/// Comma-joined shortest representations.
std::string csv_line(const std::vector<double>& values);

/// Row-at-a-time CSV writer; flushes after every row so a failed run keeps
/// what it produced.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);
  std::size_t columns() const { return ncols_; }

 private:
  std::ofstream out_;
  std::size_t ncols_;
};

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Index of a column; throws InvalidArgument if absent.
  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

/// Binary snapshot: "NSAC1", u64 dim, u64 n per axis, f64 length per axis,
/// then sigma, u_0..u_{dim-1}, phi as little-endian f64, row-major.
void write_snapshot(const std::string& path, const State& state);
State read_snapshot(const std::string& path);

struct FitRecord {
  std::string series;
  int l = 0;
  double s = 0.0;
  double exponent = 0.0;
  double target = 0.0;
  double r2 = 0.0;
  bool contaminated = false;
  bool pass = false;
};

struct RunSummaryData {
  std::string termination;
  std::string error;
  std::string failed_field;
  long steps = 0;
  double final_time = 0.0;
  bool energy_monotone = true;
  bool max_principle = true;
  bool mass_conserved = true;
  double max_energy_increase = 0.0;  ///< largest step-to-step rise of E / E(0)
  double max_mass_drift = 0.0;
  double max_phi_excess = 0.0;
  double cumulative_dissipation = 0.0;
  double initial_energy = 0.0;
  std::vector<FitRecord> decay_fits;
  std::string config_text;
};

/// Pretty-printed JSON with a fixed key order.
std::string summary_json(const RunSummaryData& data);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace nsac
