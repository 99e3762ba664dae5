#include "nsac/output.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <sstream>

#include "json.hpp"
#include "nsac/errors.hpp"

namespace nsac {
namespace {

template <class T>
void put_le(std::ostream& out, T v) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

template <class T>
T get_le(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  if (!in) throw InvalidArgument("snapshot: truncated file");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  T v;
  std::memcpy(&v, &bits, 8);
  return v;
}

constexpr char kMagic[5] = {'N', 'S', 'A', 'C', '1'};

}  // namespace

std::string shortest(double v) {
  std::array<char, 64> buf{};
  const auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw InvalidArgument("shortest: formatting failed");
  return std::string(buf.data(), p);
}

std::string csv_line(const std::vector<double>& values) {
  std::string line;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) line += ',';
    line += shortest(values[i]);
  }
  return line;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : out_(path, std::ios::binary | std::ios::trunc), ncols_(columns.size()) {
  if (!out_) throw InvalidArgument("cannot open '" + path + "' for writing");
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out_ << ',';
    out_ << columns[i];
  }
  out_ << '\n';
  out_.flush();
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != ncols_) throw InvalidArgument("CsvWriter: row width does not match header");
  out_ << csv_line(values) << '\n';
  out_.flush();
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw InvalidArgument("CSV has no column '" + name + "'");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("'" + path + "' is empty");
  {
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) t.columns.push_back(c);
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p <= end) {
      const char* comma = std::find(p, end, ',');
      double v = 0.0;
      const auto [q, ec] = std::from_chars(p, comma, v);
      if (ec != std::errc() || q != comma) {
        throw InvalidArgument(path + ":" + std::to_string(lineno) + ": bad number");
      }
      row.push_back(v);
      p = comma + 1;
    }
    if (row.size() != t.columns.size()) {
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": wrong number of fields");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_snapshot(const std::string& path, const State& state) {
  state.check_shape();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot open '" + path + "' for writing");
  out.write(kMagic, sizeof kMagic);
  const Grid& g = state.grid;
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(g.dim));
  for (int a = 0; a < g.dim; ++a) put_le<std::uint64_t>(out, static_cast<std::uint64_t>(g.n));
  for (int a = 0; a < g.dim; ++a) put_le<double>(out, g.length);
  auto field = [&](const RealField& f) {
    for (double v : f) put_le<double>(out, v);
  };
  field(state.sigma);
  for (const auto& c : state.u) field(c);
  field(state.phi);
  if (!out) throw InvalidArgument("write failed for '" + path + "'");
}

State read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  char magic[5];
  in.read(magic, 5);
  if (!in || std::memcmp(magic, kMagic, 5) != 0) throw InvalidArgument("snapshot: bad magic");
  Grid g;
  g.dim = static_cast<int>(get_le<std::uint64_t>(in));
  if (g.dim < 1 || g.dim > 3) throw InvalidArgument("snapshot: bad dimension");
  for (int a = 0; a < g.dim; ++a) {
    const auto n = static_cast<int>(get_le<std::uint64_t>(in));
    if (a > 0 && n != g.n) throw InvalidArgument("snapshot: anisotropic grids are not supported");
    g.n = n;
  }
  for (int a = 0; a < g.dim; ++a) g.length = get_le<double>(in);
  g.validate();
  State s = State::equilibrium(g);
  auto field = [&](RealField& f) {
    for (double& v : f) v = get_le<double>(in);
  };
  field(s.sigma);
  for (auto& c : s.u) field(c);
  field(s.phi);
  return s;
}

std::string summary_json(const RunSummaryData& d) {
  nlohmann::ordered_json j;
  j["termination"] = d.termination;
  if (!d.error.empty()) j["error"] = d.error;
  if (!d.failed_field.empty()) j["failed_field"] = d.failed_field;
  j["steps"] = d.steps;
  j["final_time"] = d.final_time;
  j["energy_monotone"] = d.energy_monotone;
  j["max_principle"] = d.max_principle;
  j["mass_conserved"] = d.mass_conserved;
  j["max_energy_increase"] = d.max_energy_increase;
  j["max_mass_drift"] = d.max_mass_drift;
  j["max_phi_excess"] = d.max_phi_excess;
  j["initial_energy"] = d.initial_energy;
  j["cumulative_dissipation"] = d.cumulative_dissipation;
  j["decay_fits"] = nlohmann::ordered_json::array();
  for (const auto& f : d.decay_fits) {
    nlohmann::ordered_json e;
    e["series"] = f.series;
    e["l"] = f.l;
    e["s"] = f.s;
    e["exponent"] = f.exponent;
    e["target"] = f.target;
    e["r2"] = f.r2;
    e["contaminated"] = f.contaminated;
    e["pass"] = f.pass;
    j["decay_fits"].push_back(e);
  }
  if (!d.config_text.empty()) j["config"] = d.config_text;
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw InvalidArgument("write failed for '" + path + "'");
}

}  // namespace nsac
