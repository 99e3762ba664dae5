#include "nsac/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "nsac/errors.hpp"
#include "nsac/output.hpp"

namespace nsac {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* want) {
  throw ConfigError("bad value '" + value + "' for " + key + " (expected " + want + ")");
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end) bad_value(key, v, "a number");
  return out;
}

long to_long(const std::string& key, const std::string& v) {
  long out = 0;
  const auto* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end) bad_value(key, v, "an integer");
  return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end) bad_value(key, v, "a non-negative integer");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  bad_value(key, v, "true or false");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T, class F>
std::vector<T> to_list(const std::string& key, const std::string& v, F conv) {
  std::vector<T> out;
  for (const auto& item : split_list(v)) out.push_back(static_cast<T>(conv(key, item)));
  return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    if constexpr (std::is_same_v<T, std::string>) {
      out += v[i];
    } else if constexpr (std::is_floating_point_v<T>) {
      out += shortest(v[i]);
    } else {
      out += std::to_string(v[i]);
    }
  }
  return out;
}

struct Entry {
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define NSAC_DOUBLE(key, field)                                                            \
  {key, {[](RunConfig& c, const std::string& k, const std::string& v) {                    \
           c.field = to_double(k, v);                                                      \
         },                                                                                \
         [](const RunConfig& c) { return shortest(c.field); }}}
#define NSAC_INT(key, field)                                                               \
  {key, {[](RunConfig& c, const std::string& k, const std::string& v) {                    \
           c.field = static_cast<decltype(c.field)>(to_long(k, v));                        \
         },                                                                                \
         [](const RunConfig& c) { return std::to_string(c.field); }}}
#define NSAC_BOOL(key, field)                                                              \
  {key, {[](RunConfig& c, const std::string& k, const std::string& v) {                    \
           c.field = to_bool(k, v);                                                        \
         },                                                                                \
         [](const RunConfig& c) { return std::string(c.field ? "true" : "false"); }}}
#define NSAC_STRING(key, field)                                                            \
  {key, {[](RunConfig& c, const std::string&, const std::string& v) { c.field = v; },      \
         [](const RunConfig& c) { return c.field; }}}

const std::map<std::string, Entry>& table() {
  static const std::map<std::string, Entry> t = {
      NSAC_INT("grid.dim", grid.dim),
      NSAC_INT("grid.n", grid.n),
      NSAC_DOUBLE("grid.length", grid.length),
      NSAC_DOUBLE("phys.nu", phys.nu),
      NSAC_DOUBLE("phys.lambda", phys.lambda),
      NSAC_DOUBLE("phys.epsilon", phys.epsilon),
      NSAC_DOUBLE("phys.rho_bar", phys.rho_bar),
      NSAC_DOUBLE("phys.a", phys.pressure_a),
      NSAC_DOUBLE("phys.gamma", phys.pressure_gamma),
      NSAC_DOUBLE("step.dt", step.dt),
      NSAC_DOUBLE("step.cfl", step.cfl),
      NSAC_DOUBLE("step.t_end", step.t_end),
      NSAC_INT("step.max_steps", step.max_steps),
      NSAC_INT("step.scheme_order", step.scheme_order),
      NSAC_BOOL("step.adaptive", step.adaptive),
      NSAC_DOUBLE("step.phase_tol", step.phase_tol),
      NSAC_BOOL("model.dealias", model.dealias),
      NSAC_BOOL("model.implicit_reaction", model.implicit_reaction),
      NSAC_STRING("ic.kind", ic.kind),
      NSAC_DOUBLE("ic.delta", ic.delta),
      NSAC_INT("ic.max_mode", ic.max_mode),
      {"ic.seed",
       {[](RunConfig& c, const std::string& k, const std::string& v) { c.ic.seed = to_u64(k, v); },
        [](const RunConfig& c) { return std::to_string(c.ic.seed); }}},
      NSAC_DOUBLE("ic.width", ic.width),
      NSAC_DOUBLE("ic.phase", ic.phase),
      {"diag.s",
       {[](RunConfig& c, const std::string& k, const std::string& v) {
          c.diag.s_list = to_list<double>(k, v, to_double);
        },
        [](const RunConfig& c) { return join(c.diag.s_list); }}},
      {"diag.l",
       {[](RunConfig& c, const std::string& k, const std::string& v) {
          c.diag.l_list = to_list<int>(k, v, to_long);
        },
        [](const RunConfig& c) { return join(c.diag.l_list); }}},
      NSAC_INT("diag.every", diag.every),
      NSAC_DOUBLE("diag.fit_lo", diag.window.t_lo),
      NSAC_DOUBLE("diag.fit_hi", diag.window.t_hi),
      NSAC_DOUBLE("diag.tol", diag.tol),
      NSAC_STRING("out.csv", out.csv),
      NSAC_STRING("out.snapshot", out.snapshot),
      NSAC_STRING("out.summary", out.summary),
      {"linear.l",
       {[](RunConfig& c, const std::string& k, const std::string& v) {
          c.linear.l_list = to_list<int>(k, v, to_long);
        },
        [](const RunConfig& c) { return join(c.linear.l_list); }}},
      {"linear.s",
       {[](RunConfig& c, const std::string& k, const std::string& v) {
          c.linear.s_list = to_list<double>(k, v, to_double);
        },
        [](const RunConfig& c) { return join(c.linear.s_list); }}},
      {"linear.components",
       {[](RunConfig& c, const std::string&, const std::string& v) {
          c.linear.components = split_list(v);
        },
        [](const RunConfig& c) { return join(c.linear.components); }}},
      NSAC_DOUBLE("linear.t_lo", linear.t_lo),
      NSAC_DOUBLE("linear.t_hi", linear.t_hi),
      NSAC_INT("linear.samples", linear.samples),
      NSAC_STRING("linear.profile", linear.profile),
      NSAC_DOUBLE("linear.offset", linear.offset),
      NSAC_DOUBLE("linear.tol_phi", linear.tol_phi),
      NSAC_DOUBLE("linear.tol_acoustic", linear.tol_acoustic),
      NSAC_STRING("linear.csv", linear.csv),
      NSAC_STRING("fit.input", fit.input),
      NSAC_STRING("fit.column", fit.column),
      NSAC_INT("fit.l", fit.l),
      NSAC_DOUBLE("fit.s", fit.s),
      NSAC_DOUBLE("fit.tol", fit.tol),
      NSAC_DOUBLE("fit.t_lo", fit.window.t_lo),
      NSAC_DOUBLE("fit.t_hi", fit.window.t_hi),
      NSAC_INT("verify.n", verify.n),
      NSAC_INT("verify.seeds", verify.seeds),
      NSAC_STRING("verify.inject_fault", verify.inject_fault),
  };
  return t;
}

#undef NSAC_DOUBLE
#undef NSAC_INT
#undef NSAC_BOOL
#undef NSAC_STRING

}  // namespace

void RunConfig::validate() const {
  try {
    grid.validate();
    phys.validate();
    step.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (std::abs(model.phase_eq) != 1.0) throw ConfigError("model phase must be +1 or -1");
  static const char* kinds[] = {"equilibrium", "random_perturbation", "tanh_interface",
                                "manufactured"};
  if (std::find(std::begin(kinds), std::end(kinds), ic.kind) == std::end(kinds)) {
    throw ConfigError("ic.kind must be equilibrium, random_perturbation, tanh_interface or manufactured");
  }
  if (ic.kind == "random_perturbation" || ic.kind == "manufactured") {
    if (!(ic.delta > 0.0)) throw ConfigError("ic.delta must be > 0 for perturbation initial data");
  }
  if (ic.kind == "random_perturbation" && (ic.max_mode < 1 || 3 * ic.max_mode >= grid.n)) {
    throw ConfigError("ic.max_mode must lie in [1, n/3)");
  }
  if (ic.kind == "tanh_interface" && !(ic.width > 0.0)) throw ConfigError("ic.width must be > 0");
  if (std::abs(ic.phase) != 1.0) throw ConfigError("ic.phase must be +1 or -1");
  for (double s : diag.s_list) {
    if (!(s > 0.0 && s < 1.5)) throw ConfigError("diag.s entries must lie in (0, 3/2)");
  }
  for (int l : diag.l_list) {
    if (l < 0 || l > 2) throw ConfigError("diag.l entries must lie in 0..2");
  }
  if (diag.every < 1) throw ConfigError("diag.every must be >= 1");
  if (!(diag.tol > 0.0)) throw ConfigError("diag.tol must be > 0");
  for (int l : linear.l_list) {
    if (l < 0 || l > 3) throw ConfigError("linear.l entries must lie in 0..3");
  }
  for (double s : linear.s_list) {
    if (!(s > 0.0 && s < 1.5)) throw ConfigError("linear.s entries must lie in (0, 3/2)");
  }
  if (!(linear.t_lo > 0.0 && linear.t_hi > linear.t_lo)) {
    throw ConfigError("linear.t_lo/t_hi must satisfy 0 < t_lo < t_hi");
  }
  if (linear.samples < 10) throw ConfigError("linear.samples must be >= 10");
  if (linear.profile != "power" && linear.profile != "l1") {
    throw ConfigError("linear.profile must be power or l1");
  }
  if (verify.n < 8 || verify.seeds < 2) throw ConfigError("verify.n >= 8 and verify.seeds >= 2");
  if (verify.inject_fault != "none" && verify.inject_fault != "no-dealias") {
    throw ConfigError("verify.inject_fault must be none or no-dealias");
  }
}

KeyValues parse_config_text(const std::string& text) {
  KeyValues out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  const auto& t = table();
  const auto it = t.find(key);
  if (it == t.end()) throw ConfigError("unknown config key '" + key + "'");
  it->second.set(cfg, key, value);
}

void apply_settings(RunConfig& cfg, const KeyValues& kv) {
  for (const auto& [k, v] : kv) apply_setting(cfg, k, v);
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  apply_settings(base, parse_config_text(ss.str()));
  return base;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, e] : table()) keys.push_back(k);
  return keys;
}

std::string to_text(const RunConfig& cfg) {
  std::string out;
  for (const auto& [k, e] : table()) out += k + " = " + e.get(cfg) + "\n";
  return out;
}

}  // namespace nsac
