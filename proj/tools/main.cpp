#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nsac/commands.hpp"
#include "nsac/config.hpp"
#include "nsac/errors.hpp"

namespace {

// Accepts "--key value", "--key=value" and "key=value" for dotted config keys.
nsac::KeyValues parse_overrides(const std::vector<std::string>& args) {
  nsac::KeyValues kv;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string a = args[i];
    const bool dashed = a.rfind("--", 0) == 0;
    if (dashed) a = a.substr(2);
    const auto eq = a.find('=');
    if (eq != std::string::npos) {
      kv.emplace_back(a.substr(0, eq), a.substr(eq + 1));
    } else if (dashed && i + 1 < args.size()) {
      kv.emplace_back(a, args[++i]);
    } else {
      throw nsac::ConfigError("cannot parse argument '" + args[i] + "' (use --key value or key=value)");
    }
  }
  return kv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral Navier-Stokes/Allen-Cahn simulator and verification harness"};
  app.require_subcommand(1);

  std::string config_path;
  bool print_config = false;
  std::string fault;
  std::string csv_input;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Config file with 'key = value' lines");
    sub->add_flag("--print-config", print_config, "Print the resolved configuration and exit");
    sub->allow_extras();
    sub->footer("Any config key may be overridden, e.g. --grid.n 32 or phys.nu=0.5");
  };
  auto* simulate = app.add_subcommand("simulate", "Run a trajectory with diagnostics");
  auto* linear = app.add_subcommand("linear-decay", "Linear-oracle decay norms and exponent fits");
  auto* verify = app.add_subcommand("verify", "Operator and solver property suite");
  auto* fit = app.add_subcommand("fit", "Fit a decay exponent to a CSV column");
  for (auto* s : {simulate, linear, verify, fit}) add_common(s);
  verify->add_option("--inject-fault", fault, "Test hook: none | no-dealias");
  fit->add_option("input", csv_input, "CSV file (overrides fit.input)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    nsac::RunConfig cfg;
    if (!config_path.empty()) cfg = nsac::load_config(config_path);
    nsac::apply_settings(cfg, parse_overrides(active->remaining()));
    if (!fault.empty()) cfg.verify.inject_fault = fault;
    if (!csv_input.empty()) cfg.fit.input = csv_input;
    if (print_config) {
      std::cout << nsac::to_text(cfg);
      return 0;
    }
    if (active == simulate) return nsac::cmd_simulate(cfg, std::cout);
    if (active == linear) return nsac::cmd_linear_decay(cfg, std::cout);
    if (active == verify) return nsac::cmd_verify(cfg, std::cout);
    return nsac::cmd_fit(cfg, std::cout);
  } catch (const nsac::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
