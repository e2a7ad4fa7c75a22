#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "bfn/commands.hpp"

namespace {

struct Common {
  std::string config_file;
  std::vector<std::string> sets;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_file, "key=value configuration file");
  cmd->add_option("--set", c.sets, "override one setting, key=value (repeatable)");
  cmd->add_option("--out", c.out, "output directory (overrides output_dir)");
}

bfn::CliConfig resolve(const Common& c) {
  std::optional<std::filesystem::path> file;
  if (!c.config_file.empty()) file = c.config_file;
  auto overrides = c.sets;
  if (!c.out.empty()) overrides.push_back("output_dir=" + c.out);
  return bfn::load_config(file, overrides);
}

void report_files(const bfn::CommandResult& r) {
  for (const auto& f : r.files) std::cout << "wrote " << f.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Back-and-forth nudging source estimation for a 1D wave equation"};
  app.require_subcommand(1);

  Common sim_opts, est_opts, val_opts, sweep_opts;
  auto* simulate = app.add_subcommand("simulate", "synthesize the boundary measurement");
  add_common(simulate, sim_opts);
  auto* estimate = app.add_subcommand("estimate", "run the back-and-forth estimator");
  add_common(estimate, est_opts);
  auto* validate = app.add_subcommand("validate", "run the numerical validation checks");
  add_common(validate, val_opts);
  auto* sweep = app.add_subcommand("sweep", "sweep one parameter over a list of values");
  add_common(sweep, sweep_opts);
  std::string param, values;
  int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  sweep->add_option("--param", param, "T, gamma1, gamma2, noise_level or seed")->required();
  sweep->add_option("--values", values, "comma separated values")->required();
  sweep->add_option("--workers", workers, "concurrent runs")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    bfn::CommandResult result;
    if (*simulate) {
      result = bfn::cmd_simulate(resolve(sim_opts));
    } else if (*estimate) {
      result = bfn::cmd_estimate(resolve(est_opts));
    } else if (*validate) {
      result = bfn::cmd_validate(resolve(val_opts));
      for (const auto& c : result.checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " = " << c.value << " "
                  << c.relation << " " << c.threshold << "\n";
      }
    } else {
      result = bfn::cmd_sweep(resolve(sweep_opts), bfn::SweepSpec::parse(param, values), workers);
    }
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    report_files(result);
    return result.exit_code;
  } catch (const bfn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid setting: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
