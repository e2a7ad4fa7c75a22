#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "bfn/config.hpp"
#include "bfn/validation.hpp"

namespace bfn {

struct CommandResult {
  int exit_code = 0;
  std::vector<std::filesystem::path> files;
  std::vector<CheckResult> checks;  ///< validate only
  std::vector<std::string> warnings;
};

/// Synthesizes the measurement record; writes measurement.csv and, when
/// noise_level > 0, measurement_noisy.csv (each with a .meta sidecar).
CommandResult cmd_simulate(const CliConfig& cfg);

/// synthesize -> (noise) -> back-and-forth estimation; writes iterations.csv
/// (n,l2_error,lyapunov,increment) and estimate.csv (x,q_hat,q_true).
CommandResult cmd_estimate(const CliConfig& cfg);

/// Runs the validation suite and writes validation_report.txt and
/// diagnostics.csv; exit_code is 1 when any check fails.
CommandResult cmd_validate(const CliConfig& cfg);

struct SweepSpec {
  std::string parameter;  ///< T, gamma1, gamma2, noise_level or seed
  std::vector<double> values;

  /// Throws ConfigError for unknown parameters or malformed value lists.
  static SweepSpec parse(const std::string& parameter, const std::string& comma_values);
};

struct SweepRow {
  double value = 0.0;
  double final_l2_error = 0.0;
  double final_lyapunov = 0.0;
  BfnRun run;
};

/// One estimation per value, up to `workers` concurrently; writes sweep.csv
/// (parameter,value,final_l2_error,final_lyapunov) plus per-run iteration CSVs.
CommandResult cmd_sweep(const CliConfig& cfg, const SweepSpec& sweep, int workers);

/// The estimate pipeline without file output.
struct EstimateOutcome {
  SourceField truth;
  MeasurementRecord record;  ///< what the observer consumed (noisy when noise_level > 0)
  BfnRun run;
};
EstimateOutcome run_estimate(const RunConfig& cfg);

std::vector<SweepRow> run_sweep(const RunConfig& cfg, const SweepSpec& sweep, int workers);

std::string iterations_csv(const BfnRun& run);
std::string estimate_csv(const Grid1D& grid, const std::vector<double>& q_hat,
                         const SourceField* q_true);

}  // namespace bfn
