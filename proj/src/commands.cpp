#include "bfn/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "bfn/csv.hpp"

namespace bfn {
namespace fs = std::filesystem;

namespace {

fs::path prepare_output(const CliConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + cfg.output_dir.string());
  return cfg.output_dir;
}

CheckResult at_most(std::string name, double value, double threshold) {
  return CheckResult{std::move(name), value, threshold, "<=", value <= threshold};
}

// Node samples read from a file live on one grid; refinement studies carry them
// to finer grids by linear interpolation.
RunConfig on_refined_grid(const RunConfig& c) {
  if (c.source.kind != SourceSpec::Kind::Samples) return c;
  const auto& s = c.source.samples;
  const int coarse = static_cast<int>(s.size()) - 1;
  if (coarse == c.n_cells) return c;
  if (coarse <= 0 || c.n_cells % coarse != 0) {
    throw GridMismatchError("cannot refine " + std::to_string(s.size()) +
                            " source samples onto n_cells = " + std::to_string(c.n_cells));
  }
  const int factor = c.n_cells / coarse;
  RunConfig out = c;
  out.source.samples.assign(static_cast<std::size_t>(c.n_cells) + 1, 0.0);
  for (int j = 0; j <= c.n_cells; ++j) {
    const int i = std::min(j / factor, coarse - 1);
    const double w = static_cast<double>(j - i * factor) / factor;
    out.source.samples[static_cast<std::size_t>(j)] =
        (1.0 - w) * s[static_cast<std::size_t>(i)] + w * s[static_cast<std::size_t>(i) + 1];
  }
  return out;
}

CheckResult order_check(std::string name, const RefinementStudy& study, double minimum) {
  if (study.exact()) return CheckResult{std::move(name), 0.0, minimum, "exact", true};
  return CheckResult{std::move(name), study.order, minimum, ">=", study.order >= minimum};
}

}  // namespace

EstimateOutcome run_estimate(const RunConfig& cfg) {
  cfg.validate();
  const Grids grids = cfg.grids();
  EstimateOutcome out{cfg.source.build(grids.space), {}, {}};
  out.record = synthesize_measurement(out.truth, cfg.omega, grids);
  if (cfg.noise.level > 0.0) out.record = add_noise(out.record, cfg.noise);
  // Zero initial data of the forced system: y(0) = y'(0) = 0.
  out.run = run_bfn(cfg, out.record, Truth{out.truth, 0.0, 0.0});
  return out;
}

std::string iterations_csv(const BfnRun& run) {
  std::string out = "n,l2_error,lyapunov,increment\n";
  for (const auto& it : run.iterations) {
    out += std::to_string(it.n);
    out += ',';
    out += it.l2_error ? csv::format(*it.l2_error) : std::string();
    out += ',';
    out += csv::format(it.lyapunov);
    out += ',';
    out += csv::format(it.increment);
    out += '\n';
  }
  return out;
}

std::string estimate_csv(const Grid1D& grid, const std::vector<double>& q_hat,
                         const SourceField* q_true) {
  std::string out = "x,q_hat,q_true\n";
  for (int j = 0; j <= grid.n_cells(); ++j) {
    const auto i = static_cast<std::size_t>(j);
    out += csv::format(grid.node(j));
    out += ',';
    out += csv::format(q_hat[i]);
    out += ',';
    if (q_true) out += csv::format((*q_true)[i]);
    out += '\n';
  }
  return out;
}

CommandResult cmd_simulate(const CliConfig& cfg) {
  const auto dir = prepare_output(cfg);
  const Grids grids = cfg.run.grids();
  const auto q = cfg.run.source.build(grids.space);
  const auto clean = synthesize_measurement(q, cfg.run.omega, grids);
  CommandResult result;
  write_record_csv(dir / "measurement.csv", clean);
  result.files = {dir / "measurement.csv", dir / "measurement.csv.meta"};
  if (cfg.run.noise.level > 0.0) {
    write_record_csv(dir / "measurement_noisy.csv", add_noise(clean, cfg.run.noise));
    result.files.push_back(dir / "measurement_noisy.csv");
    result.files.push_back(dir / "measurement_noisy.csv.meta");
  }
  return result;
}

CommandResult cmd_estimate(const CliConfig& cfg) {
  const auto dir = prepare_output(cfg);
  const auto outcome = run_estimate(cfg.run);
  const Grids grids = cfg.run.grids();
  csv::write_text(dir / "iterations.csv", iterations_csv(outcome.run));
  csv::write_text(dir / "estimate.csv",
                  estimate_csv(grids.space, outcome.run.iterations.back().estimate,
                               &outcome.truth));
  return CommandResult{0, {dir / "iterations.csv", dir / "estimate.csv"}, {}, outcome.run.warnings};
}

CommandResult cmd_validate(const CliConfig& cfg) {
  const auto dir = prepare_output(cfg);
  const RunConfig& run = cfg.run;
  run.validate();
  const Grids grids = run.grids();
  const auto q = run.source.build(grids.space);
  CommandResult result;
  auto& checks = result.checks;

  // Output equivalence of the forced system and the wave + oscillator cascade.
  const auto equivalence = refinement_study(run, 3, [](const RunConfig& base_level) {
    const auto c = on_refined_grid(base_level);
    const Grids g = c.grids();
    const auto qs = c.source.build(g.space);
    return output_equivalence_error(synthesize_measurement(qs, c.omega, g),
                                    cascade_output(qs, 0.0, 0.0, c.omega, g));
  });
  checks.push_back(CheckResult{"output_equivalence_max_abs", equivalence.h_and_error[0].second,
                               0.0, "recorded", true});
  checks.push_back(order_check("output_equivalence_order", equivalence, 1.8));

  double amplitude = 0.0;
  for (double v : q.samples()) amplitude = std::max(amplitude, std::abs(v));
  checks.push_back(at_most(
      "reversibility_max_norm",
      reversibility_error(q, grids, [amplitude](double t) { return 0.5 * amplitude * std::sin(3.0 * t); }),
      1e-10));

  const auto full = lyapunov_study(run, q, 0.0, 0.0, run.n_iterations);
  checks.push_back(at_most("lyapunov_max_relative_increase", std::max(0.0, full.max_relative_increase), 1e-8));

  const auto one_cycle = lyapunov_study(run, q, 0.0, 0.0, 1);
  checks.push_back(at_most("dissipation_balance_one_cycle", one_cycle.balance_residual, 1e-4));
  checks.push_back(at_most("energy_identity_one_cycle", one_cycle.energy_residual, 1e-4));
  const auto balance_study = refinement_study(run, 3, [](const RunConfig& base_level) {
    const auto c = on_refined_grid(base_level);
    const auto qs = c.source.build(c.grids().space);
    return lyapunov_study(c, qs, 0.0, 0.0, 1).balance_residual;
  });
  checks.push_back(order_check("dissipation_balance_order", balance_study, 1.8));
  const auto energy_study = refinement_study(run, 3, [](const RunConfig& base_level) {
    const auto c = on_refined_grid(base_level);
    const auto qs = c.source.build(c.grids().space);
    return lyapunov_study(c, qs, 0.0, 0.0, 1).energy_residual;
  });
  checks.push_back(order_check("energy_identity_order", energy_study, 1.8));

  const auto identity = observer_error_identity(run, q);
  checks.push_back(at_most("observer_error_identity_boundaries", identity.max_at_boundaries, 1e-10));
  checks.push_back(at_most("observer_error_identity_first_cycle", identity.max_first_cycle, 1e-10));
  checks.push_back(CheckResult{"observer_error_identity_trace_rate", identity.max_boundary_rate_gap,
                               0.0, "recorded", true});

  // Diagnostics trace of the error system, sampled about 100 times per pass.
  const auto stride = std::max<std::int64_t>(1, grids.time.steps_per_pass / 100);
  LyapunovMonitor monitor(grids.space, run.gains, run.omega);
  std::string diag = "t,lyapunov,dissipation_integral,energy_residual,boundary_flux_l2\n";
  error_dynamics_run(q, 0.0, 0.0, run,
                     [&](std::int64_t g, const WaveFieldState& w, const OscillatorState& z) {
                       monitor.observe(w, z);
                       if (g % stride != 0) return;
                       const auto& s = monitor.current();
                       diag += csv::join_row({s.t, s.lyapunov, s.dissipation_integral,
                                              s.energy_residual, s.boundary_flux_l2});
                       diag += '\n';
                     });
  csv::write_text(dir / "diagnostics.csv", diag);

  std::ostringstream report;
  report << "# validation report\n" << describe(cfg);
  double qx = h1_seminorm_sq(q.samples(), grids.space);
  double ql2 = l2_norm(q.samples());
  report << "# |q_x|^2 (identity right side) = " << csv::format(qx)
         << ", |q|^2_H1 = " << csv::format(qx + ql2 * ql2) << "\n";
  for (const auto& [h, e] : equivalence.h_and_error) {
    report << "# output_equivalence dx=" << csv::format(h) << " max|y-Y|=" << csv::format(e) << "\n";
  }
  bool ok = true;
  for (const auto& c : checks) {
    ok = ok && c.passed;
    report << (c.passed ? "PASS " : "FAIL ") << c.name << " value=" << csv::format(c.value) << " "
           << c.relation << " " << csv::format(c.threshold) << "\n";
  }
  csv::write_text(dir / "validation_report.txt", report.str());
  result.files = {dir / "validation_report.txt", dir / "diagnostics.csv"};
  result.exit_code = ok ? 0 : 1;
  return result;
}

SweepSpec SweepSpec::parse(const std::string& parameter, const std::string& comma_values) {
  static const std::vector<std::string> allowed{"T", "gamma1", "gamma2", "noise_level", "seed"};
  if (std::find(allowed.begin(), allowed.end(), parameter) == allowed.end()) {
    throw ConfigError("unknown sweep parameter '" + parameter +
                      "' (expected T, gamma1, gamma2, noise_level or seed)");
  }
  SweepSpec spec{parameter, {}};
  std::stringstream ss(comma_values);
  std::string item;
  while (std::getline(ss, item, ',')) {
    CliConfig probe;
    apply_setting(probe, parameter, item);
    spec.values.push_back(std::stod(item));
  }
  if (spec.values.empty()) throw ConfigError("sweep needs at least one value");
  return spec;
}

namespace {

RunConfig with_value(RunConfig cfg, const std::string& parameter, double value) {
  if (parameter == "T") cfg.horizon = value;
  else if (parameter == "gamma1") cfg.gains.gamma1 = value;
  else if (parameter == "gamma2") cfg.gains.gamma2 = value;
  else if (parameter == "noise_level") cfg.noise.level = value;
  else if (parameter == "seed") cfg.noise.seed = static_cast<std::uint64_t>(value);
  else throw ConfigError("unknown sweep parameter '" + parameter + "'");
  return cfg;
}

}  // namespace

std::vector<SweepRow> run_sweep(const RunConfig& cfg, const SweepSpec& sweep, int workers) {
  std::vector<SweepRow> rows(sweep.values.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < sweep.values.size(); i = next++) {
      try {
        const auto run_cfg = with_value(cfg, sweep.parameter, sweep.values[i]);
        auto outcome = run_estimate(run_cfg);
        const auto& last = outcome.run.iterations.back();
        rows[i] = SweepRow{sweep.values[i], last.l2_error.value_or(0.0), last.lyapunov,
                           std::move(outcome.run)};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int n = std::clamp(workers, 1, static_cast<int>(sweep.values.size()));
  std::vector<std::jthread> pool;
  for (int w = 1; w < n; ++w) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

CommandResult cmd_sweep(const CliConfig& cfg, const SweepSpec& sweep, int workers) {
  const auto dir = prepare_output(cfg);
  const auto rows = run_sweep(cfg.run, sweep, workers);
  CommandResult result;
  std::string out = "parameter,value,final_l2_error,final_lyapunov\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out += sweep.parameter + "," + csv::join_row({r.value, r.final_l2_error, r.final_lyapunov}) + "\n";
    const auto per_run = dir / ("iterations_" + sweep.parameter + "_" + std::to_string(i) + ".csv");
    csv::write_text(per_run, iterations_csv(r.run));
    result.files.push_back(per_run);
  }
  csv::write_text(dir / "sweep.csv", out);
  result.files.insert(result.files.begin(), dir / "sweep.csv");
  return result;
}

}  // namespace bfn
