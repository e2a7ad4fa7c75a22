#include "bfn/measurement.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "bfn/csv.hpp"
#include "bfn/oscillator.hpp"
#include "bfn/wave.hpp"

namespace bfn {

void require_record_matches(const MeasurementRecord& rec, const Grids& grids) {
  if (rec.steps() != grids.time.steps_per_pass || rec.dt != grids.time.dt) {
    throw GridMismatchError("record has M=" + std::to_string(rec.steps()) +
                            " steps, grid expects M=" +
                            std::to_string(grids.time.steps_per_pass));
  }
}

MeasurementRecord synthesize_measurement(const SourceField& q, double omega, const Grids& grids) {
  const auto steps = grids.time.steps_per_pass;
  MeasurementRecord rec;
  rec.horizon = grids.time.horizon;
  rec.dt = grids.time.dt;
  rec.samples.reserve(static_cast<std::size_t>(steps) + 1);

  auto state = WaveFieldState::zero(grids.space);
  rec.samples.push_back(boundary_flux(state, grids.space));
  for (std::int64_t m = 0; m < steps; ++m) {
    state = forced_wave_step(state, q, omega, grids);
    state.t = static_cast<double>(m + 1) * grids.time.dt;
    rec.samples.push_back(boundary_flux(state, grids.space));
  }
  return rec;
}

MeasurementRecord cascade_output(const SourceField& q, double y0, double ydot0, double omega,
                                 const Grids& grids) {
  const auto steps = grids.time.steps_per_pass;
  const double dt = grids.time.dt;
  MeasurementRecord rec;
  rec.horizon = grids.time.horizon;
  rec.dt = dt;
  rec.samples.reserve(static_cast<std::size_t>(steps) + 1);

  auto wave = WaveFieldState::displaced(q);
  auto osc = init_truth_oscillator(y0, ydot0);
  rec.samples.push_back(osc.z1);
  double drive = cell_flux(wave, grids.space);
  for (std::int64_t m = 0; m < steps; ++m) {
    wave = homogeneous_wave_step(wave, 0.0, StepDirection::Forward, grids);
    const double drive_next = cell_flux(wave, grids.space);
    osc = cascade_osc_step(osc, drive, drive_next, omega, StepDirection::Forward, dt);
    drive = drive_next;
    rec.samples.push_back(osc.z1);
  }
  return rec;
}

double rms(const MeasurementRecord& rec) {
  if (rec.samples.empty()) return 0.0;
  double s = 0.0;
  for (double y : rec.samples) s += y * y;
  return std::sqrt(s / static_cast<double>(rec.samples.size()));
}

MeasurementRecord add_noise(const MeasurementRecord& rec, const NoiseSpec& spec) {
  if (!(spec.level >= 0.0) || !std::isfinite(spec.level)) {
    throw std::invalid_argument("noise level must be a non-negative number");
  }
  if (!rec.clean()) throw std::invalid_argument("add_noise expects a clean record");
  MeasurementRecord out = rec;
  out.noise = spec;
  if (spec.level == 0.0) return out;
  const double sigma = spec.level * rms(rec);
  std::mt19937_64 gen(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& y : out.samples) y += sigma * normal(gen);
  return out;
}

double initial_rate_estimate(const MeasurementRecord& rec) {
  if (rec.samples.size() < 3) throw std::invalid_argument("record too short");
  return (-3.0 * rec.samples[0] + 4.0 * rec.samples[1] - rec.samples[2]) / (2.0 * rec.dt);
}

ReflectedPlayback::ReflectedPlayback(const MeasurementRecord& rec, std::int64_t n_passes)
    : rec_(&rec), steps_(rec.steps()), n_passes_(n_passes) {
  if (steps_ < 1) throw std::invalid_argument("record needs at least two samples");
  if (n_passes < 1) throw std::invalid_argument("playback needs at least one pass");
}

std::int64_t ReflectedPlayback::local_index(std::int64_t global_step) const {
  if (global_step < 0 || global_step > last_step()) {
    throw std::out_of_range("global step " + std::to_string(global_step) +
                            " outside playback horizon [0, " + std::to_string(last_step()) + "]");
  }
  const std::int64_t pass = global_step / steps_;
  const std::int64_t offset = global_step % steps_;
  return pass % 2 == 0 ? offset : steps_ - offset;
}

double ReflectedPlayback::at(std::int64_t global_step) const {
  return rec_->samples[static_cast<std::size_t>(local_index(global_step))];
}

double playback(const MeasurementRecord& rec, std::int64_t global_step, std::int64_t n_passes) {
  return ReflectedPlayback(rec, n_passes).at(global_step);
}

double RunningIntegral::advance_to(std::int64_t global_step) {
  if (global_step != step_ + 1) {
    throw std::logic_error("running integral advanced out of order: at step " +
                           std::to_string(step_) + ", asked for " + std::to_string(global_step));
  }
  value_ += 0.5 * signal_->dt() * (signal_->at(step_) + signal_->at(global_step));
  step_ = global_step;
  return value_;
}

void write_record_csv(const std::filesystem::path& path, const MeasurementRecord& rec) {
  std::string out = "t,Y\n";
  out.reserve(rec.samples.size() * 48);
  for (std::size_t m = 0; m < rec.samples.size(); ++m) {
    out += csv::format(static_cast<double>(m) * rec.dt);
    out += ',';
    out += csv::format(rec.samples[m]);
    out += '\n';
  }
  csv::write_text(path, out);

  std::string meta;
  meta += "dt=" + csv::format(rec.dt) + "\n";
  meta += "T=" + csv::format(rec.horizon) + "\n";
  meta += "steps=" + std::to_string(rec.steps()) + "\n";
  meta += "provenance=" + std::string(rec.clean() ? "clean" : "noisy") + "\n";
  meta += "noise_level=" + csv::format(rec.noise ? rec.noise->level : 0.0) + "\n";
  meta += "seed=" + std::to_string(rec.noise ? rec.noise->seed : 0) + "\n";
  meta += "noise_model=gaussian_white\n";
  meta += "noise_reference=rms\n";
  csv::write_text(std::filesystem::path(path.string() + ".meta"), meta);
}

MeasurementRecord read_record_csv(const std::filesystem::path& path) {
  const auto table = csv::read(path);
  if (table.header.size() != 2 || table.header[0] != "t" || table.header[1] != "Y") {
    throw std::runtime_error(path.string() + ": expected header t,Y");
  }
  if (table.rows.size() < 2) throw std::runtime_error(path.string() + ": too few rows");
  MeasurementRecord rec;
  for (const auto& row : table.rows) rec.samples.push_back(row[1]);
  rec.horizon = table.rows.back()[0];
  rec.dt = rec.horizon / static_cast<double>(rec.steps());

  std::ifstream meta(path.string() + ".meta");
  std::string line;
  std::optional<NoiseSpec> noise;
  bool noisy = false;
  while (std::getline(meta, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const auto key = line.substr(0, eq);
    const auto value = line.substr(eq + 1);
    if (key == "dt") rec.dt = std::stod(value);
    if (key == "T") rec.horizon = std::stod(value);
    if (key == "provenance") noisy = value == "noisy";
    if (key == "noise_level") { if (!noise) noise = NoiseSpec{}; noise->level = std::stod(value); }
    if (key == "seed") { if (!noise) noise = NoiseSpec{}; noise->seed = std::stoull(value); }
  }
  if (noisy) rec.noise = noise;
  return rec;
}

}  // namespace bfn
