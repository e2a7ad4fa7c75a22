#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "bfn/grid.hpp"

namespace bfn {

/// Relative white-noise level (fraction of the clean record's RMS) and PRNG seed.
struct NoiseSpec {
  double level = 0.0;
  std::uint64_t seed = 0;
};

/// Boundary output Y_m at t_m = m dt, m = 0..M, over one observation window.
struct MeasurementRecord {
  std::vector<double> samples;
  double horizon = 0.0;
  double dt = 0.0;
  std::optional<NoiseSpec> noise;  ///< empty for clean records

  std::int64_t steps() const { return static_cast<std::int64_t>(samples.size()) - 1; }
  bool clean() const { return !noise.has_value(); }
};

/// Throws GridMismatchError unless the record was sampled on grids.time.
void require_record_matches(const MeasurementRecord& rec, const Grids& grids);

/// Runs u_tt - u_xx = q cos(omega t) from rest and records y = u_x(t, 0).
MeasurementRecord synthesize_measurement(const SourceField& q, double omega, const Grids& grids);

/// Output Y = z1 of the homogeneous wave + oscillator cascade started from
/// (q, 0, y0, ydot0), forward over one window.
MeasurementRecord cascade_output(const SourceField& q, double y0, double ydot0, double omega,
                                 const Grids& grids);

double rms(const MeasurementRecord& rec);

/// Y'_m = Y_m + level * rms(Y) * xi_m, xi_m iid standard normal from a seeded generator.
MeasurementRecord add_noise(const MeasurementRecord& rec, const NoiseSpec& spec);

/// One-sided second-order estimate of Y'(0).
double initial_rate_estimate(const MeasurementRecord& rec);

/// Reflected periodic extension of a record: forward passes read Y(t - 2kT),
/// backward passes read Y((2k+2)T - t).
class ReflectedPlayback {
 public:
  ReflectedPlayback(const MeasurementRecord& rec, std::int64_t n_passes);

  /// Sample at global step g in [0, n_passes * M]; throws std::out_of_range otherwise.
  double at(std::int64_t global_step) const;
  std::int64_t local_index(std::int64_t global_step) const;
  std::int64_t last_step() const { return n_passes_ * steps_; }
  double dt() const { return rec_->dt; }
  const MeasurementRecord& record() const { return *rec_; }

 private:
  const MeasurementRecord* rec_;
  std::int64_t steps_;
  std::int64_t n_passes_;
};

/// Free-function form of ReflectedPlayback::at.
double playback(const MeasurementRecord& rec, std::int64_t global_step, std::int64_t n_passes);

/// Trapezoidal running integral int_0^t Y of the reflected playback.
class RunningIntegral {
 public:
  explicit RunningIntegral(const ReflectedPlayback& signal) : signal_(&signal) {}

  /// Accumulates the panel ending at global_step; steps must be visited in
  /// order 1, 2, 3, ... (std::logic_error otherwise).
  double advance_to(std::int64_t global_step);
  double value() const { return value_; }
  std::int64_t step() const { return step_; }

 private:
  const ReflectedPlayback* signal_;
  double value_ = 0.0;
  std::int64_t step_ = 0;
};

/// Writes `t,Y` rows and a `<path>.meta` sidecar with dt, T and noise provenance.
void write_record_csv(const std::filesystem::path& path, const MeasurementRecord& rec);
/// Reads a record written by write_record_csv (sidecar optional).
MeasurementRecord read_record_csv(const std::filesystem::path& path);

}  // namespace bfn
