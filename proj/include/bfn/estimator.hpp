#pragma once

#include <cstdint>
#include <limits>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bfn/diagnostics.hpp"
#include "bfn/grid.hpp"
#include "bfn/measurement.hpp"
#include "bfn/oscillator.hpp"
#include "bfn/wave.hpp"

namespace bfn {

/// Named source profile: "poly" (x - x^2), "mode:k" (sin k pi x) or explicit node samples.
struct SourceSpec {
  enum class Kind { Polynomial, Mode, Samples };
  Kind kind = Kind::Polynomial;
  int mode = 1;
  std::vector<double> samples;
  std::string label = "poly";

  SourceField build(const Grid1D& grid) const;
};

struct RunConfig {
  double omega = 1.0;
  double horizon = 3.0;
  ObserverGains gains{1.0, 0.5};
  int n_cells = 20;
  double cfl = 0.005;
  int n_iterations = 50;
  NoiseSpec noise{0.0, 1};
  SourceSpec source;

  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;
  Grids grids() const { return make_grids(n_cells, horizon, cfl); }
};

/// Observer state (W^1, W^2, Z1, Z2, Z3) plus the running integral of Y.
struct ObserverState {
  WaveFieldState wave;
  OscillatorState osc;
  double integral_of_y = 0.0;
  std::int64_t global_step = 0;

  static ObserverState initial(const Grid1D& grid);
};

using ObserverStepCallback = std::function<void(const ObserverState&)>;
using TrajectoryCallback = std::function<void(std::int64_t global_step, const WaveFieldState&,
                                              const OscillatorState&)>;

/// Advances one full pass (M coupled steps) in direction dir. The pass must
/// start on a multiple of M and directions must alternate Forward, Backward,
/// ... from global step 0 (std::logic_error otherwise). on_step, when set, is
/// called after every step.
ObserverState observer_pass(ObserverState state, const MeasurementRecord& rec,
                            const RunConfig& cfg, StepDirection dir,
                            const ObserverStepCallback& on_step = {});

/// Known truth for diagnostics: the source and the initial output data.
struct Truth {
  SourceField q;
  double y0 = 0.0;
  double ydot0 = 0.0;
};

struct IterationResult {
  int n = 0;
  std::vector<double> estimate;                                  ///< W^1 observer at 2nT
  std::optional<double> l2_error;                                ///< |q_hat - q| when truth known
  double lyapunov = std::numeric_limits<double>::quiet_NaN();   ///< V of observer - truth at 2nT
  double increment = 0.0;                                        ///< |q_hat_n - q_hat_{n-1}|
  std::int64_t wall_steps = 0;
};

struct BfnRun {
  std::vector<IterationResult> iterations;
  std::vector<std::string> warnings;
};

BfnRun run_bfn(const RunConfig& cfg, const MeasurementRecord& rec,
               const std::optional<Truth>& truth = std::nullopt,
               const ObserverStepCallback& on_step = {});

/// One trapezoidal step of the error oscillator (Z1, Z2, Z3) with boundary
/// injection W(t,0) = gamma1 Z1 + gamma1 gamma2 Z3 feeding the drive at the
/// new level. Returns the state and the injected value.
ObserverStepResult error_osc_step(const OscillatorState& z, double drive_now, FluxSplit drive_next,
                                  ObserverGains gains, double omega, StepDirection dir, double dt);

/// Simulates the autonomous error system from (-q, 0, -y0, -ydot0, 0) over
/// cfg.n_iterations back-and-forth cycles. Returns the states at every pass
/// boundary (2 n_iterations + 1 points); on_step sees every step including t=0.
std::vector<TrajectoryPoint> error_dynamics_run(const SourceField& q, double y0, double ydot0,
                                                const RunConfig& cfg,
                                                const TrajectoryCallback& on_step = {});

/// Simulates the true periodic cascade system (W^1, W^2, Z1, Z2, Z3) from
/// (q, 0, y0, ydot0, 0); same return convention as error_dynamics_run.
std::vector<TrajectoryPoint> periodic_truth_run(const SourceField& q, double y0, double ydot0,
                                                const RunConfig& cfg,
                                                const TrajectoryCallback& on_step = {});

}  // namespace bfn
