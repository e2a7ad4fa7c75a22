#include "bfn/estimator.hpp"

#include <cmath>
#include <stdexcept>

#include "bfn/csv.hpp"

namespace bfn {

SourceField SourceSpec::build(const Grid1D& grid) const {
  switch (kind) {
    case Kind::Polynomial:
      return SourceField::polynomial(grid);
    case Kind::Mode:
      return SourceField::mode(grid, mode);
    case Kind::Samples:
      if (samples.size() != grid.n_nodes()) {
        throw GridMismatchError("source samples (" + std::to_string(samples.size()) +
                                ") do not match n_cells + 1 = " + std::to_string(grid.n_nodes()));
      }
      return SourceField(samples);
  }
  throw std::logic_error("unknown source kind");
}

void RunConfig::validate() const {
  if (!std::isfinite(omega)) throw std::invalid_argument("omega must be finite");
  if (!(horizon > 0.0)) throw std::invalid_argument("T must be positive");
  if (n_iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (!(noise.level >= 0.0)) throw std::invalid_argument("noise_level must be >= 0");
  ObserverGains::checked(gains.gamma1, gains.gamma2);
  (void)grids();
}

ObserverState ObserverState::initial(const Grid1D& grid) {
  return ObserverState{WaveFieldState::zero(grid), OscillatorState{}, 0.0, 0};
}

namespace {

void check_pass_start(std::int64_t global_step, std::int64_t steps, StepDirection dir) {
  if (global_step % steps != 0) {
    throw std::logic_error("pass must start on a multiple of M, got global step " +
                           std::to_string(global_step));
  }
  if (direction_of_pass(global_step / steps) != dir) {
    throw std::logic_error("pass directions must alternate Forward, Backward, ... from t=0");
  }
}

double time_at(std::int64_t global_step, double dt) { return static_cast<double>(global_step) * dt; }

}  // namespace

ObserverState observer_pass(ObserverState state, const MeasurementRecord& rec,
                            const RunConfig& cfg, StepDirection dir,
                            const ObserverStepCallback& on_step) {
  const Grids grids = cfg.grids();
  require_record_matches(rec, grids);
  const auto steps = grids.time.steps_per_pass;
  check_pass_start(state.global_step, steps, dir);

  const double dt = grids.time.dt;
  const double tau = sign_of(dir) * dt;
  const ReflectedPlayback signal(rec, state.global_step / steps + 1);
  const Grid1D& space = grids.space;

  for (std::int64_t m = 0; m < steps; ++m) {
    const std::int64_t g = state.global_step;
    const double y_now = signal.at(g);
    const double y_next = signal.at(g + 1);
    const double integral_next = state.integral_of_y + 0.5 * dt * (y_now + y_next);

    const double drive_now = cell_flux(state.wave, space);
    auto pending = advance_interior(state.wave, space, tau, time_at(g + 1, dt));
    const FluxSplit drive_next = pending_cell_flux(pending, space);
    const auto osc = observer_osc_step(state.osc, drive_now, drive_next,
                                       MeasurementWindow{y_now, y_next, integral_next},
                                       cfg.gains, cfg.omega, dir, dt);
    state.wave = close_step(std::move(pending), space, osc.injected);
    state.osc = osc.state;
    state.osc.t = time_at(g + 1, dt);
    state.integral_of_y = integral_next;
    state.global_step = g + 1;
    if (on_step) on_step(state);
  }
  return state;
}

BfnRun run_bfn(const RunConfig& cfg, const MeasurementRecord& rec,
               const std::optional<Truth>& truth, const ObserverStepCallback& on_step) {
  cfg.validate();
  const Grids grids = cfg.grids();
  require_record_matches(rec, grids);
  if (truth && truth->q.size() != grids.space.n_nodes()) {
    throw GridMismatchError("truth source does not match the spatial grid");
  }

  BfnRun run;
  if (cfg.horizon < 2.0) {
    run.warnings.push_back("T = " + csv::format(cfg.horizon) +
                           " is below the minimal observability time 2; the estimate need not "
                           "converge");
  }
  if (!cfg.gains.strictly_positive()) {
    run.warnings.push_back("observer gains are not strictly positive; no convergence expected");
  }

  auto state = ObserverState::initial(grids.space);
  std::vector<double> previous(grids.space.n_nodes(), 0.0);
  run.iterations.reserve(static_cast<std::size_t>(cfg.n_iterations));
  for (int n = 1; n <= cfg.n_iterations; ++n) {
    state = observer_pass(std::move(state), rec, cfg, StepDirection::Forward, on_step);
    state = observer_pass(std::move(state), rec, cfg, StepDirection::Backward, on_step);

    IterationResult it;
    it.n = n;
    it.estimate = state.wave.w1;
    it.increment = l2_error(it.estimate, previous);
    it.wall_steps = state.global_step;
    if (truth) {
      it.l2_error = l2_error(it.estimate, truth->q.samples());
      WaveFieldState err = state.wave;
      for (std::size_t j = 0; j < err.w1.size(); ++j) err.w1[j] -= truth->q[j];
      OscillatorState err_osc = state.osc;
      err_osc.z1 -= truth->y0;
      err_osc.z2 -= truth->ydot0;
      it.lyapunov = lyapunov(err, err_osc, grids.space, cfg.gains, cfg.omega);
    }
    previous = it.estimate;
    run.iterations.push_back(std::move(it));
  }
  return run;
}

ObserverStepResult error_osc_step(const OscillatorState& z, double drive_now, FluxSplit drive_next,
                                  ObserverGains gains, double omega, StepDirection dir,
                                  double dt) {
  // Trapezoid on
  //   Z1' = d Z2 - g2 Z1,  Z2' = d(-w^2 Z1 + Wx(t,0)),  Z3' = Z1,
  // with Wx at the new level = interior + c0 (g1 Z1' + g1 g2 Z3').
  const double k = 0.5 * dt;
  const double d = sign_of(dir);
  const double w2 = omega * omega;
  const double g1 = gains.gamma1;
  const double g2 = gains.gamma2;
  const double c0 = drive_next.left_coefficient;

  const double a[3][3] = {
      {1.0 + k * g2, -k * d, 0.0},
      {k * d * (w2 - c0 * g1), 1.0, -k * d * c0 * g1 * g2},
      {-k, 0.0, 1.0},
  };
  const double b[3] = {
      z.z1 + k * (d * z.z2 - g2 * z.z1),
      z.z2 + k * d * (-w2 * z.z1 + drive_now) + k * d * drive_next.interior,
      z.z3 + k * z.z1,
  };
  auto det3 = [](const double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const double det = det3(a);
  double x[3];
  for (int c = 0; c < 3; ++c) {
    double m[3][3];
    for (int r = 0; r < 3; ++r)
      for (int cc = 0; cc < 3; ++cc) m[r][cc] = (cc == c) ? b[r] : a[r][cc];
    x[c] = det3(m) / det;
  }
  ObserverStepResult out;
  out.state = OscillatorState{x[0], x[1], x[2], z.t + dt};
  out.injected = g1 * x[0] + g1 * g2 * x[2];
  return out;
}

std::vector<TrajectoryPoint> error_dynamics_run(const SourceField& q, double y0, double ydot0,
                                                const RunConfig& cfg,
                                                const TrajectoryCallback& on_step) {
  const Grids grids = cfg.grids();
  if (q.size() != grids.space.n_nodes()) throw GridMismatchError("source/grid size mismatch");
  const auto steps = grids.time.steps_per_pass;
  const double dt = grids.time.dt;
  const Grid1D& space = grids.space;

  WaveFieldState wave = WaveFieldState::zero(space);
  for (std::size_t j = 0; j < wave.w1.size(); ++j) wave.w1[j] = -q[j];
  OscillatorState osc{-y0, -ydot0, 0.0, 0.0};

  std::vector<TrajectoryPoint> boundaries{{wave, osc}};
  if (on_step) on_step(0, wave, osc);
  std::int64_t g = 0;
  for (int pass = 0; pass < 2 * cfg.n_iterations; ++pass) {
    const StepDirection dir = direction_of_pass(pass);
    for (std::int64_t m = 0; m < steps; ++m, ++g) {
      const double drive_now = cell_flux(wave, space);
      auto pending = advance_interior(wave, space, sign_of(dir) * dt, time_at(g + 1, dt));
      const auto next = error_osc_step(osc, drive_now, pending_cell_flux(pending, space),
                                       cfg.gains, cfg.omega, dir, dt);
      wave = close_step(std::move(pending), space, next.injected);
      osc = next.state;
      osc.t = time_at(g + 1, dt);
      if (on_step) on_step(g + 1, wave, osc);
    }
    boundaries.push_back({wave, osc});
  }
  return boundaries;
}

std::vector<TrajectoryPoint> periodic_truth_run(const SourceField& q, double y0, double ydot0,
                                                const RunConfig& cfg,
                                                const TrajectoryCallback& on_step) {
  const Grids grids = cfg.grids();
  if (q.size() != grids.space.n_nodes()) throw GridMismatchError("source/grid size mismatch");
  const auto steps = grids.time.steps_per_pass;
  const double dt = grids.time.dt;

  WaveFieldState wave = WaveFieldState::displaced(q);
  OscillatorState osc = init_truth_oscillator(y0, ydot0);
  std::vector<TrajectoryPoint> boundaries{{wave, osc}};
  if (on_step) on_step(0, wave, osc);
  std::int64_t g = 0;
  for (int pass = 0; pass < 2 * cfg.n_iterations; ++pass) {
    const StepDirection dir = direction_of_pass(pass);
    for (std::int64_t m = 0; m < steps; ++m, ++g) {
      const double drive_now = cell_flux(wave, grids.space);
      wave = homogeneous_wave_step(wave, 0.0, dir, grids);
      wave.t = time_at(g + 1, dt);
      osc = cascade_osc_step(osc, drive_now, cell_flux(wave, grids.space), cfg.omega, dir, dt);
      osc.t = time_at(g + 1, dt);
      if (on_step) on_step(g + 1, wave, osc);
    }
    boundaries.push_back({wave, osc});
  }
  return boundaries;
}

}  // namespace bfn
